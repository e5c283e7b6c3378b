#pragma once

// Finite 2-dimensional CW complexes with combinatorial attaching maps.
//
// Vertices, edges and faces carry positive ids, one id space per dimension.
// An edge is attached at its tail and head; a face is attached along a
// closed loop of signed edges. Faces with an empty boundary are spheres
// pinned at their anchor vertex.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "onerel/presentation.hpp"
#include "onerel/tietze.hpp"
#include "onerel/verdict.hpp"

namespace onerel {

using CellId = std::uint32_t;

struct Edge {
  CellId id = 0;
  CellId tail = 0;
  CellId head = 0;

  bool loop() const { return tail == head; }
  bool operator==(const Edge&) const = default;
};

struct OrientedEdge {
  CellId edge = 0;
  int sign = 1;  // +1 runs tail -> head

  OrientedEdge inverse() const { return {edge, -sign}; }
  bool operator==(const OrientedEdge&) const = default;
};

using EdgePath = std::vector<OrientedEdge>;

struct Face {
  CellId id = 0;
  EdgePath boundary;
  CellId anchor = 0;  // start vertex of the boundary loop

  bool operator==(const Face&) const = default;
};

class CWComplex2 {
 public:
  CellId add_vertex();
  void add_vertex(CellId id);
  CellId add_edge(CellId tail, CellId head);
  void add_edge(const Edge& e);
  // The anchor defaults to the start of the boundary and is required when
  // the boundary is empty.
  CellId add_face(EdgePath boundary, std::optional<CellId> anchor = std::nullopt);
  void add_face(const Face& f);

  void remove_vertex(CellId id);
  void remove_edge(CellId id);
  void remove_face(CellId id);
  void set_boundary(CellId face, EdgePath boundary, CellId anchor);
  void set_endpoints(CellId edge, CellId tail, CellId head);

  const std::set<CellId>& vertices() const { return vertices_; }
  const std::map<CellId, Edge>& edges() const { return edges_; }
  const std::map<CellId, Face>& faces() const { return faces_; }
  const Edge& edge(CellId id) const;
  const Face& face(CellId id) const;
  bool has_vertex(CellId id) const { return vertices_.contains(id); }
  bool has_edge(CellId id) const { return edges_.contains(id); }
  bool has_face(CellId id) const { return faces_.contains(id); }

  CellId start(OrientedEdge oe) const;
  CellId end(OrientedEdge oe) const;

  // Throws InvalidComplex when an id is dangling or a boundary is not a
  // closed edge loop.
  void validate() const;

  bool operator==(const CWComplex2& rhs) const;

 private:
  std::set<CellId> vertices_;
  std::map<CellId, Edge> edges_;
  std::map<CellId, Face> faces_;
  CellId next_vertex_ = 1;
  CellId next_edge_ = 1;
  CellId next_face_ = 1;
};

// One vertex, one loop per generator, one face per relator spelling it.
CWComplex2 standard_complex(const Presentation& p);

long euler_characteristic(const CWComplex2& c);

// A set of cells of a parent complex.
struct Subcomplex {
  std::set<CellId> vertices;
  std::set<CellId> edges;
  std::set<CellId> faces;

  bool empty() const { return vertices.empty() && edges.empty() && faces.empty(); }
  bool contains(const Subcomplex& other) const;
  bool operator==(const Subcomplex&) const = default;
};

using TreeSet = std::vector<Subcomplex>;

Subcomplex whole(const CWComplex2& c);
// Smallest subcomplex containing the given cells.
Subcomplex closure(const CWComplex2& c, Subcomplex cells);
bool is_closed(const CWComplex2& c, const Subcomplex& s);
Subcomplex intersection(const Subcomplex& a, const Subcomplex& b);
// Closure of the cells outside s (the combinatorial X - int(s)).
Subcomplex complement(const CWComplex2& c, const Subcomplex& s);
// The subcomplex as a complex in its own right; ids are kept.
CWComplex2 restrict_to(const CWComplex2& c, const Subcomplex& s);
// Connected components of a closed subcomplex, ordered by least vertex id.
std::vector<Subcomplex> components(const CWComplex2& c, const Subcomplex& s);
bool is_tree(const CWComplex2& c, const Subcomplex& s);

// Spanning-tree presentation of the fundamental group at a base vertex.
class FundamentalGroup {
 public:
  // Throws Disconnected (and InvalidArgument for a missing base vertex).
  FundamentalGroup(const CWComplex2& c, CellId base);

  const Presentation& presentation() const { return presentation_; }
  CellId base() const { return base_; }
  // Generator carried by a non-tree edge.
  std::optional<GenId> generator_of(CellId edge) const;
  // Tree path from the base vertex to v.
  EdgePath tree_path(CellId v) const;
  // Word read along a path. Tree edges read as 1, so this is also the class
  // of the based loop tree_path(start) * path * tree_path(end)^-1.
  Word word_of_path(const EdgePath& path) const;

 private:
  CellId base_ = 0;
  Presentation presentation_;
  std::map<CellId, GenId> generator_;
  std::map<CellId, OrientedEdge> parent_;  // tree edge arriving at a vertex
  std::map<CellId, CellId> parent_vertex_;
};

Presentation fundamental_presentation(const CWComplex2& c, CellId base);

// Yes if the Tietze simplifier kills every generator within the budget,
// No if the abelianization is nontrivial, Unknown otherwise.
Verdict is_simply_connected_bounded(const CWComplex2& c, std::size_t budget = kDefaultTietzeBudget);

struct CellRef {
  int dim = 0;
  CellId id = 0;

  bool operator==(const CellRef&) const = default;
};

// Collapse face e through an edge d occurring exactly once in its boundary.
// Other faces traverse the rest of the boundary of e in place of d.
CWComplex2 collapse_face(const CWComplex2& c, CellId e, CellId d);
// Collapse a non-loop edge e through its endpoint d, dragging d onto the
// other endpoint; faces drop their traversals of e.
CWComplex2 collapse_edge(const CWComplex2& c, CellId e, CellId d);
// Dispatches on dimensions (2,1) or (1,0). Throws NotFreeFace.
CWComplex2 internal_collapse(const CWComplex2& c, CellRef e, CellRef d);

namespace site {

// New vertex joined to `vertex` by a new edge.
struct Whisker {
  CellId vertex = 0;
};

// New edge d from the start to the end of `path`, and a new face with
// boundary d * path^-1. An empty path needs `vertex`.
struct FaceOverPath {
  EdgePath path;
  CellId vertex = 0;
};

// New edge d' parallel to `edge` and a new face with boundary
// d' * edge^-1; the listed faces switch from `edge` to d'.
struct ParallelEdge {
  CellId edge = 0;
  std::set<CellId> reroute;
};

// New vertex v' and edge e from v' to `vertex`. Edges in `tails` move their
// tail to v', edges in `heads` their head; face boundaries get e^{+-1}
// wherever a corner now straddles v' and `vertex`.
struct VertexSplit {
  CellId vertex = 0;
  std::set<CellId> tails;
  std::set<CellId> heads;
  std::set<CellId> anchors;  // faces whose anchor moves to v'
};

}  // namespace site

using ExpansionSite = std::variant<site::Whisker, site::FaceOverPath, site::ParallelEdge, site::VertexSplit>;

struct Expansion {
  CWComplex2 complex;
  CellRef e;  // collapsing (e, d) undoes the expansion
  CellRef d;
};

// Throws InvalidSite.
Expansion internal_expansion(const CWComplex2& c, const ExpansionSite& where);

struct RerouteMove {
  std::string kind;  // "bridge" or "split"
  CellRef e;
  CellRef d;
  CellId tree_cell = 0;  // the edge or vertex of the tree being doubled
};

struct RerouteResult {
  CWComplex2 complex;
  std::vector<Subcomplex> filtration;
  TreeSet trees;
  std::vector<RerouteMove> moves;
  // For each output member, the index of the input member it came from;
  // equal to the input length when the whole complex was used.
  std::vector<std::size_t> source_member;
};

// Finite form of the tree-rerouting construction. Starting from the first
// member, find the first member D containing the hull of every tree
// intersection, double each tree edge of D outside the kept component by a
// bridge face, split each such tree vertex, and emit the image of D. Then
// continue from the next member. Trees must be pairwise vertex-disjoint.
// Throws InvalidFiltration, NotATree, OverlappingTrees.
RerouteResult reroute_trees(const CWComplex2& c, const std::vector<Subcomplex>& filtration,
                            const TreeSet& trees);

nlohmann::json to_json(const CWComplex2& c);
CWComplex2 complex_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Subcomplex& s);
Subcomplex subcomplex_from_json(const nlohmann::json& j);
// Undirected 1-skeleton; edge labels are edge ids.
std::string to_dot(const CWComplex2& c);

}  // namespace onerel
