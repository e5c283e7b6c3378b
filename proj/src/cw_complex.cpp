#include "onerel/cw_complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "onerel/error.hpp"

namespace onerel {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidComplex, what); }

EdgePath inverse_path(const EdgePath& path) {
  EdgePath out;
  out.reserve(path.size());
  for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::size_t count_edge(const EdgePath& path, CellId edge) {
  return static_cast<std::size_t>(
      std::count_if(path.begin(), path.end(), [&](OrientedEdge oe) { return oe.edge == edge; }));
}

}  // namespace

CellId CWComplex2::add_vertex() {
  const CellId id = next_vertex_;
  add_vertex(id);
  return id;
}

void CWComplex2::add_vertex(CellId id) {
  if (id == 0 || !vertices_.insert(id).second) invalid("vertex id " + std::to_string(id) + " unusable");
  next_vertex_ = std::max(next_vertex_, id + 1);
}

CellId CWComplex2::add_edge(CellId tail, CellId head) {
  const CellId id = next_edge_;
  add_edge(Edge{id, tail, head});
  return id;
}

void CWComplex2::add_edge(const Edge& e) {
  if (e.id == 0 || edges_.contains(e.id)) invalid("edge id " + std::to_string(e.id) + " unusable");
  if (!has_vertex(e.tail) || !has_vertex(e.head)) invalid("edge " + std::to_string(e.id) + " has a missing endpoint");
  edges_.emplace(e.id, e);
  next_edge_ = std::max(next_edge_, e.id + 1);
}

CellId CWComplex2::add_face(EdgePath boundary, std::optional<CellId> anchor) {
  const CellId id = next_face_;
  CellId at = 0;
  if (!boundary.empty()) {
    at = start(boundary.front());
  } else if (anchor) {
    at = *anchor;
  } else {
    invalid("a face with empty boundary needs an anchor");
  }
  add_face(Face{id, std::move(boundary), at});
  return id;
}

void CWComplex2::add_face(const Face& f) {
  if (f.id == 0 || faces_.contains(f.id)) invalid("face id " + std::to_string(f.id) + " unusable");
  faces_.emplace(f.id, f);
  next_face_ = std::max(next_face_, f.id + 1);
}

void CWComplex2::remove_vertex(CellId id) { vertices_.erase(id); }
void CWComplex2::remove_edge(CellId id) { edges_.erase(id); }
void CWComplex2::remove_face(CellId id) { faces_.erase(id); }

void CWComplex2::set_boundary(CellId face, EdgePath boundary, CellId anchor) {
  Face& f = faces_.at(face);
  f.boundary = std::move(boundary);
  f.anchor = f.boundary.empty() ? anchor : start(f.boundary.front());
}

void CWComplex2::set_endpoints(CellId edge, CellId tail, CellId head) {
  Edge& e = edges_.at(edge);
  e.tail = tail;
  e.head = head;
}

const Edge& CWComplex2::edge(CellId id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw Error(ErrorKind::InvalidArgument, "no edge " + std::to_string(id));
  return it->second;
}

const Face& CWComplex2::face(CellId id) const {
  auto it = faces_.find(id);
  if (it == faces_.end()) throw Error(ErrorKind::InvalidArgument, "no face " + std::to_string(id));
  return it->second;
}

CellId CWComplex2::start(OrientedEdge oe) const {
  const Edge& e = edge(oe.edge);
  return oe.sign > 0 ? e.tail : e.head;
}

CellId CWComplex2::end(OrientedEdge oe) const {
  const Edge& e = edge(oe.edge);
  return oe.sign > 0 ? e.head : e.tail;
}

void CWComplex2::validate() const {
  for (const auto& [id, e] : edges_) {
    if (!has_vertex(e.tail) || !has_vertex(e.head)) invalid("edge " + std::to_string(id) + " has a missing endpoint");
  }
  for (const auto& [id, f] : faces_) {
    if (!has_vertex(f.anchor)) invalid("face " + std::to_string(id) + " has a missing anchor");
    for (std::size_t i = 0; i < f.boundary.size(); ++i) {
      const OrientedEdge oe = f.boundary[i];
      if (!has_edge(oe.edge)) invalid("face " + std::to_string(id) + " uses a missing edge");
      if (oe.sign != 1 && oe.sign != -1) invalid("face " + std::to_string(id) + " has a bad sign");
    }
    if (f.boundary.empty()) continue;
    if (start(f.boundary.front()) != f.anchor) invalid("face " + std::to_string(id) + " anchor mismatch");
    for (std::size_t i = 0; i < f.boundary.size(); ++i) {
      const OrientedEdge next = f.boundary[(i + 1) % f.boundary.size()];
      if (end(f.boundary[i]) != start(next)) invalid("face " + std::to_string(id) + " boundary is not closed");
    }
  }
}

bool CWComplex2::operator==(const CWComplex2& rhs) const {
  return vertices_ == rhs.vertices_ && edges_ == rhs.edges_ && faces_ == rhs.faces_;
}

CWComplex2 standard_complex(const Presentation& p) {
  CWComplex2 c;
  const CellId v = c.add_vertex();
  for (std::size_t g = 0; g < p.rank(); ++g) c.add_edge(v, v);
  for (const Word& r : p.relators) {
    EdgePath boundary;
    for (Letter l : r.letters()) boundary.push_back({l.gen() + 1, l.sign()});
    c.add_face(std::move(boundary), v);
  }
  return c;
}

long euler_characteristic(const CWComplex2& c) {
  return static_cast<long>(c.vertices().size()) - static_cast<long>(c.edges().size()) +
         static_cast<long>(c.faces().size());
}

bool Subcomplex::contains(const Subcomplex& other) const {
  return std::includes(vertices.begin(), vertices.end(), other.vertices.begin(), other.vertices.end()) &&
         std::includes(edges.begin(), edges.end(), other.edges.begin(), other.edges.end()) &&
         std::includes(faces.begin(), faces.end(), other.faces.begin(), other.faces.end());
}

Subcomplex whole(const CWComplex2& c) {
  Subcomplex s;
  s.vertices = c.vertices();
  for (const auto& [id, e] : c.edges()) s.edges.insert(id);
  for (const auto& [id, f] : c.faces()) s.faces.insert(id);
  return s;
}

Subcomplex closure(const CWComplex2& c, Subcomplex cells) {
  for (CellId f : cells.faces) {
    const Face& face = c.face(f);
    cells.vertices.insert(face.anchor);
    for (OrientedEdge oe : face.boundary) cells.edges.insert(oe.edge);
  }
  for (CellId e : cells.edges) {
    const Edge& edge = c.edge(e);
    cells.vertices.insert(edge.tail);
    cells.vertices.insert(edge.head);
  }
  return cells;
}

bool is_closed(const CWComplex2& c, const Subcomplex& s) {
  for (CellId v : s.vertices) {
    if (!c.has_vertex(v)) return false;
  }
  for (CellId e : s.edges) {
    if (!c.has_edge(e)) return false;
  }
  for (CellId f : s.faces) {
    if (!c.has_face(f)) return false;
  }
  return closure(c, s) == s;
}

Subcomplex intersection(const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out;
  std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                        std::inserter(out.vertices, out.vertices.end()));
  std::set_intersection(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                        std::inserter(out.edges, out.edges.end()));
  std::set_intersection(a.faces.begin(), a.faces.end(), b.faces.begin(), b.faces.end(),
                        std::inserter(out.faces, out.faces.end()));
  return out;
}

Subcomplex complement(const CWComplex2& c, const Subcomplex& s) {
  Subcomplex outside;
  for (CellId v : c.vertices()) {
    if (!s.vertices.contains(v)) outside.vertices.insert(v);
  }
  for (const auto& [id, e] : c.edges()) {
    if (!s.edges.contains(id)) outside.edges.insert(id);
  }
  for (const auto& [id, f] : c.faces()) {
    if (!s.faces.contains(id)) outside.faces.insert(id);
  }
  return closure(c, std::move(outside));
}

CWComplex2 restrict_to(const CWComplex2& c, const Subcomplex& s) {
  CWComplex2 out;
  for (CellId v : s.vertices) out.add_vertex(v);
  for (CellId e : s.edges) out.add_edge(c.edge(e));
  for (CellId f : s.faces) out.add_face(c.face(f));
  return out;
}

std::vector<Subcomplex> components(const CWComplex2& c, const Subcomplex& s) {
  std::map<CellId, CellId> parent;
  for (CellId v : s.vertices) parent[v] = v;
  auto find = [&](CellId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (CellId e : s.edges) {
    const Edge& edge = c.edge(e);
    const CellId a = find(edge.tail);
    const CellId b = find(edge.head);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Roots are least vertex ids after full compression with min-linking.
  std::map<CellId, Subcomplex> by_root;
  for (CellId v : s.vertices) by_root[find(v)].vertices.insert(v);
  for (CellId e : s.edges) by_root[find(c.edge(e).tail)].edges.insert(e);
  for (CellId f : s.faces) by_root[find(c.face(f).anchor)].faces.insert(f);
  std::vector<Subcomplex> out;
  for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
  std::sort(out.begin(), out.end(),
            [](const Subcomplex& a, const Subcomplex& b) { return *a.vertices.begin() < *b.vertices.begin(); });
  return out;
}

bool is_tree(const CWComplex2& c, const Subcomplex& s) {
  if (s.vertices.empty() || !s.faces.empty() || !is_closed(c, s)) return false;
  return s.edges.size() + 1 == s.vertices.size() && components(c, s).size() == 1;
}

FundamentalGroup::FundamentalGroup(const CWComplex2& c, CellId base) : base_(base) {
  if (!c.has_vertex(base)) throw Error(ErrorKind::InvalidArgument, "base vertex " + std::to_string(base) + " missing");
  std::map<CellId, std::vector<OrientedEdge>> out_edges;
  for (const auto& [id, e] : c.edges()) {
    out_edges[e.tail].push_back({id, 1});
    if (!e.loop()) out_edges[e.head].push_back({id, -1});
  }
  std::set<CellId> tree_edges;
  std::set<CellId> seen{base};
  std::deque<CellId> queue{base};
  while (!queue.empty()) {
    const CellId v = queue.front();
    queue.pop_front();
    for (OrientedEdge oe : out_edges[v]) {
      const CellId w = c.end(oe);
      if (seen.contains(w)) continue;
      seen.insert(w);
      parent_[w] = oe;
      parent_vertex_[w] = v;
      tree_edges.insert(oe.edge);
      queue.push_back(w);
    }
  }
  if (seen.size() != c.vertices().size()) {
    throw Error(ErrorKind::Disconnected, "complex is disconnected: reached " + std::to_string(seen.size()) + " of " +
                                             std::to_string(c.vertices().size()) + " vertices");
  }
  for (const auto& [id, e] : c.edges()) {
    if (tree_edges.contains(id)) continue;
    generator_.emplace(id, presentation_.alphabet.add("e" + std::to_string(id)));
  }
  for (const auto& [id, f] : c.faces()) {
    Word r = word_of_path(f.boundary);
    if (!r.empty()) presentation_.relators.push_back(std::move(r));
  }
}

std::optional<GenId> FundamentalGroup::generator_of(CellId edge) const {
  auto it = generator_.find(edge);
  if (it == generator_.end()) return std::nullopt;
  return it->second;
}

EdgePath FundamentalGroup::tree_path(CellId v) const {
  EdgePath path;
  while (v != base_) {
    path.push_back(parent_.at(v));
    v = parent_vertex_.at(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Word FundamentalGroup::word_of_path(const EdgePath& path) const {
  std::vector<Letter> raw;
  for (OrientedEdge oe : path) {
    if (auto g = generator_of(oe.edge)) raw.emplace_back(*g, oe.sign);
  }
  return Word(std::span<const Letter>(raw));
}

Presentation fundamental_presentation(const CWComplex2& c, CellId base) {
  return FundamentalGroup(c, base).presentation();
}

Verdict is_simply_connected_bounded(const CWComplex2& c, std::size_t budget) {
  if (c.vertices().empty()) throw Error(ErrorKind::Disconnected, "empty complex");
  const Presentation p = fundamental_presentation(c, *c.vertices().begin());
  if (tietze_simplify(p, budget).presentation.rank() == 0) return Verdict::Yes;
  if (!abelian_invariants(p).trivial()) return Verdict::No;
  return Verdict::Unknown;
}

CWComplex2 collapse_face(const CWComplex2& c, CellId e, CellId d) {
  if (!c.has_face(e) || !c.has_edge(d)) throw Error(ErrorKind::NotFreeFace, "no such face/edge pair");
  const Face& face = c.face(e);
  if (count_edge(face.boundary, d) != 1) {
    throw Error(ErrorKind::NotFreeFace, "edge " + std::to_string(d) + " is not traversed exactly once by face " +
                                            std::to_string(e));
  }
  const auto at = static_cast<std::size_t>(
      std::find_if(face.boundary.begin(), face.boundary.end(), [&](OrientedEdge oe) { return oe.edge == d; }) -
      face.boundary.begin());
  const int sign = face.boundary[at].sign;
  EdgePath rest;
  for (std::size_t i = 1; i < face.boundary.size(); ++i) rest.push_back(face.boundary[(at + i) % face.boundary.size()]);
  // d^sign is homotopic rel endpoints to rest^-1 across e.
  const EdgePath forward = inverse_path(rest);

  CWComplex2 out = c;
  out.remove_face(e);
  for (const auto& [id, f] : c.faces()) {
    if (id == e || count_edge(f.boundary, d) == 0) continue;
    EdgePath boundary;
    for (OrientedEdge oe : f.boundary) {
      if (oe.edge != d) {
        boundary.push_back(oe);
      } else {
        const EdgePath& with = oe.sign == sign ? forward : rest;
        boundary.insert(boundary.end(), with.begin(), with.end());
      }
    }
    out.set_boundary(id, std::move(boundary), f.anchor);
  }
  out.remove_edge(d);
  return out;
}

CWComplex2 collapse_edge(const CWComplex2& c, CellId e, CellId d) {
  if (!c.has_edge(e) || !c.has_vertex(d)) throw Error(ErrorKind::NotFreeFace, "no such edge/vertex pair");
  const Edge& edge = c.edge(e);
  if (edge.loop() || (edge.tail != d && edge.head != d)) {
    throw Error(ErrorKind::NotFreeFace, "vertex " + std::to_string(d) + " is not a free end of edge " +
                                            std::to_string(e));
  }
  const CellId other = edge.tail == d ? edge.head : edge.tail;
  CWComplex2 out = c;
  out.remove_edge(e);
  for (const auto& [id, f] : c.edges()) {
    if (id == e) continue;
    if (f.tail == d || f.head == d) out.set_endpoints(id, f.tail == d ? other : f.tail, f.head == d ? other : f.head);
  }
  for (const auto& [id, f] : c.faces()) {
    EdgePath boundary;
    for (OrientedEdge oe : f.boundary) {
      if (oe.edge != e) boundary.push_back(oe);
    }
    out.set_boundary(id, std::move(boundary), f.anchor == d ? other : f.anchor);
  }
  out.remove_vertex(d);
  return out;
}

CWComplex2 internal_collapse(const CWComplex2& c, CellRef e, CellRef d) {
  if (e.dim == 2 && d.dim == 1) return collapse_face(c, e.id, d.id);
  if (e.dim == 1 && d.dim == 0) return collapse_edge(c, e.id, d.id);
  throw Error(ErrorKind::NotFreeFace, "collapse needs a (face, edge) or (edge, vertex) pair");
}

namespace {

Expansion expand(const CWComplex2& c, const site::Whisker& s) {
  if (!c.has_vertex(s.vertex)) throw Error(ErrorKind::InvalidSite, "whisker at missing vertex");
  Expansion x{c, {}, {}};
  const CellId v = x.complex.add_vertex();
  const CellId e = x.complex.add_edge(s.vertex, v);
  x.e = {1, e};
  x.d = {0, v};
  return x;
}

Expansion expand(const CWComplex2& c, const site::FaceOverPath& s) {
  for (std::size_t i = 0; i < s.path.size(); ++i) {
    if (!c.has_edge(s.path[i].edge)) throw Error(ErrorKind::InvalidSite, "path uses a missing edge");
    if (i > 0 && c.end(s.path[i - 1]) != c.start(s.path[i])) {
      throw Error(ErrorKind::InvalidSite, "path is not connected");
    }
  }
  const CellId from = s.path.empty() ? s.vertex : c.start(s.path.front());
  const CellId to = s.path.empty() ? s.vertex : c.end(s.path.back());
  if (!c.has_vertex(from)) throw Error(ErrorKind::InvalidSite, "face over a missing vertex");
  Expansion x{c, {}, {}};
  const CellId d = x.complex.add_edge(from, to);
  EdgePath boundary{{d, 1}};
  const EdgePath back = inverse_path(s.path);
  boundary.insert(boundary.end(), back.begin(), back.end());
  const CellId e = x.complex.add_face(std::move(boundary));
  x.e = {2, e};
  x.d = {1, d};
  return x;
}

Expansion expand(const CWComplex2& c, const site::ParallelEdge& s) {
  if (!c.has_edge(s.edge)) throw Error(ErrorKind::InvalidSite, "bridge over a missing edge");
  for (CellId f : s.reroute) {
    if (!c.has_face(f) || count_edge(c.face(f).boundary, s.edge) == 0) {
      throw Error(ErrorKind::InvalidSite, "face " + std::to_string(f) + " does not traverse the bridged edge");
    }
  }
  const Edge old = c.edge(s.edge);
  Expansion x{c, {}, {}};
  const CellId d = x.complex.add_edge(old.tail, old.head);
  const CellId e = x.complex.add_face({{d, 1}, {s.edge, -1}});
  for (CellId f : s.reroute) {
    const Face& face = c.face(f);
    EdgePath boundary = face.boundary;
    for (OrientedEdge& oe : boundary) {
      if (oe.edge == s.edge) oe.edge = d;
    }
    x.complex.set_boundary(f, std::move(boundary), face.anchor);
  }
  x.e = {2, e};
  x.d = {1, d};
  return x;
}

Expansion expand(const CWComplex2& c, const site::VertexSplit& s) {
  const CellId v = s.vertex;
  if (!c.has_vertex(v)) throw Error(ErrorKind::InvalidSite, "split of a missing vertex");
  for (CellId e : s.tails) {
    if (!c.has_edge(e) || c.edge(e).tail != v) throw Error(ErrorKind::InvalidSite, "edge tail not at split vertex");
  }
  for (CellId e : s.heads) {
    if (!c.has_edge(e) || c.edge(e).head != v) throw Error(ErrorKind::InvalidSite, "edge head not at split vertex");
  }
  for (CellId f : s.anchors) {
    if (!c.has_face(f) || !c.face(f).boundary.empty() || c.face(f).anchor != v) {
      throw Error(ErrorKind::InvalidSite, "only empty-boundary faces at the split vertex can move");
    }
  }
  Expansion x{c, {}, {}};
  CWComplex2& out = x.complex;
  const CellId w = out.add_vertex();
  const CellId e1 = out.add_edge(w, v);
  for (const auto& [id, edge] : c.edges()) {
    const bool t = s.tails.contains(id);
    const bool h = s.heads.contains(id);
    if (t || h) out.set_endpoints(id, t ? w : edge.tail, h ? w : edge.head);
  }
  for (const auto& [id, f] : c.faces()) {
    if (f.boundary.empty()) {
      if (s.anchors.contains(id)) out.set_boundary(id, {}, w);
      continue;
    }
    EdgePath boundary;
    const std::size_t n = f.boundary.size();
    for (std::size_t i = 0; i < n; ++i) {
      const OrientedEdge cur = f.boundary[i];
      const OrientedEdge next = f.boundary[(i + 1) % n];
      boundary.push_back(cur);
      const CellId arrive = out.end(cur);
      const CellId leave = out.start(next);
      if (arrive == w && leave == v) boundary.push_back({e1, 1});
      if (arrive == v && leave == w) boundary.push_back({e1, -1});
    }
    out.set_boundary(id, std::move(boundary), f.anchor);
  }
  x.e = {1, e1};
  x.d = {0, w};
  return x;
}

}  // namespace

Expansion internal_expansion(const CWComplex2& c, const ExpansionSite& where) {
  return std::visit([&](const auto& s) { return expand(c, s); }, where);
}

namespace {

// Smallest subtree of `tree` containing `keep`: prune leaves outside `keep`.
Subcomplex tree_hull(const CWComplex2& c, const Subcomplex& tree, const std::set<CellId>& keep) {
  Subcomplex hull = tree;
  bool pruned = true;
  while (pruned) {
    pruned = false;
    std::map<CellId, std::vector<CellId>> incident;
    for (CellId e : hull.edges) {
      incident[c.edge(e).tail].push_back(e);
      incident[c.edge(e).head].push_back(e);
    }
    for (CellId v : std::set<CellId>(hull.vertices)) {
      if (keep.contains(v) || incident[v].size() > 1) continue;
      hull.vertices.erase(v);
      for (CellId e : incident[v]) hull.edges.erase(e);
      pruned = true;
    }
  }
  return hull;
}

void check_inputs(const CWComplex2& c, const std::vector<Subcomplex>& filtration, const TreeSet& trees) {
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    if (!is_closed(c, filtration[i])) {
      throw Error(ErrorKind::InvalidFiltration, "member " + std::to_string(i) + " is not a subcomplex");
    }
    if (i > 0 && !filtration[i].contains(filtration[i - 1])) {
      throw Error(ErrorKind::InvalidFiltration, "member " + std::to_string(i) + " does not contain its predecessor");
    }
  }
  std::set<CellId> used;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!is_tree(c, trees[i])) throw Error(ErrorKind::NotATree, "tree " + std::to_string(i) + " is not a tree");
    for (CellId v : trees[i].vertices) {
      if (!used.insert(v).second) {
        throw Error(ErrorKind::OverlappingTrees, "trees share vertex " + std::to_string(v));
      }
    }
  }
}

}  // namespace

RerouteResult reroute_trees(const CWComplex2& c, const std::vector<Subcomplex>& filtration, const TreeSet& trees) {
  c.validate();
  check_inputs(c, filtration, trees);
  RerouteResult result;
  result.complex = c;
  result.trees = trees;
  CWComplex2& x = result.complex;
  std::vector<Subcomplex> members = filtration;
  const std::size_t count = members.size();

  std::size_t b = 0;
  while (b < count) {
    std::vector<std::optional<Subcomplex>> hulls(trees.size());
    for (std::size_t t = 0; t < trees.size(); ++t) {
      const Subcomplex meet = intersection(members[b], trees[t]);
      if (!meet.vertices.empty()) hulls[t] = tree_hull(x, trees[t], meet.vertices);
    }
    std::size_t n = b;
    while (n < count && !std::all_of(hulls.begin(), hulls.end(), [&](const auto& h) {
             return !h || members[n].contains(*h);
           })) {
      ++n;
    }
    const Subcomplex d = n < count ? members[n] : whole(x);

    std::set<CellId> gamma_edges;
    std::set<CellId> gamma_vertices;
    for (std::size_t t = 0; t < trees.size(); ++t) {
      const Subcomplex meet = intersection(d, trees[t]);
      if (meet.vertices.empty()) continue;
      const std::vector<Subcomplex> comps = components(x, meet);
      const CellId anchor = hulls[t] ? *hulls[t]->vertices.begin() : *meet.vertices.begin();
      for (const Subcomplex& comp : comps) {
        if (comp.vertices.contains(anchor)) continue;
        gamma_edges.insert(comp.edges.begin(), comp.edges.end());
        gamma_vertices.insert(comp.vertices.begin(), comp.vertices.end());
      }
    }

    Subcomplex hat = d;
    Subcomplex added;
    for (CellId edge : gamma_edges) {
      std::set<CellId> reroute;
      for (CellId f : hat.faces) {
        if (count_edge(x.face(f).boundary, edge) > 0) reroute.insert(f);
      }
      Expansion ex = internal_expansion(x, site::ParallelEdge{edge, reroute});
      x = std::move(ex.complex);
      hat.edges.erase(edge);
      hat.edges.insert(ex.d.id);
      added.edges.insert(ex.d.id);
      added.faces.insert(ex.e.id);
      result.moves.push_back({"bridge", ex.e, ex.d, edge});
    }
    for (CellId v : gamma_vertices) {
      site::VertexSplit split{v, {}, {}, {}};
      for (CellId e : hat.edges) {
        if (x.edge(e).tail == v) split.tails.insert(e);
        if (x.edge(e).head == v) split.heads.insert(e);
      }
      for (CellId f : hat.faces) {
        if (x.face(f).boundary.empty() && x.face(f).anchor == v) split.anchors.insert(f);
      }
      Expansion ex = internal_expansion(x, split);
      x = std::move(ex.complex);
      hat.vertices.erase(v);
      hat.vertices.insert(ex.d.id);
      added.vertices.insert(ex.d.id);
      added.edges.insert(ex.e.id);
      result.moves.push_back({"split", ex.e, ex.d, v});
    }

    result.filtration.push_back(std::move(hat));
    result.source_member.push_back(n);
    for (std::size_t j = n; j < count; ++j) {
      members[j].vertices.insert(added.vertices.begin(), added.vertices.end());
      members[j].edges.insert(added.edges.begin(), added.edges.end());
      members[j].faces.insert(added.faces.begin(), added.faces.end());
    }
    b = n + 1;
  }
  return result;
}

nlohmann::json to_json(const CWComplex2& c) {
  nlohmann::json j;
  j["vertices"] = c.vertices();
  j["edges"] = nlohmann::json::array();
  for (const auto& [id, e] : c.edges()) j["edges"].push_back({{"id", id}, {"tail", e.tail}, {"head", e.head}});
  j["faces"] = nlohmann::json::array();
  for (const auto& [id, f] : c.faces()) {
    std::vector<long> boundary;
    for (OrientedEdge oe : f.boundary) boundary.push_back(oe.sign * static_cast<long>(oe.edge));
    j["faces"].push_back({{"id", id}, {"boundary", boundary}, {"anchor", f.anchor}});
  }
  return j;
}

CWComplex2 complex_from_json(const nlohmann::json& j) {
  CWComplex2 c;
  for (const auto& v : j.at("vertices")) c.add_vertex(v.get<CellId>());
  for (const auto& e : j.at("edges")) c.add_edge(Edge{e.at("id"), e.at("tail"), e.at("head")});
  for (const auto& f : j.at("faces")) {
    Face face;
    face.id = f.at("id");
    for (long code : f.at("boundary")) {
      if (code == 0) throw Error(ErrorKind::InvalidComplex, "boundary entry 0");
      face.boundary.push_back({static_cast<CellId>(code > 0 ? code : -code), code > 0 ? 1 : -1});
    }
    if (f.contains("anchor")) {
      face.anchor = f.at("anchor");
    } else if (!face.boundary.empty()) {
      face.anchor = c.start(face.boundary.front());
    } else {
      throw Error(ErrorKind::InvalidComplex, "face with empty boundary needs an anchor");
    }
    c.add_face(face);
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const Subcomplex& s) {
  return {{"vertices", s.vertices}, {"edges", s.edges}, {"faces", s.faces}};
}

Subcomplex subcomplex_from_json(const nlohmann::json& j) {
  Subcomplex s;
  s.vertices = j.at("vertices").get<std::set<CellId>>();
  s.edges = j.at("edges").get<std::set<CellId>>();
  s.faces = j.value("faces", std::set<CellId>{});
  return s;
}

std::string to_dot(const CWComplex2& c) {
  std::ostringstream out;
  out << "graph complex {\n";
  for (CellId v : c.vertices()) out << "  v" << v << ";\n";
  for (const auto& [id, e] : c.edges()) {
    out << "  v" << e.tail << " -- v" << e.head << " [label=\"e" << id << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace onerel
