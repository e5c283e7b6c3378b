#pragma once

// Shared complexes and random surgery sequences for unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "onerel/cw_complex.hpp"

namespace testsupport {

using namespace onerel;

// Two vertices, two edges 1 -> 2, one face filling the digon.
inline CWComplex2 digon_disk() {
  CWComplex2 c;
  const CellId a = c.add_vertex();
  const CellId b = c.add_vertex();
  const CellId e1 = c.add_edge(a, b);
  const CellId e2 = c.add_edge(a, b);
  c.add_face({{e1, 1}, {e2, -1}});
  return c;
}

inline CWComplex2 circle() {
  CWComplex2 c;
  const CellId v = c.add_vertex();
  c.add_edge(v, v);
  return c;
}

// Tree T = 1-2-3-5-6-7 and T' = 4-8 inside a simply connected complex.
// C1 meets T in {1, 3}; C2 meets T in {1-2-3} and {6-7}; C3 is everything.
struct RerouteFixture {
  CWComplex2 complex;
  std::vector<Subcomplex> filtration;
  TreeSet trees;
};

inline RerouteFixture reroute_fixture() {
  RerouteFixture fx;
  CWComplex2& c = fx.complex;
  for (int i = 0; i < 8; ++i) c.add_vertex();
  const CellId t1 = c.add_edge(1, 2);
  const CellId t2 = c.add_edge(2, 3);
  const CellId t3 = c.add_edge(3, 5);
  const CellId t4 = c.add_edge(5, 6);
  const CellId t5 = c.add_edge(6, 7);
  const CellId s1 = c.add_edge(1, 4);
  const CellId s2 = c.add_edge(4, 3);
  const CellId s3 = c.add_edge(4, 6);
  const CellId s4 = c.add_edge(7, 8);
  const CellId s5 = c.add_edge(8, 4);
  const CellId f1 = c.add_face({{t1, 1}, {t2, 1}, {s2, -1}, {s1, -1}});
  const CellId f2 = c.add_face({{s3, 1}, {t5, 1}, {s4, 1}, {s5, 1}});
  c.add_face({{t3, 1}, {t4, 1}, {s3, -1}, {s2, 1}});

  Subcomplex c1{{1, 3, 4}, {s1, s2}, {}};
  Subcomplex c2{{1, 2, 3, 4, 6, 7, 8}, {t1, t2, s1, s2, s3, t5, s4, s5}, {f1, f2}};
  fx.filtration = {c1, c2, whole(c)};
  fx.trees = {Subcomplex{{1, 2, 3, 5, 6, 7}, {t1, t2, t3, t4, t5}, {}}, Subcomplex{{4, 8}, {s5}, {}}};
  return fx;
}

// Free (face, edge) and (edge, vertex) pairs of the complex.
inline std::vector<std::pair<CellRef, CellRef>> collapsible_pairs(const CWComplex2& c) {
  std::vector<std::pair<CellRef, CellRef>> out;
  for (const auto& [id, f] : c.faces()) {
    std::map<CellId, int> count;
    for (const auto& oe : f.boundary) ++count[oe.edge];
    for (const auto& [edge, n] : count) {
      if (n == 1) out.push_back({{2, id}, {1, edge}});
    }
  }
  for (const auto& [id, e] : c.edges()) {
    if (e.loop()) continue;
    out.push_back({{1, id}, {0, e.tail}});
    out.push_back({{1, id}, {0, e.head}});
  }
  return out;
}

// A random expansion site; paths are short random walks.
inline ExpansionSite random_site(const CWComplex2& c, std::mt19937& rng) {
  const std::vector<CellId> vertices(c.vertices().begin(), c.vertices().end());
  const CellId v = vertices[rng() % vertices.size()];
  std::vector<CellId> edges;
  for (const auto& [id, e] : c.edges()) edges.push_back(id);
  const unsigned kind = edges.empty() ? 0 : rng() % 4;
  switch (kind) {
    case 0:
      return site::Whisker{v};
    case 1: {
      site::FaceOverPath s;
      s.vertex = v;
      CellId at = v;
      const std::size_t len = rng() % 4;
      for (std::size_t i = 0; i < len; ++i) {
        std::vector<OrientedEdge> options;
        for (const auto& [id, e] : c.edges()) {
          if (e.tail == at) options.push_back({id, 1});
          if (e.head == at) options.push_back({id, -1});
        }
        if (options.empty()) break;
        const OrientedEdge step = options[rng() % options.size()];
        s.path.push_back(step);
        at = c.end(step);
      }
      return s;
    }
    case 2: {
      site::ParallelEdge s;
      s.edge = edges[rng() % edges.size()];
      for (const auto& [id, f] : c.faces()) {
        for (const auto& oe : f.boundary) {
          if (oe.edge == s.edge && rng() % 2) s.reroute.insert(id);
        }
      }
      return s;
    }
    default: {
      site::VertexSplit s;
      s.vertex = v;
      for (const auto& [id, e] : c.edges()) {
        if (e.tail == v && rng() % 2) s.tails.insert(id);
        if (e.head == v && rng() % 2) s.heads.insert(id);
      }
      return s;
    }
  }
}

}  // namespace testsupport
