#include <doctest.h>

#include <random>

#include "onerel/cw_complex.hpp"
#include "onerel/error.hpp"
#include "support/fixtures.hpp"
#include "support/homology.hpp"

using namespace onerel;
using testsupport::betti_numbers;

namespace {

Presentation P(const char* text) { return parse_presentation(text); }

}  // namespace

TEST_CASE("standard complexes") {
  const CWComplex2 k = standard_complex(P("< a, b ; a^2 >"));
  CHECK(k.vertices().size() == 1);
  CHECK(k.edges().size() == 2);
  REQUIRE(k.faces().size() == 1);
  CHECK(k.faces().at(1).boundary == EdgePath{{1, 1}, {1, 1}});
  CHECK(euler_characteristic(k) == 0);
  k.validate();

  const CWComplex2 circle = standard_complex(P("< a ; >"));
  CHECK(circle.faces().empty());
  CHECK(euler_characteristic(circle) == 0);

  const CWComplex2 cube = standard_complex(P("< a, b ; (a b)^3 >"));
  CHECK(cube.faces().at(1).boundary.size() == 6);
  CHECK(euler_characteristic(standard_complex(P("< a, b, c ; a b, c^2 a >"))) == 1 - 3 + 2);
  CHECK(euler_characteristic(testsupport::digon_disk()) == 1);
}

TEST_CASE("fundamental group presentations") {
  const Presentation circle = fundamental_presentation(testsupport::circle(), 1);
  CHECK(circle.rank() == 1);
  CHECK(circle.relators.empty());

  const Presentation torus = fundamental_presentation(standard_complex(P("< a, b ; a b a^-1 b^-1 >")), 1);
  CHECK(format_presentation(torus) == "< e1, e2 ; e1 e2 e1^-1 e2^-1 >");

  const CWComplex2 disk = testsupport::digon_disk();
  const Presentation dp = fundamental_presentation(disk, 1);
  CHECK(tietze_simplify(dp).presentation.rank() == 0);

  CWComplex2 two;
  two.add_vertex();
  two.add_vertex();
  CHECK_THROWS_AS(fundamental_presentation(two, 1), Error);

  // Tree paths and path words on the reroute fixture.
  const auto fx = testsupport::reroute_fixture();
  const FundamentalGroup g(fx.complex, 1);
  for (CellId v : fx.complex.vertices()) {
    const EdgePath path = g.tree_path(v);
    CellId at = 1;
    for (OrientedEdge oe : path) {
      CHECK(fx.complex.start(oe) == at);
      at = fx.complex.end(oe);
    }
    CHECK(at == v);
    CHECK(g.word_of_path(path).empty());
  }
  CHECK(tietze_simplify(g.presentation()).presentation.rank() == 0);
}

TEST_CASE("bounded simple connectivity") {
  CHECK(is_simply_connected_bounded(testsupport::digon_disk()) == Verdict::Yes);
  CHECK(is_simply_connected_bounded(testsupport::circle()) == Verdict::No);
  CHECK(is_simply_connected_bounded(testsupport::digon_disk(), 0) == Verdict::Unknown);
  CHECK(is_simply_connected_bounded(standard_complex(P("< a ; a^3 >"))) == Verdict::No);
}

TEST_CASE("collapses") {
  // Disk: collapse the face through one edge, then the edge through a vertex.
  const CWComplex2 disk = testsupport::digon_disk();
  const CWComplex2 segment = internal_collapse(disk, {2, 1}, {1, 2});
  segment.validate();
  CHECK(segment.faces().empty());
  CHECK(segment.edges().size() == 1);
  const CWComplex2 point = internal_collapse(segment, {1, 1}, {0, 2});
  CHECK(point.vertices().size() == 1);
  CHECK(point.edges().empty());

  CHECK_THROWS_AS(internal_collapse(standard_complex(P("< a ; a^2 >")), {2, 1}, {1, 1}), Error);
  CHECK_THROWS_AS(internal_collapse(testsupport::circle(), {1, 1}, {0, 1}), Error);
  CHECK_THROWS_AS(internal_collapse(disk, {2, 1}, {0, 1}), Error);

  // Rerouting: a second face through the collapsed edge follows the rest.
  CWComplex2 c = testsupport::digon_disk();
  c.add_face({{1, 1}, {2, -1}});
  const CWComplex2 folded = collapse_face(c, 1, 1);
  folded.validate();
  CHECK(folded.face(2).boundary == EdgePath{{2, 1}, {2, -1}});
  CHECK(betti_numbers(c) == betti_numbers(folded));
}

TEST_CASE("expansions invert collapses") {
  const CWComplex2 base = standard_complex(P("< a, b ; a b a^-1 b^-1 >"));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const ExpansionSite where = testsupport::random_site(base, rng);
    const Expansion ex = internal_expansion(base, where);
    ex.complex.validate();
    CHECK(euler_characteristic(ex.complex) == euler_characteristic(base));
    CHECK(betti_numbers(ex.complex) == betti_numbers(base));
    CHECK(internal_collapse(ex.complex, ex.e, ex.d) == base);
  }
  CHECK_THROWS_AS(internal_expansion(base, site::Whisker{9}), Error);
  CHECK_THROWS_AS(internal_expansion(base, site::FaceOverPath{{{1, 1}, {7, 1}}, 0}), Error);
  CHECK_THROWS_AS(internal_expansion(base, site::VertexSplit{1, {5}, {}, {}}), Error);
}

TEST_CASE("subcomplex helpers") {
  const auto fx = testsupport::reroute_fixture();
  const CWComplex2& c = fx.complex;
  for (const Subcomplex& s : fx.filtration) CHECK(is_closed(c, s));
  CHECK(is_tree(c, fx.trees[0]));
  CHECK(is_tree(c, fx.trees[1]));
  CHECK_FALSE(is_tree(c, fx.filtration[2]));
  CHECK(components(c, intersection(fx.filtration[0], fx.trees[0])).size() == 2);
  CHECK(components(c, intersection(fx.filtration[1], fx.trees[0])).size() == 2);
  // Outside C2: vertex 5, edges 3-5 and 5-6, and the last face with its boundary.
  const Subcomplex out = complement(c, fx.filtration[1]);
  CHECK(is_closed(c, out));
  CHECK(out.vertices == std::set<CellId>{3, 4, 5, 6});
  CHECK(out.edges == std::set<CellId>{3, 4, 7, 8});
  CHECK(out.faces == std::set<CellId>{3});
  const CWComplex2 r = restrict_to(c, fx.filtration[1]);
  r.validate();
  CHECK(r.faces().size() == 2);
}

TEST_CASE("tree rerouting") {
  const auto fx = testsupport::reroute_fixture();
  const RerouteResult r = reroute_trees(fx.complex, fx.filtration, fx.trees);
  r.complex.validate();
  CHECK(euler_characteristic(r.complex) == euler_characteristic(fx.complex));
  CHECK(betti_numbers(r.complex) == betti_numbers(fx.complex));
  REQUIRE(r.filtration.size() == 2);
  CHECK(r.source_member == std::vector<std::size_t>{1, 2});
  CHECK(r.filtration[0].contains(fx.filtration[0]));
  CHECK(r.filtration[1].contains(r.filtration[0]));
  for (const Subcomplex& m : r.filtration) {
    CHECK(is_closed(r.complex, m));
    CHECK(is_simply_connected_bounded(restrict_to(r.complex, m)) == Verdict::Yes);
    for (const Subcomplex& t : r.trees) {
      CHECK(components(r.complex, intersection(m, t)).size() <= 1);
    }
  }
  for (const Subcomplex& t : r.trees) CHECK(is_tree(r.complex, t));
  // One bridge over 6-7 and splits of 6 and 7.
  REQUIRE(r.moves.size() == 3);
  CHECK(r.moves[0].kind == "bridge");
  CHECK(r.moves[1].kind == "split");

  // Undo the moves in reverse order.
  CWComplex2 back = r.complex;
  for (auto it = r.moves.rbegin(); it != r.moves.rend(); ++it) back = internal_collapse(back, it->e, it->d);
  CHECK(back == fx.complex);

  // Already connected intersections: nothing to do.
  const RerouteResult same = reroute_trees(fx.complex, {fx.filtration[2]}, fx.trees);
  CHECK(same.complex == fx.complex);
  CHECK(same.moves.empty());

  CHECK_THROWS_AS(reroute_trees(fx.complex, {fx.filtration[1], fx.filtration[0]}, fx.trees), Error);
  CHECK_THROWS_AS(reroute_trees(fx.complex, fx.filtration, {fx.filtration[1]}), Error);
  CHECK_THROWS_AS(reroute_trees(fx.complex, fx.filtration, {fx.trees[0], fx.trees[0]}), Error);
}

TEST_CASE("complex json round trip") {
  const auto fx = testsupport::reroute_fixture();
  const auto j = to_json(fx.complex);
  CHECK(j["edges"][0]["tail"] == 1);
  CHECK(complex_from_json(j) == fx.complex);
  CHECK(subcomplex_from_json(to_json(fx.filtration[1])) == fx.filtration[1]);
  CHECK(to_dot(fx.complex).find("v1 -- v2") != std::string::npos);
}
