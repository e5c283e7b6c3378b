#include <doctest.h>

#include "onerel/error.hpp"
#include "onerel/towers.hpp"

using namespace onerel;

namespace {

Presentation P(const char* text) { return parse_presentation(text); }

GroupHom hom(const char* source, const char* target, std::vector<const char*> images) {
  GroupHom h{P(source), P(target), {}, Verdict::Unknown};
  for (const char* w : images) h.images.push_back(parse_word(w, h.target.alphabet));
  verify_hom(h);
  return h;
}

Tower telescopic_fixture() {
  Tower t;
  t.groups = {P("< a ; >"), P("< a, b ; >"), P("< a, b, c ; >")};
  t.bonds = {hom("< a, b ; >", "< a ; >", {"a", "1"}), hom("< a, b, c ; >", "< a, b ; >", {"a", "b", "1"})};
  return t;
}

// Abelianized images of every source generator.
std::vector<std::vector<BigInt>> abelianized(const GroupHom& h) {
  const AbelianMap m(h.target);
  std::vector<std::vector<BigInt>> out;
  for (const Word& w : h.images) out.push_back(m.image(w));
  return out;
}

}  // namespace

TEST_CASE("homomorphisms") {
  const GroupHom id = identity_hom(P("< a, b ; a b a^-1 b^-1 >"));
  CHECK(bond_surjective(id) == Verdict::Yes);

  const GroupHom square = hom("< a ; >", "< a ; >", {"a^2"});
  CHECK(bond_surjective(square) == Verdict::No);

  const GroupHom kill = hom("< a, b ; >", "< a ; >", {"a", "1"});
  CHECK(bond_surjective(kill) == Verdict::Yes);

  // b is reached only through the relator b = a^3.
  const GroupHom via_relator = hom("< a ; >", "< a, b ; b a^-3 >", {"a"});
  CHECK(via_relator.relators_verified == Verdict::Yes);
  CHECK(bond_surjective(via_relator) == Verdict::Yes);

  // Z -> Z^2 misses a direction.
  CHECK(bond_surjective(hom("< a ; >", "< a, b ; a b a^-1 b^-1 >", {"a b"})) == Verdict::No);
  // Onto Z^2 through a unimodular change of basis, certified in abelian mode.
  CHECK(bond_surjective(hom("< x, y ; >", "< a, b ; a b a^-1 b^-1 >", {"a^2 b", "a b"})) == Verdict::Yes);

  const GroupHom bad = hom("< a ; a^2 >", "< a ; >", {"a"});
  CHECK(bad.relators_verified == Verdict::No);

  const GroupHom twice = compose(square, square);
  CHECK(twice.images[0] == parse_word("a^4", twice.target.alphabet));
}

TEST_CASE("telescopic check") {
  const TowerVerdict yes = telescopic_check(telescopic_fixture());
  CHECK(yes.telescopic_evidence == Verdict::Yes);
  REQUIRE(yes.stages.size() == 3);
  CHECK(yes.stages[2].rank == 3u);
  CHECK_FALSE(yes.stages[0].bond_surjective.has_value());
  CHECK(yes.stages[1].projection_evidence == Verdict::Yes);

  Tower squared;
  squared.groups = {P("< a ; >"), P("< a ; >")};
  squared.bonds = {hom("< a ; >", "< a ; >", {"a^2"})};
  const TowerVerdict no = telescopic_check(squared);
  CHECK(no.telescopic_evidence == Verdict::No);
  CHECK(no.stages[1].bond_surjective == Verdict::No);

  Tower torsion;
  torsion.groups = {P("< a ; a^2 >"), P("< a ; >")};
  torsion.bonds = {hom("< a ; >", "< a ; a^2 >", {"a"})};
  const TowerVerdict tv = telescopic_check(torsion);
  CHECK(tv.stages[0].free == Verdict::No);
  CHECK(tv.telescopic_evidence == Verdict::No);

  Tower shrinking;
  shrinking.groups = {P("< a, b ; >"), P("< a ; >")};
  shrinking.bonds = {hom("< a ; >", "< a, b ; >", {"a"})};
  CHECK(telescopic_check(shrinking).telescopic_evidence == Verdict::No);

  Tower single;
  single.groups = {P("< a ; >")};
  CHECK_THROWS_AS(telescopic_check(single), Error);
}

TEST_CASE("pro-pi1 of the square lattice") {
  const Ball ball = cayley_ball(P("< a, b ; a b a^-1 b^-1 >"), 6);
  const CWComplex2 c = complex_ball(ball);
  const std::vector<std::size_t> radii{1, 2, 3};
  const auto filtration = concentric_filtration(ball, c, radii);
  const auto ray = outward_ray(ball, radii, RayChoice::ShortlexMax);
  REQUIRE(ray.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(ball.distance[ray[i] - 1] == radii[i] + 1);

  const Tower t = pro_pi1(c, filtration, ray);
  REQUIRE(t.groups.size() == 3);
  REQUIRE(t.bonds.size() == 2);
  // C_1 has no faces, so its interior is empty and stage 0 is a disk.
  for (const auto& g : t.groups) CHECK(g.relators.empty());
  CHECK(t.groups[0].rank() == 0);
  CHECK(t.groups[1].rank() == 1);
  CHECK(t.groups[2].rank() == 1);
  for (const auto& b : t.bonds) {
    CHECK(b.relators_verified == Verdict::Yes);
    CHECK(bond_surjective(b) == Verdict::Yes);
  }
  CHECK(telescopic_check(t).telescopic_evidence == Verdict::Yes);

  // Bonds compose to the direct inclusion, on abelianizations.
  const GroupHom direct = induced_hom(c, filtration, ray, 2, 0);
  CHECK(abelianized(compose(t.bonds[0], t.bonds[1])) == abelianized(direct));

  const auto other = outward_ray(ball, radii, RayChoice::ShortlexMin);
  CHECK(other != ray);
  CHECK(telescopic_check(pro_pi1(c, filtration, other)).telescopic_evidence == Verdict::Yes);

  std::vector<CellId> inside = ray;
  inside[0] = 1;
  CHECK_THROWS_AS(pro_pi1(c, filtration, inside), Error);
  try {
    pro_pi1(c, filtration, inside);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RayInsideFiltration);
  }

  std::vector<Subcomplex> everything = filtration;
  everything.back() = whole(c);
  try {
    pro_pi1(c, everything, ray);
    FAIL("expected an error");
  } catch (const DisconnectedComplement& e) {
    CHECK(e.stage() == 2);
    CHECK(e.groups().empty());
  }

  std::vector<Subcomplex> unnested{filtration[1], filtration[0]};
  CHECK_THROWS_AS(pro_pi1(c, unnested, {ray[0], ray[1]}), Error);
}

TEST_CASE("pro-pi1 of trees") {
  // A path 1 - 2 - 3 - 4 - 5 filtered from one end.
  CWComplex2 path;
  for (int i = 0; i < 5; ++i) path.add_vertex();
  for (CellId v = 1; v < 5; ++v) path.add_edge(v, v + 1);
  const std::vector<Subcomplex> filtration{{{1}, {}, {}}, {{1, 2}, {1}, {}}, {{1, 2, 3}, {1, 2}, {}}};
  const Tower t = pro_pi1(path, filtration, {5, 5, 5});
  for (const auto& g : t.groups) CHECK(g.rank() == 0);

  // The free group ball is a tree whose complements split into branches.
  const Ball ball = cayley_ball(P("< a, b ; >"), 3);
  const CWComplex2 c = complex_ball(ball);
  const auto f = concentric_filtration(ball, c, {1, 2});
  try {
    pro_pi1(c, f, outward_ray(ball, {1, 2}, RayChoice::ShortlexMax));
    FAIL("expected an error");
  } catch (const DisconnectedComplement& e) {
    CHECK(e.groups().size() == 4);
    for (const auto& g : e.groups()) {
      CHECK(g.rank() == 0);
      CHECK(g.relators.empty());
    }
  }
}

TEST_CASE("semistability reports") {
  const auto z2 = semistability_report(P("< a, b ; a b a^-1 b^-1 >"), {2, 3, 4, 5});
  CHECK(z2.chains == 1);
  CHECK(z2.all_bonds_surjective == Verdict::Yes);
  for (const auto& stage : z2.stages) {
    REQUIRE(stage.size() == 1);
    CHECK(stage[0].free == Verdict::Yes);
    CHECK(stage[0].rank == 1u);
  }

  const auto line = semistability_report(P("< a, b ; b >"), {2, 3, 4, 5});
  CHECK(line.chains == 2);
  CHECK(line.all_bonds_surjective == Verdict::Yes);
  for (const auto& stage : line.stages) {
    for (const auto& cs : stage) CHECK(cs.group.rank() == 0);
  }

  const auto tree = semistability_report(P("< a, b ; a^2 >"), {2, 3, 4});
  CHECK(tree.chains > 2);
  CHECK(tree.stages[2].size() > tree.stages[0].size());
  CHECK(tree.all_bonds_surjective == Verdict::Yes);
  for (const auto& stage : tree.stages) {
    for (const auto& cs : stage) CHECK(cs.free == Verdict::Yes);
  }

  CHECK(to_json(z2)["chains"] == 1);
  CHECK(to_text(z2).find("chains reaching the outer sphere: 1") != std::string::npos);
  CHECK_THROWS_AS(semistability_report(P("< a ; a^3 >"), {3, 2}), Error);
}
