#include <doctest.h>

#include "onerel/error.hpp"
#include "onerel/presentation.hpp"
#include "onerel/tietze.hpp"

using namespace onerel;

TEST_CASE("parse presentations") {
  const Presentation p = parse_presentation("< a, b ; a^2 >");
  CHECK(p.alphabet.names() == std::vector<std::string>{"a", "b"});
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == Word::generator(0, 2));
  CHECK(p.one_relator());

  const Presentation free = parse_presentation("< a ; >");
  CHECK(free.relators.empty());
  CHECK_FALSE(free.one_relator());

  const Presentation r = parse_presentation("< a, b ; a^-1 b a^-1 b^-1 a >");
  CHECK(r.relators[0].size() == 5);

  // Juxtaposed runs split against the declared names; '|' separator.
  const Presentation j = parse_presentation("<a,b|a^2b^-3>");
  CHECK(j.relators[0] == Word::generator(0, 2) * Word::generator(1, -3));
  const Presentation g = parse_presentation("<x, y | (xy)^3 x^-1, 1>");
  CHECK(g.relators.size() == 2);
  CHECK(g.relators[1].empty());
  const Presentation sub = parse_presentation("< b@0, b@1 ; b@1 b@0^-1 >");
  CHECK(sub.relators[0].size() == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_presentation("< a, b ; a^2"), SyntaxError);
  CHECK_THROWS_AS(parse_presentation("a ; a"), SyntaxError);
  try {
    parse_presentation("< a ; a^ >");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 9);
  }
  try {
    parse_presentation("< a, a ; a >");
    FAIL("expected a duplicate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateGenerator);
  }
  try {
    parse_presentation("< a ; ac >");
    FAIL("expected an unknown generator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownGeneratorInRelator);
  }
}

TEST_CASE("print and reparse") {
  for (const char* text : {"< a, b ; a^2 >", "< a ; >", "< x, y, z ; x y x^-1 y^-1, z^5 (x z)^-2 >",
                           "< b@-1, b@0 ; b@-1 b@0^-1 >", "< ; >"}) {
    const Presentation p = parse_presentation(text);
    const Presentation q = parse_presentation(format_presentation(p));
    CHECK(q.alphabet == p.alphabet);
    CHECK(q.relators == p.relators);
    const Presentation r = presentation_from_json(to_json(p));
    CHECK(r.relators == p.relators);
  }
  CHECK(to_json(parse_presentation("<a,b;a^2>")).dump() == R"({"generators":["a","b"],"relators":["a^2"]})");
}

TEST_CASE("normalize relators") {
  NormalizedRelator n = normalize_relator(parse_presentation("< a, b ; a^2 >"));
  CHECK(n.core == Word::generator(0, 2));
  CHECK(n.root == Word::generator(0));
  CHECK(n.power == 2);

  n = normalize_relator(parse_presentation("< a, b ; a b a^-1 b^-1 >"));
  CHECK(n.root == n.core);
  CHECK(n.power == 1);

  n = normalize_relator(parse_presentation("< a, b ; b a^3 b^-1 >"));
  CHECK(n.root == Word::generator(0));
  CHECK(n.power == 3);
  CHECK(n.conjugator == Word::generator(1));

  CHECK_THROWS_AS(normalize_relator(parse_presentation("< a ; >")), Error);
  try {
    normalize_relator(parse_presentation("< a ; a a^-1 >"));
    FAIL("expected TrivialRelator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TrivialRelator);
  }
}

TEST_CASE("abelian invariants") {
  AbelianInvariants inv = abelian_invariants(parse_presentation("< a, b ; a^2 >"));
  CHECK(inv.free_rank == 1);
  CHECK(inv.torsion == std::vector<BigInt>{2});
  inv = abelian_invariants(parse_presentation("< a, b ; a^-1 b a^-1 b^-1 a >"));
  CHECK(inv.free_rank == 1);
  CHECK(inv.torsion.empty());
  inv = abelian_invariants(parse_presentation("< a ; a^3 >"));
  CHECK(inv.free_rank == 0);
  CHECK(inv.torsion == std::vector<BigInt>{3});
  inv = abelian_invariants(parse_presentation("< a, b ; a^4 b^6, a^6 b^4 >"));
  CHECK(inv.free_rank == 0);
  CHECK(inv.torsion == std::vector<BigInt>{2, 10});
  CHECK(format_invariants(inv) == "Z/2 + Z/10");

  // Invariance under inversion, rotation, and renaming.
  const auto base = abelian_invariants(parse_presentation("< a, b ; a^3 b^6 a b^-2 >"));
  const auto inverted = abelian_invariants(parse_presentation("< a, b ; b^2 a^-1 b^-6 a^-3 >"));
  const auto renamed = abelian_invariants(parse_presentation("< b, a ; b^3 a^6 b a^-2 >"));
  CHECK(base.free_rank == inverted.free_rank);
  CHECK(base.torsion == inverted.torsion);
  CHECK(base.torsion == renamed.torsion);
}

TEST_CASE("abelian map") {
  const Presentation p = parse_presentation("< a, b ; a^2 >");
  const AbelianMap m(p);
  CHECK(m.image(parse_word("a b", p.alphabet)) == m.image(parse_word("b a", p.alphabet)));
  CHECK(m.image(parse_word("a^3", p.alphabet)) == m.image(parse_word("a", p.alphabet)));
  CHECK(m.image(parse_word("a", p.alphabet)) != m.image(parse_word("1", p.alphabet)));
  CHECK(m.image(parse_word("b^2", p.alphabet)) != m.image(parse_word("b", p.alphabet)));
}

TEST_CASE("tietze simplification") {
  TietzeResult t = tietze_simplify(parse_presentation("< a, b ; a b^-2, b^3 >"));
  CHECK(t.presentation.rank() == 1);
  REQUIRE(t.presentation.relators.size() == 1);
  CHECK(t.presentation.relators[0].size() == 3);
  CHECK(t.generator_images[0] == Word::generator(0, 2));

  t = tietze_simplify(parse_presentation("< a, b ; a b a^-1 b^-1, b a^-1 b^-1 a >"));
  CHECK(t.presentation.relators.size() == 1);

  t = tietze_simplify(parse_presentation("< x, y ; x, y x^2 >"));
  CHECK(t.presentation.rank() == 0);
  CHECK(t.presentation.relators.empty());

  t = tietze_simplify(parse_presentation("< a, b ; a b >"), 0);
  CHECK(t.budget_exhausted);
  CHECK(t.presentation.rank() == 2);
}
