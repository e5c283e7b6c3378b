#include <doctest.h>

#include <random>
#include <vector>

#include "onerel/error.hpp"
#include "onerel/word.hpp"

using namespace onerel;

namespace {

const Letter a{0, 1}, A{0, -1}, b{1, 1}, B{1, -1};

// Single-pass stack cancellation.
std::vector<Letter> stack_reduce(const std::vector<Letter>& raw) {
  std::vector<Letter> st;
  for (Letter l : raw) {
    if (!st.empty() && st.back().cancels(l)) {
      st.pop_back();
    } else {
      st.push_back(l);
    }
  }
  return st;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(Word{}.empty());
  CHECK(Word{a, A}.empty());
  CHECK(Word{a, b, B, a} == Word{a, a});

  std::mt19937 rng(7);
  const Letter alphabet[] = {a, A, b, B};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Letter> raw(rng() % 20);
    for (Letter& l : raw) l = alphabet[rng() % 4];
    const Word w(raw);
    const std::vector<Letter> expected = stack_reduce(raw);
    CHECK(std::vector<Letter>(w.letters().begin(), w.letters().end()) == expected);
    CHECK(free_reduce(w.letters()) == w);
  }
}

TEST_CASE("cyclic reduction") {
  auto cr = cyclic_reduce(Word{b, a, B});
  CHECK(cr.core == Word{a});
  CHECK(cr.conjugator == Word{b});

  cr = cyclic_reduce(Word{a, a});
  CHECK(cr.core == Word{a, a});
  CHECK(cr.conjugator.empty());

  // a^-1 b a^-1 b^-1 a peels twice.
  cr = cyclic_reduce(Word{A, b, A, B, a});
  CHECK(cr.core == Word{A});
  CHECK(cr.conjugator == Word{A, b});
  CHECK(cr.conjugator * cr.core * cr.conjugator.inverse() == Word{A, b, A, B, a});
}

TEST_CASE("exponent sums and support") {
  const Word w = Word::generator(0, 2) * Word::generator(1, -3);
  CHECK(exponent_sum(w, 0) == 2);
  CHECK(exponent_sum(w, 1) == -3);
  CHECK(exponent_sum(Word{a, b, A, B}, 0) == 0);
  CHECK(exponent_sum(Word{}, 0) == 0);
  CHECK(occurrences(w, 1) == 3);
  CHECK(support(w) == std::set<GenId>{0, 1});
}

TEST_CASE("primitive roots") {
  auto pr = primitive_root(Word{a, a});
  CHECK(pr.root == Word{a});
  CHECK(pr.power == 2);
  pr = primitive_root(Word{a, b, A, B});
  CHECK(pr.power == 1);
  pr = primitive_root(Word{a, b, a, b, a, b});
  CHECK(pr.root == Word{a, b});
  CHECK(pr.power == 3);
  CHECK_THROWS_AS(primitive_root(Word{}), Error);
}

TEST_CASE("substitution") {
  // Alphabet {A, b, B}: ids 0, 1, 2.
  const Word q = Word::generator(0, 2) * Word::generator(1, -3);
  const Word q1 = substitute(q, {{0, Word::generator(0, -3)}});
  CHECK(q1 == Word::generator(0, -6) * Word::generator(1, -3));
  const Word q2 = substitute(q1, {{1, Word::generator(2) * Word::generator(0, -2)}});
  const Word expected = Word::generator(0, -4) * Word::generator(2, -1) * Word::generator(0, 2) *
                        Word::generator(2, -1) * Word::generator(0, 2) * Word::generator(2, -1);
  CHECK(q2 == expected);
  CHECK(substitute(q, {}) == q);
  CHECK_THROWS_AS(substitute(q, {{0, Word::generator(5)}}, 2), Error);

  std::mt19937 rng(11);
  const Letter alphabet[] = {a, A, b, B};
  const Substitution images{{0, Word{b, a}}, {1, Word{A, A, b}}};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Letter> r1(rng() % 10), r2(rng() % 10);
    for (Letter& l : r1) l = alphabet[rng() % 4];
    for (Letter& l : r2) l = alphabet[rng() % 4];
    const Word u(r1), v(r2);
    CHECK(substitute(u * v, images) == substitute(u, images) * substitute(v, images));
    CHECK(substitute(u.inverse(), images) == substitute(u, images).inverse());
  }
}

TEST_CASE("shortlex order and rotations") {
  CHECK(Word{a} < Word{A});
  CHECK(Word{A} < Word{b});
  CHECK(Word{b, b} > Word{B});
  CHECK(equal_as_cyclic_words(Word{a, b, A, B}, Word{A, B, a, b}));
  CHECK_FALSE(equal_as_cyclic_words(Word{a, b, A, B}, Word{a, B, A, b}));
  CHECK(least_rotation(Word{b, A, B, a}) == Word{a, b, A, B});
}

TEST_CASE("alphabet") {
  Alphabet x({"a", "b"});
  CHECK(x.find("b") == GenId{1});
  CHECK_FALSE(x.find("c"));
  CHECK(x.fresh_name("A") == "A");
  x.add("A");
  CHECK(x.fresh_name("A") == "A_1");
  CHECK_THROWS_AS(x.add("a"), Error);
  CHECK(is_valid_generator_name("b@-3"));
  CHECK(is_valid_generator_name("b@1@0"));
  CHECK_FALSE(is_valid_generator_name("b@"));
  CHECK_FALSE(is_valid_generator_name("1b"));
  CHECK(format_word(Word::generator(0, 2) * Word::generator(1, -3), x) == "a^2 b^-3");
  CHECK(format_word(Word{}, x) == "1");
}
