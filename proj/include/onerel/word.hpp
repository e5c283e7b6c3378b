#pragma once

// Free-group words over a finite, dense generator alphabet.
//
// A Word is always freely reduced: every constructor and every arithmetic
// operation cancels adjacent x x^-1 pairs. Generators are small integer ids;
// display names live in an Alphabet so intermediate alphabets created by the
// rewriting recursion reuse the same machinery.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace onerel {

using GenId = std::uint32_t;

// Signed generator occurrence, stored as a nonzero integer code:
// +(gen+1) for gen, -(gen+1) for gen^-1.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(GenId gen, int sign)
      : code_(sign > 0 ? static_cast<int>(gen) + 1 : -(static_cast<int>(gen) + 1)) {}

  static constexpr Letter from_code(int code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr GenId gen() const { return static_cast<GenId>((code_ > 0 ? code_ : -code_) - 1); }
  constexpr int sign() const { return code_ > 0 ? 1 : -1; }
  constexpr int code() const { return code_; }
  constexpr Letter inverse() const { return from_code(-code_); }
  constexpr bool cancels(Letter other) const { return code_ == -other.code_; }

  // Shortlex letter order: x0 < x0^-1 < x1 < x1^-1 < ...
  constexpr unsigned order_key() const { return 2 * gen() + (code_ < 0 ? 1u : 0u); }

  constexpr bool operator==(const Letter&) const = default;

 private:
  int code_ = 1;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> raw);
  Word(std::initializer_list<Letter> raw);

  static Word generator(GenId g, int power = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word pow(long n) const;
  // Cyclic rotation by k letters to the left; the result is freely reduced,
  // so rotating a word that is not cyclically reduced may shorten it.
  Word rotated(std::size_t k) const;
  Word subword(std::size_t pos, std::size_t len) const;

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  bool operator==(const Word&) const = default;
  // Shortlex order (length first, then letter order_key).
  std::strong_ordering operator<=>(const Word& rhs) const;

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

Word free_reduce(std::span<const Letter> raw);

struct CyclicReduction {
  Word core;
  Word conjugator;  // input == conjugator * core * conjugator^-1
};

bool is_cyclically_reduced(const Word& w);
CyclicReduction cyclic_reduce(const Word& w);

long exponent_sum(const Word& w, GenId g);
std::size_t occurrences(const Word& w, GenId g);
std::set<GenId> support(const Word& w);

struct PrimitiveRoot {
  Word root;
  long power = 1;
};

// w == root^power literally, with power maximal. Throws EmptyWord.
PrimitiveRoot primitive_root(const Word& w);

using Substitution = std::map<GenId, Word>;

// Homomorphic image; generators without an entry map to themselves. When
// target_rank is given, every generator of the result must be below it.
Word substitute(const Word& w, const Substitution& images,
                std::optional<std::size_t> target_rank = std::nullopt);

// Equality up to cyclic rotation (words are compared literally).
bool equal_as_cyclic_words(const Word& a, const Word& b);

// Least rotation in shortlex order; canonical representative of a cyclic
// word. Expects a cyclically reduced word.
Word least_rotation(const Word& w);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  GenId add(std::string name);
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(GenId g) const { return names_.at(g); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<GenId> find(std::string_view name) const;
  // `stem` if unused, otherwise stem_1, stem_2, ...
  std::string fresh_name(std::string_view stem) const;

  bool operator==(const Alphabet& rhs) const { return names_ == rhs.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, GenId> index_;
};

bool is_valid_generator_name(std::string_view name);

// "a^2 b^-3"; the empty word prints as "1".
std::string format_word(const Word& w, const Alphabet& alphabet);

}  // namespace onerel
