#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "onerel/smith.hpp"
#include "onerel/word.hpp"

namespace onerel {

// Finite presentation <X ; R>. Relators are kept freely reduced.
// The alphabet may be empty only for presentations built programmatically
// (trivial stages of a tower); the text parser requires a generator.
struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;

  bool one_relator() const { return relators.size() == 1; }
  std::size_t rank() const { return alphabet.size(); }
};

// Grammar:  '<' names (',' names)* (';' | '|') [word (',' word)*] '>'
// A word is a juxtaposition of factors `name`, `name^k`, `(word)^k`, or `1`.
// Runs of identifier characters are split by longest match against the
// declared generators, so "aba^-1b^-1" reads as a b a^-1 b^-1.
Presentation parse_presentation(std::string_view text);
Word parse_word(std::string_view text, const Alphabet& alphabet);

std::string format_presentation(const Presentation& p);

nlohmann::json to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

struct NormalizedRelator {
  Word core;        // cyclically reduced
  Word root;        // primitive: core == root^power
  long power = 1;   // the multiplicity s
  Word conjugator;  // relator == conjugator * core * conjugator^-1
};

// Throws NotOneRelator, TrivialRelator.
NormalizedRelator normalize_relator(const Presentation& p);

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // each >= 2, each divides the next

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const AbelianInvariants&) const = default;
};

// Exponent-sum matrix: one row per word, one column per generator.
IntMatrix exponent_matrix(const std::vector<Word>& words, std::size_t rank);
AbelianInvariants invariants_of(const IntMatrix& relations, std::size_t rank);
AbelianInvariants abelian_invariants(const Presentation& p);
std::string format_invariants(const AbelianInvariants& inv);

// Canonical images of words in the abelianization Z^r + sum Z/d_i.
class AbelianMap {
 public:
  explicit AbelianMap(const Presentation& p);

  // Coordinates: torsion parts reduced into [0, d), then the free part.
  std::vector<BigInt> image(const Word& w) const;
  const AbelianInvariants& invariants() const { return invariants_; }

 private:
  std::size_t rank_ = 0;
  std::vector<BigInt> factors_;  // per-coordinate modulus, 0 for free
  std::vector<std::size_t> kept_;
  IntMatrix transform_;
  AbelianInvariants invariants_;
};

}  // namespace onerel
