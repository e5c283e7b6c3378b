#pragma once

// Bounded word problem and finite windows onto the universal cover.
//
// WordOracle answers equality queries with certified Yes/No or Unknown.
// No comes from the abelianization, from permutation quotients, from a
// confluent rewriting system, or from Dehn's algorithm under C'(1/6).
// Yes comes from rewriting to the empty word, from Dehn's algorithm, from
// abelian mode (every generator commutator certified trivial), or from a
// relator-insertion search whose insertion sequence is returned.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "onerel/cw_complex.hpp"
#include "onerel/presentation.hpp"
#include "onerel/verdict.hpp"

namespace onerel {

inline constexpr std::size_t kDefaultMaxStates = 1'000'000;
inline constexpr std::size_t kDefaultMaxRules = 400;

struct OracleMethods {
  bool abelian_filter = true;
  bool finite_quotients = true;
  bool rewriting = true;
  bool dehn = true;
  bool search = true;
};

struct OracleBudget {
  // Longest intermediate word in the insertion search; defaults to
  // 4 |R| + 2 |query| with |R| the longest relator.
  std::optional<std::size_t> max_length;
  std::size_t max_states = kDefaultMaxStates;
  std::size_t max_rules = kDefaultMaxRules;
  OracleMethods methods;
  std::uint64_t seed = 1;  // permutation quotient sampling
};

enum class Method { FreeReduction, Abelianization, Quotient, Rewriting, Dehn, AbelianMode, Search, None };

std::string to_string(Method m);

// One step of a Yes certificate: insert `relator` (an element of the
// symmetrized relator set) before letter `position`, then free-reduce.
struct InsertionStep {
  std::size_t position = 0;
  Word relator;
};

struct Decision {
  Verdict verdict = Verdict::Unknown;
  Method method = Method::None;
  std::vector<InsertionStep> insertions;  // filled by the search
};

// Homomorphism to a symmetric group; perms act on 0..degree-1.
struct PermutationRep {
  std::size_t degree = 0;
  std::vector<std::vector<std::uint8_t>> images;  // per generator
};

class WordOracle {
 public:
  explicit WordOracle(const Presentation& p, OracleBudget budget = {});
  ~WordOracle();
  WordOracle(WordOracle&&) noexcept;
  WordOracle& operator=(WordOracle&&) noexcept;

  Decision decide_trivial(const Word& w) const;
  Decision decide_equal(const Word& a, const Word& b) const;

  // Exact canonical form when available (confluent rewriting or abelian
  // mode); equal keys iff equal elements.
  std::optional<std::vector<std::int64_t>> canonical_key(const Word& w) const;
  // Normal form under the rewriting rules found so far; equal results
  // certify equal elements.
  Word rewrite(const Word& w) const;
  // Invariant under equality: abelian image and permutation images.
  std::vector<std::int64_t> signature(const Word& w) const;

  bool exact() const;
  bool confluent() const;
  bool abelian() const;
  bool small_cancellation() const;
  std::size_t rule_count() const;
  const std::vector<PermutationRep>& quotients() const;
  const Presentation& presentation() const;
  // Symmetrized relator set: cyclic conjugates of every relator core and
  // its inverse, without repeats.
  const std::vector<Word>& symmetrized() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Verdict equal_in_group(const Presentation& p, const Word& w1, const Word& w2, const OracleBudget& budget = {});

// True iff every piece of the symmetrized relator has length below
// (num/den) |R|. Pieces are common prefixes of two cyclic conjugates of R
// or R^-1 taken at distinct positions. Throws NotOneRelator.
bool smallcancel_check(const Presentation& p, long num = 1, long den = 6);

struct BallEdge {
  CellId id = 0;
  CellId tail = 0;  // vertex ids are index + 1
  CellId head = 0;
  GenId generator = 0;
};

struct Ball {
  Presentation presentation;
  std::size_t radius = 0;
  std::vector<Word> vertices;  // shortlex representatives, index = id - 1
  std::vector<std::size_t> distance;
  std::vector<BallEdge> edges;  // v -> v g for every generator g
  bool complete = true;
  std::size_t unresolved = 0;  // Unknown equality outcomes
  bool stabilized = false;     // no element lies outside the ball

  std::size_t sphere_size(std::size_t d) const;
};

Ball cayley_ball(const Presentation& p, std::size_t r, const OracleBudget& budget = {});

enum class FaceConvention {
  OnePerCycle,  // one face per closed relator cycle
  DiskLifts,    // s faces per cycle for a relator Q^s
};

CWComplex2 complex_ball(const Ball& ball, FaceConvention convention = FaceConvention::OnePerCycle);
CWComplex2 complex_ball(const Presentation& p, std::size_t r, const OracleBudget& budget = {},
                        FaceConvention convention = FaceConvention::OnePerCycle);

enum class ProbeOutcome { ForestConfirmed, CycleFound, Unknown };

std::string to_string(ProbeOutcome o);

struct ProbeResult {
  ProbeOutcome outcome = ProbeOutcome::Unknown;
  std::vector<CellId> witness;  // edge ids of a cycle when one was found
  std::size_t vertices = 0;
  std::size_t edges = 0;  // subset-labelled edges examined
  bool ball_complete = true;
};

// Throws SubsetCoversRelator when the subset contains every generator of R.
ProbeResult freiheitssatz_probe(const Presentation& p, const std::set<GenId>& subset, std::size_t r,
                                const OracleBudget& budget = {});
// Same scan on a prebuilt ball; preconditions are the caller's.
ProbeResult freiheitssatz_probe(const Ball& ball, const std::set<GenId>& subset);

enum class EndsClass { Zero, One, Two, Many, Inconclusive };

std::string to_string(EndsClass e);

struct EndsReading {
  std::size_t r_inner = 0;
  std::size_t components = 0;
};

struct EndsEstimate {
  EndsClass classification = EndsClass::Inconclusive;
  std::vector<EndsReading> readings;
  std::size_t r_outer = 0;
  bool complete = true;
  bool stabilized = false;
  std::string note;
};

// One ball of radius r_outer; for each i in [r_inner, r_outer), count the
// components of the annulus of distances [i, r_outer] that reach the outer
// sphere. The last three readings decide: all 1, all 2, or strictly
// increasing. Throws InvalidArgument unless r_outer > r_inner >= 1.
EndsEstimate count_ends(const Presentation& p, std::size_t r_inner, std::size_t r_outer,
                        const OracleBudget& budget = {});

nlohmann::json to_json(const Ball& ball);
nlohmann::json to_json(const EndsEstimate& e);
nlohmann::json to_json(const ProbeResult& r);
// Edges coloured by generator.
std::string to_dot(const Ball& ball);

}  // namespace onerel
