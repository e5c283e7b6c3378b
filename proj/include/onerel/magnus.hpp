#pragma once

// Magnus rewriting of one-relator presentations.
//
// A normalized relator R = Q^s is classified as
//   Base   if |Q| = 1,
//   Case 1 if some generator occurring in Q has exponent sum zero
//          (rewrite over the kernel of the exponent-sum map, with
//          subscripted conjugates y@k = x0^k y x0^-k), or
//   Case 2 otherwise (substitute x0 -> A^q, x1 -> B A^-p so that A gets
//          exponent sum zero, which makes the next level a Case 1 in A).
// Every rewriting acts on the root Q and keeps the multiplicity s.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "onerel/error.hpp"
#include "onerel/presentation.hpp"

namespace onerel {

struct BaseCase {
  GenId generator = 0;
  int sign = 1;  // Q = generator^sign
  long s = 1;
};

struct Case1Tag {
  GenId generator = 0;
};

struct Case2Tag {
  GenId x0 = 0;
  GenId x1 = 0;
  long p = 0;  // exponent sum of x0 in Q
  long q = 0;  // exponent sum of x1 in Q
};

using CaseTag = std::variant<BaseCase, Case1Tag, Case2Tag>;

std::string case_name(const CaseTag& tag);

// Least-index choices; Throws NotOneRelator / TrivialRelator.
CaseTag classify_case(const Presentation& p);

struct SubscriptedGenerator {
  GenId original = 0;
  long subscript = 0;

  auto operator<=>(const SubscriptedGenerator&) const = default;
};

struct Case1Result {
  // Subscripted generators occurring in Q', sorted by (subscript, original).
  std::vector<SubscriptedGenerator> generators;
  Alphabet alphabet;  // names "y@k", parallel to `generators`
  Word rewritten;     // Q' over `alphabet`
  long u = 0;         // smallest subscript occurring
  long v = 0;         // largest subscript occurring
  long s = 1;
};

// Throws NonzeroExponentSum if x0 has nonzero exponent sum in Q.
Case1Result rewrite_case1(const Presentation& p, GenId x0);
// Realizes the covering projection: (y,k)^e -> x0^k y^e x0^-k.
Word expand_case1(const Case1Result& r, GenId x0);

// P' = < y@k : y != x0, u <= k <= v ; Q'^s >. The second member lists the
// generators of P' that do not occur in Q' (free factors).
std::pair<Presentation, std::vector<std::string>> case1_child(const Presentation& p, GenId x0,
                                                             const Case1Result& r);

struct Case2Result {
  Alphabet prime_alphabet;  // X' = X with x0 renamed A
  Alphabet alphabet;        // X'' = X' with x1 renamed B
  GenId a = 0;              // index of A (== x0)
  GenId b = 0;              // index of B (== x1)
  long p = 0;
  long q = 0;
  Word q_prime;         // Q[x0 := A^q] over X'
  Word q_double_prime;  // cyclically reduced Q'[x1 := B A^-p] over X''
  Word conjugator;      // Q'[x1 := B A^-p] == conjugator * Q'' * conjugator^-1
  long s = 1;
  bool q_prime_primitive = true;
  bool q_double_prime_primitive = true;

  Word substitution_1() const { return Word::generator(a).pow(q); }
  Word substitution_2() const { return Word::generator(b) * Word::generator(a).pow(-p); }
  // Word-problem transport of a word over X to X'' (both substitutions).
  Word transport(const Word& w) const;
};

// Throws ZeroExponentSum when either exponent sum vanishes.
Case2Result rewrite_case2(const Presentation& p, GenId x0, GenId x1);

struct MagnusNode {
  Presentation presentation;
  NormalizedRelator relator;
  CaseTag tag;
  std::optional<Case1Result> case1;
  std::optional<Case2Result> case2;
  std::vector<std::string> free_factors;
  std::vector<std::size_t> children;
  std::size_t depth = 0;   // induction level: Case 1 rewritings above this node
  std::size_t height = 0;  // edges from the root
};

struct MagnusHierarchy {
  std::vector<MagnusNode> nodes;  // nodes[0] is the root

  // Induction depth: a Case 2 substitution and the Case 1 rewriting of its
  // child are one length-decreasing step, so only Case 1 edges count.
  std::size_t depth() const;
  // Plain tree height, counting every edge.
  std::size_t height() const;
  bool leaves_are_base() const;
};

class DepthLimitExceeded : public Error {
 public:
  DepthLimitExceeded(std::size_t limit, MagnusHierarchy partial);
  const MagnusHierarchy& partial() const { return partial_; }

 private:
  MagnusHierarchy partial_;
};

inline constexpr std::size_t kDefaultDepthLimit = 64;

MagnusHierarchy build_hierarchy(const Presentation& p, std::size_t depth_limit = kDefaultDepthLimit);

nlohmann::json to_json(const MagnusHierarchy& h);
std::string to_dot(const MagnusHierarchy& h);
std::string to_text(const MagnusHierarchy& h);

}  // namespace onerel
