#pragma once

#include <cstddef>
#include <vector>

#include "onerel/presentation.hpp"

namespace onerel {

inline constexpr std::size_t kDefaultTietzeBudget = 1000;

struct TietzeResult {
  Presentation presentation;
  // For every generator of the input, an equal word over the output alphabet.
  std::vector<Word> generator_images;
  // For every generator of the output, the input generator it came from.
  std::vector<GenId> surviving;
  std::size_t steps = 0;
  bool budget_exhausted = false;
};

// Conservative, terminating simplification. Moves: cyclically reduce a
// relator, drop a trivial or duplicate relator, and eliminate a generator
// that occurs exactly once in some relator (substituting its solution into
// everything else). Each move costs one step of the budget.
TietzeResult tietze_simplify(const Presentation& p, std::size_t budget = kDefaultTietzeBudget);

}  // namespace onerel
