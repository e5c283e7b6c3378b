#include "onerel/tietze.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace onerel {

namespace {

// Canonical key of a relator up to cyclic rotation and inversion.
Word cyclic_class_key(const Word& w) {
  const Word a = least_rotation(w);
  const Word b = least_rotation(w.inverse());
  return std::min(a, b);
}

}  // namespace

TietzeResult tietze_simplify(const Presentation& p, std::size_t budget) {
  const std::size_t rank = p.rank();
  std::vector<bool> alive(rank, true);
  std::vector<Word> images;
  images.reserve(rank);
  for (GenId g = 0; g < rank; ++g) images.push_back(Word::generator(g));
  std::vector<Word> relators = p.relators;

  TietzeResult result;
  auto spend = [&]() {
    if (result.steps >= budget) {
      result.budget_exhausted = true;
      return false;
    }
    ++result.steps;
    return true;
  };

  bool progress = true;
  while (progress) {
    progress = false;

    // Reduce, drop trivial and duplicate relators.
    std::vector<Word> kept;
    std::vector<Word> keys;
    bool stop = false;
    for (Word& r : relators) {
      if (stop) {
        kept.push_back(std::move(r));
        continue;
      }
      if (!is_cyclically_reduced(r)) {
        if (!spend()) {
          stop = true;
          kept.push_back(std::move(r));
          continue;
        }
        r = cyclic_reduce(r).core;
        progress = true;
      }
      if (r.empty()) {
        if (!spend()) {
          stop = true;
          kept.push_back(std::move(r));
          continue;
        }
        progress = true;
        continue;
      }
      Word key = cyclic_class_key(r);
      if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
        if (!spend()) {
          stop = true;
          kept.push_back(std::move(r));
          continue;
        }
        progress = true;
        continue;
      }
      keys.push_back(std::move(key));
      kept.push_back(std::move(r));
    }
    relators = std::move(kept);
    if (stop) break;

    // Eliminate a generator occurring exactly once in the shortest such relator.
    std::optional<std::size_t> best_rel;
    GenId best_gen = 0;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (relators[i].size() >= best_len) continue;
      for (GenId g : support(relators[i])) {
        if (occurrences(relators[i], g) == 1) {
          best_rel = i;
          best_gen = g;
          best_len = relators[i].size();
          break;
        }
      }
    }
    if (!best_rel) break;
    if (!spend()) break;

    const Word& r = relators[*best_rel];
    std::size_t at = 0;
    while (r[at].gen() != best_gen) ++at;
    const int sign = r[at].sign();
    // r rotated to g^sign * rest, so g^sign = rest^-1.
    const Word rest = r.rotated(at).subword(1, r.size() - 1);
    const Word solution = sign > 0 ? rest.inverse() : rest;
    Substitution sub{{best_gen, solution}};

    relators.erase(relators.begin() + static_cast<long>(*best_rel));
    for (Word& other : relators) other = substitute(other, sub);
    for (Word& image : images) image = substitute(image, sub);
    alive[best_gen] = false;
    progress = true;
  }

  // Compact the surviving generators.
  std::vector<GenId> renumber(rank, 0);
  for (GenId g = 0; g < rank; ++g) {
    if (!alive[g]) continue;
    renumber[g] = static_cast<GenId>(result.surviving.size());
    result.surviving.push_back(g);
    result.presentation.alphabet.add(p.alphabet.name(g));
  }
  Substitution compact;
  for (GenId g = 0; g < rank; ++g) {
    if (alive[g]) compact.emplace(g, Word::generator(renumber[g]));
  }
  for (const Word& r : relators) result.presentation.relators.push_back(substitute(r, compact));
  for (const Word& image : images) result.generator_images.push_back(substitute(image, compact));
  return result;
}

}  // namespace onerel
