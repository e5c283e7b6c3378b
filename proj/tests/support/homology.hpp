#pragma once

// Rational Betti numbers from incidence matrices, by exact Gaussian
// elimination over Q. Independent of the library's Smith normal form.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <map>
#include <vector>

#include "onerel/cw_complex.hpp"

namespace testsupport {

using Rational = boost::multiprecision::cpp_rational;

inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline std::array<long, 3> betti_numbers(const onerel::CWComplex2& c) {
  std::map<onerel::CellId, std::size_t> vi, ei;
  for (onerel::CellId v : c.vertices()) vi.emplace(v, vi.size());
  for (const auto& [id, e] : c.edges()) ei.emplace(id, ei.size());

  std::vector<std::vector<Rational>> d1(ei.size(), std::vector<Rational>(vi.size(), 0));
  for (const auto& [id, e] : c.edges()) {
    d1[ei[id]][vi[e.head]] += 1;
    d1[ei[id]][vi[e.tail]] -= 1;
  }
  std::vector<std::vector<Rational>> d2(c.faces().size(), std::vector<Rational>(ei.size(), 0));
  std::size_t row = 0;
  for (const auto& [id, f] : c.faces()) {
    for (const auto& oe : f.boundary) d2[row][ei[oe.edge]] += oe.sign;
    ++row;
  }
  const long r1 = static_cast<long>(rational_rank(d1));
  const long r2 = static_cast<long>(rational_rank(d2));
  const long v = static_cast<long>(vi.size());
  const long e = static_cast<long>(ei.size());
  const long f = static_cast<long>(c.faces().size());
  return {v - r1, e - r1 - r2, f - r2};
}

}  // namespace testsupport
