#pragma once

// Exact integer matrix diagonalization.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace onerel {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct SmithForm {
  // Nonzero invariant factors d_0 | d_1 | ... (all positive).
  std::vector<BigInt> factors;
  std::size_t columns = 0;
  // Unimodular V (columns x columns) with U * M * V = diag(factors).
  IntMatrix column_transform;
};

// `columns` is needed when the matrix has no rows.
SmithForm smith_normal_form(IntMatrix m, std::size_t columns);

}  // namespace onerel
