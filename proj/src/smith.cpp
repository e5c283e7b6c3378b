#include "onerel/smith.hpp"

#include <utility>

namespace onerel {

namespace {

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// column b -= k * column a
void add_column_multiple(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& k) {
  for (auto& row : m) row[b] -= k * row[a];
}

void add_row_multiple(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& k) {
  for (std::size_t j = 0; j < m[a].size(); ++j) m[b][j] -= k * m[a][j];
}

}  // namespace

SmithForm smith_normal_form(IntMatrix m, std::size_t columns) {
  const std::size_t rows = m.size();
  IntMatrix v(columns, std::vector<BigInt>(columns, 0));
  for (std::size_t i = 0; i < columns; ++i) v[i][i] = 1;

  std::size_t t = 0;
  while (t < rows && t < columns) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    std::size_t pr = rows;
    std::size_t pc = columns;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < columns; ++j) {
        if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    swap_columns(m, t, pc);
    swap_columns(v, t, pc);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (m[i][t] == 0) continue;
      const BigInt q = m[i][t] / m[t][t];
      add_row_multiple(m, t, i, q);
      if (m[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < columns; ++j) {
      if (m[t][j] == 0) continue;
      const BigInt q = m[t][j] / m[t][t];
      add_column_multiple(m, t, j, q);
      add_column_multiple(v, t, j, q);
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder now exists; re-pivot

    // Divisibility: fold an offending row into row t and retry.
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i) {
      for (std::size_t j = t + 1; j < columns; ++j) {
        if (m[i][j] % m[t][t] != 0) {
          add_row_multiple(m, i, t, BigInt(-1));
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;

    if (m[t][t] < 0) {
      for (auto& x : m[t]) x = -x;
    }
    ++t;
  }

  SmithForm out;
  out.columns = columns;
  for (std::size_t i = 0; i < t; ++i) out.factors.push_back(m[i][i]);
  out.column_transform = std::move(v);
  return out;
}

}  // namespace onerel
