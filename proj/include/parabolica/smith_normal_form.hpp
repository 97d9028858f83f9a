#pragma once

// Invariant factors of integer matrices. Unit pivots are eliminated first on
// machine integers (boundary matrices are mostly +-1); whatever survives is
// finished with a dense Smith reduction over GMP integers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <utility>
#include <vector>

#include "parabolica/error.hpp"

namespace parabolica {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct SmithResult {
  std::size_t rank = 0;
  std::vector<mpz_class> invariant_factors;  // nonzero diagonal, ascending divisibility

  // Invariant factors > 1.
  std::vector<mpz_class> torsion() const {
    std::vector<mpz_class> out;
    for (auto const& d : invariant_factors) {
      if (d > 1) out.push_back(d);
    }
    return out;
  }
};

namespace detail {

inline std::int64_t checked_sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
    throw Error("integer overflow during Smith reduction");
  }
  return out;
}

inline SmithResult dense_smith(std::vector<std::vector<mpz_class>> m) {
  SmithResult res;
  std::size_t const rows = m.size();
  std::size_t const cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry as pivot
    std::size_t pr = rows;
    std::size_t pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // the pivot must divide the rest of the block
        for (std::size_t i = t + 1; i < rows && clean; ++i) {
          for (std::size_t j = t + 1; j < cols && clean; ++j) {
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
            }
          }
        }
      }
    }
    res.invariant_factors.push_back(abs(m[t][t]));
    ++t;
  }
  res.rank = res.invariant_factors.size();
  return res;
}

}  // namespace detail

inline SmithResult smith_normal_form(IntMatrix m, std::size_t cols) {
  std::size_t units = 0;
  std::vector<bool> row_alive(m.size(), true);
  std::vector<bool> col_alive(cols, true);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (!row_alive[r]) continue;
      std::size_t pc = cols;
      for (std::size_t c = 0; c < cols; ++c) {
        if (col_alive[c] && (m[r][c] == 1 || m[r][c] == -1)) {
          pc = c;
          break;
        }
      }
      if (pc == cols) continue;
      std::int64_t const p = m[r][pc];
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r || !row_alive[i] || m[i][pc] == 0) continue;
        std::int64_t const f = m[i][pc] * p;  // p = +-1, so p^-1 = p
        for (std::size_t c = 0; c < cols; ++c) {
          if (col_alive[c] && m[r][c] != 0) m[i][c] = detail::checked_sub_mul(m[i][c], f, m[r][c]);
        }
      }
      row_alive[r] = false;
      col_alive[pc] = false;
      ++units;
      progress = true;
    }
  }
  std::vector<std::vector<mpz_class>> rest;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (!row_alive[r]) continue;
    std::vector<mpz_class> row;
    bool nonzero = false;
    for (std::size_t c = 0; c < cols; ++c) {
      if (!col_alive[c]) continue;
      row.emplace_back(static_cast<long>(m[r][c]));
      nonzero = nonzero || m[r][c] != 0;
    }
    if (nonzero) rest.push_back(std::move(row));
  }
  SmithResult tail = detail::dense_smith(std::move(rest));
  SmithResult res;
  res.invariant_factors.assign(units, mpz_class(1));
  std::sort(tail.invariant_factors.begin(), tail.invariant_factors.end());
  res.invariant_factors.insert(res.invariant_factors.end(), tail.invariant_factors.begin(),
                               tail.invariant_factors.end());
  res.rank = res.invariant_factors.size();
  return res;
}

}  // namespace parabolica
