#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "parabolica/number_field.hpp"

namespace parabolica {

using Vector = std::vector<Scalar>;
using Matrix = std::vector<Vector>;  // row-major

inline Vector zero_vector(FieldPtr const& f, std::size_t n) { return Vector(n, Scalar(f, 0L)); }

inline Matrix identity_matrix(FieldPtr const& f, std::size_t n) {
  Matrix m(n, zero_vector(f, n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar(f, 1L);
  return m;
}

inline Matrix multiply(Matrix const& a, Matrix const& b) {
  std::size_t const rows = a.size();
  std::size_t const inner = b.size();
  std::size_t const cols = b.empty() ? 0 : b[0].size();
  FieldPtr const& f = a[0][0].field();
  Matrix r(rows, zero_vector(f, cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return r;
}

inline Vector apply_matrix(Matrix const& a, Vector const& x) {
  Vector r = zero_vector(x[0].field(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!a[i][k].is_zero() && !x[k].is_zero()) r[i] += a[i][k] * x[k];
    }
  }
  return r;
}

inline Matrix transpose(Matrix const& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), Vector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

// Bilinear form x^T G y.
inline Scalar bilinear(Matrix const& gram, Vector const& x, Vector const& y) {
  Scalar acc(x[0].field(), 0L);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!y[j].is_zero() && !gram[i][j].is_zero()) acc += x[i] * gram[i][j] * y[j];
    }
  }
  return acc;
}

// In-place reduced row echelon form; zero rows are dropped and the pivot
// columns are returned.
inline std::vector<std::size_t> rref(Matrix& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    Scalar const inv = rows[r][c].inverse();
    for (std::size_t k = c; k < ncols; ++k) {
      if (!rows[r][k].is_zero()) rows[r][k] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar const f = rows[i][c];
      for (std::size_t k = c; k < ncols; ++k) {
        if (!rows[r][k].is_zero()) rows[i][k] -= f * rows[r][k];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline std::size_t rank(Matrix rows, std::size_t ncols) { return rref(rows, ncols).size(); }

// Basis of {x : A x = 0}, one vector per free column.
inline Matrix nullspace(Matrix rows, std::size_t ncols, FieldPtr const& f) {
  auto const pivots = rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(f, ncols);
    v[free] = Scalar(f, 1L);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace parabolica
