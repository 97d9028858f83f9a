#pragma once

// Exact arithmetic in the real cyclotomic fields Q(2cos(pi/M)).
//
// Elements are stored as coefficient vectors over Q in the power basis
// 1, z, z^2, ... where z = 2cos(pi/M). The minimal polynomial of z is derived
// exactly from the cyclotomic polynomial of order 2M, so nothing here ever
// touches floating point.

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parabolica/error.hpp"

namespace parabolica {

namespace detail {

using IntPoly = std::vector<mpz_class>;  // low degree first

inline void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials, divisor monic.
inline IntPoly divide_exact(IntPoly num, IntPoly const& den) {
  std::size_t const dn = den.size() - 1;
  if (num.size() < den.size()) throw Error("divide_exact: degree");
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    mpz_class const c = num[i];
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (auto const& r : num) {
    if (r != 0) throw Error("divide_exact: nonzero remainder");
  }
  return quot;
}

inline IntPoly cyclotomic(int n) {
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic(d));
  }
  return p;
}

// Minimal polynomial of 2cos(2*pi/n) for n >= 3, obtained from the
// palindromic cyclotomic polynomial via x = z + 1/z.
inline IntPoly real_cyclotomic(int n) {
  IntPoly const phi = cyclotomic(n);
  std::size_t const d = (phi.size() - 1) / 2;
  // C_j(x) = z^j + z^-j
  std::vector<IntPoly> cheb{{2}, {0, 1}};
  for (std::size_t j = 2; j <= d; ++j) {
    IntPoly next(j + 1, 0);
    for (std::size_t i = 0; i < cheb[j - 1].size(); ++i) next[i + 1] += cheb[j - 1][i];
    for (std::size_t i = 0; i < cheb[j - 2].size(); ++i) next[i] -= cheb[j - 2][i];
    cheb.push_back(std::move(next));
  }
  IntPoly psi(d + 1, 0);
  psi[0] = phi[d];
  for (std::size_t j = 1; j <= d; ++j) {
    for (std::size_t i = 0; i < cheb[j].size(); ++i) psi[i] += phi[d + j] * cheb[j][i];
  }
  trim(psi);
  return psi;
}

}  // namespace detail

class NumberField {
 public:
  // Q(2cos(pi/m)); m = 2 and m = 3 both give Q.
  static std::shared_ptr<const NumberField> two_cos_pi_over(int m) {
    if (m < 2) throw InvalidInput("number field conductor must be >= 2");
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->conductor_ = m;
    f->minpoly_ = detail::real_cyclotomic(2 * m);
    return f;
  }

  static std::shared_ptr<const NumberField> rationals() { return two_cos_pi_over(3); }

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  int conductor() const { return conductor_; }
  detail::IntPoly const& minimal_polynomial() const { return minpoly_; }

  std::string generator_name() const {
    return "2cos(pi/" + std::to_string(conductor_) + ")";
  }

  std::string polynomial_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = minpoly_.size(); i-- > 0;) {
      mpz_class const& c = minpoly_[i];
      if (c == 0) continue;
      mpz_class a = abs(c);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      if (a != 1 || i == 0) os << a.get_str();
      if (i > 0) os << (a != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
      first = false;
    }
    return os.str();
  }

  bool same_as(NumberField const& other) const { return minpoly_ == other.minpoly_; }

 private:
  NumberField() = default;
  int conductor_ = 3;
  detail::IntPoly minpoly_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class Scalar {
 public:
  Scalar() = default;
  Scalar(FieldPtr field, mpq_class const& value) : field_(std::move(field)) {
    coeffs_.assign(static_cast<std::size_t>(field_->degree()), mpq_class(0));
    coeffs_[0] = value;
    coeffs_[0].canonicalize();
  }
  Scalar(FieldPtr field, long value) : Scalar(std::move(field), mpq_class(value)) {}

  static Scalar generator(FieldPtr const& field) {
    Scalar s(field, 0L);
    if (field->degree() == 1) {
      // z is rational: root of the linear minimal polynomial x + c0
      s.coeffs_[0] = mpq_class(-field->minimal_polynomial()[0]);
    } else {
      s.coeffs_[1] = 1;
    }
    return s;
  }

  FieldPtr const& field() const { return field_; }
  std::vector<mpq_class> const& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (auto const& c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return false;
    }
    return true;
  }

  Scalar& operator+=(Scalar const& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Scalar& operator-=(Scalar const& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Scalar operator-() const {
    Scalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Scalar operator+(Scalar a, Scalar const& b) { return a += b; }
  friend Scalar operator-(Scalar a, Scalar const& b) { return a -= b; }

  friend Scalar operator*(Scalar const& a, Scalar const& b) {
    std::size_t const d = a.coeffs_.size();
    if (d == 1) {
      Scalar r = a;
      r.coeffs_[0] *= b.coeffs_[0];
      return r;
    }
    std::vector<mpq_class> prod(2 * d - 1, mpq_class(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    auto const& p = a.field_->minimal_polynomial();  // monic, degree d
    for (std::size_t i = prod.size(); i-- > d;) {
      mpq_class const c = prod[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i - d + j] -= c * mpq_class(p[j]);
      prod[i] = 0;
    }
    Scalar r = a;
    for (std::size_t i = 0; i < d; ++i) r.coeffs_[i] = prod[i];
    return r;
  }
  Scalar& operator*=(Scalar const& o) { return *this = *this * o; }

  Scalar inverse() const {
    if (is_zero()) throw Error("division by zero in number field");
    std::size_t const d = coeffs_.size();
    if (d == 1) {
      Scalar r = *this;
      r.coeffs_[0] = 1 / coeffs_[0];
      return r;
    }
    // Solve (multiplication-by-this) * b = e_0 over Q.
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1, mpq_class(0)));
    Scalar basis(field_, 1L);
    Scalar const z = generator(field_);
    for (std::size_t j = 0; j < d; ++j) {
      Scalar col = *this * basis;
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
      basis = basis * z;
    }
    m[0][d] = 1;
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t piv = c;
      while (m[piv][c] == 0) ++piv;
      std::swap(m[piv], m[c]);
      mpq_class const inv = 1 / m[c][c];
      for (auto& v : m[c]) v *= inv;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == c || m[r][c] == 0) continue;
        mpq_class const f = m[r][c];
        for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
      }
    }
    Scalar r(field_, 0L);
    for (std::size_t i = 0; i < d; ++i) r.coeffs_[i] = m[i][d];
    return r;
  }
  friend Scalar operator/(Scalar const& a, Scalar const& b) { return a * b.inverse(); }

  friend bool operator==(Scalar const& a, Scalar const& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(Scalar const& a, Scalar const& b) { return !(a == b); }

  // Total order on coefficient vectors, used only for canonical sorting.
  friend int compare(Scalar const& a, Scalar const& b) {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      int const c = cmp(a.coeffs_[i], b.coeffs_[i]);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
  }

  // "a0 + a1*z + ..." with exact rationals; z is the field generator.
  std::string to_string() const {
    if (coeffs_.size() == 1) return coeffs_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      mpq_class a = abs(coeffs_[i]);
      if (!first) os << (coeffs_[i] < 0 ? " - " : " + ");
      else if (coeffs_[i] < 0) os << "-";
      if (i == 0) os << a.get_str();
      else {
        if (a != 1) os << a.get_str() << "*";
        os << "z" << (i > 1 ? "^" + std::to_string(i) : "");
      }
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  FieldPtr field_;
  std::vector<mpq_class> coeffs_;
};

// 2cos(pi/m) inside a field whose conductor is a multiple of m.
inline Scalar two_cos_pi_over(FieldPtr const& field, int m) {
  if (m == 2) return Scalar(field, 0L);
  if (m == 3) return Scalar(field, 1L);
  int const big = field->conductor();
  if (big % m != 0) {
    throw Error("2cos(pi/" + std::to_string(m) + ") does not lie in Q(" +
                field->generator_name() + ")");
  }
  // 2cos(j*theta) = C_j(2cos(theta)), C_0 = 2, C_1 = x, C_{j+1} = x C_j - C_{j-1}
  int const j = big / m;
  Scalar const z = Scalar::generator(field);
  Scalar prev(field, 2L);
  Scalar cur = z;
  if (j == 0) return prev;
  for (int i = 1; i < j; ++i) {
    Scalar next = z * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace parabolica
