#pragma once

// Exact geometric realization of a finite Coxeter group in the basis of
// simple roots: reflection matrices, positive roots, subspaces, Fix and Gal.
//
// Roots are rescaled so every Gram entry lies in the smallest field that
// contains 2cos(pi/m) for the non-crystallographic labels only; bonds with
// m = 4 or 6 are absorbed into root lengths.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parabolica/coxeter_group.hpp"
#include "parabolica/linear_algebra.hpp"
#include "parabolica/number_field.hpp"

namespace parabolica {

inline int lexicographic_compare(Vector const& a, Vector const& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int const c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

// A linear subspace of the ambient space, stored by its reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(Matrix rows, std::size_t ambient, FieldPtr const& field) {
    Subspace x;
    x.ambient_ = ambient;
    x.field_ = field;
    rref(rows, ambient);
    x.basis_ = std::move(rows);
    return x;
  }

  // {x : a . x = 0 for every row a}
  static Subspace kernel(Matrix const& equations, std::size_t ambient, FieldPtr const& field) {
    if (equations.empty()) return whole(ambient, field);
    return span(nullspace(equations, ambient, field), ambient, field);
  }

  static Subspace whole(std::size_t ambient, FieldPtr const& field) {
    return span(identity_matrix(field, ambient), ambient, field);
  }
  static Subspace zero(std::size_t ambient, FieldPtr const& field) { return span({}, ambient, field); }

  std::size_t ambient_dimension() const { return ambient_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t codimension() const { return ambient_ - basis_.size(); }
  Matrix const& basis() const { return basis_; }
  FieldPtr const& field() const { return field_; }

  // Rows a with a . x = 0 on the subspace; a basis of the annihilator.
  Matrix equations() const {
    if (basis_.empty()) return identity_matrix(field_, ambient_);
    Matrix eq = nullspace(basis_, ambient_, field_);
    rref(eq, ambient_);
    return eq;
  }

  bool contains(Vector const& v) const {
    Matrix rows = basis_;
    rows.push_back(v);
    return rank(std::move(rows), ambient_) == basis_.size();
  }

  bool contains(Subspace const& other) const {
    Matrix rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return rank(std::move(rows), ambient_) == basis_.size();
  }

  Subspace intersect(Subspace const& other) const {
    Matrix eq = equations();
    Matrix const more = other.equations();
    eq.insert(eq.end(), more.begin(), more.end());
    return kernel(eq, ambient_, field_);
  }

  Subspace sum(Subspace const& other) const {
    Matrix rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return span(std::move(rows), ambient_, field_);
  }

  friend bool operator==(Subspace const& a, Subspace const& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(Subspace const& a, Subspace const& b) { return !(a == b); }

  // Canonical order: dimension, then lexicographic on the basis.
  friend bool operator<(Subspace const& a, Subspace const& b) {
    if (a.basis_.size() != b.basis_.size()) return a.basis_.size() < b.basis_.size();
    for (std::size_t i = 0; i < a.basis_.size(); ++i) {
      int const c = lexicographic_compare(a.basis_[i], b.basis_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

 private:
  std::size_t ambient_ = 0;
  FieldPtr field_;
  Matrix basis_;
};

class RootSystem {
 public:
  explicit RootSystem(GroupPtr group) : group_(std::move(group)) {
    build_field_and_gram();
    build_simple_reflections();
    build_roots();
  }

  GroupPtr const& group() const { return group_; }
  CoxeterGroup const& W() const { return *group_; }
  int rank() const { return group_->rank(); }
  std::size_t dim() const { return static_cast<std::size_t>(group_->rank()); }
  FieldPtr const& field() const { return field_; }
  Matrix const& gram() const { return gram_; }
  std::vector<Scalar> const& squared_lengths() const { return lengths_; }

  // Positive roots, one per reflection, in the order of W().reflections().
  Matrix const& positive_roots() const { return roots_; }
  std::size_t root_count() const { return 2 * roots_.size(); }
  Matrix all_roots() const {
    Matrix out = roots_;
    for (auto const& r : roots_) {
      Vector neg = r;
      for (auto& c : neg) c = -c;
      out.push_back(std::move(neg));
    }
    return out;
  }
  Vector const& simple_root(int i) const { return roots_[simple_index_[static_cast<std::size_t>(i)]]; }

  // Index into positive_roots() of the root of reflection t.
  std::size_t root_index(ElementId reflection) const {
    auto it = reflection_index_.find(reflection);
    if (it == reflection_index_.end()) throw InvalidInput("element is not a reflection");
    return it->second;
  }
  Vector const& root_of(ElementId reflection) const { return roots_[root_index(reflection)]; }
  ElementId reflection_of_root(std::size_t index) const { return W().reflections()[index]; }

  // The covector G alpha: H_alpha = {x : covector . x = 0}.
  Vector const& covector(std::size_t root) const { return covectors_[root]; }

  Matrix const& simple_reflection_matrix(int s) const { return simple_[static_cast<std::size_t>(s)]; }

  Matrix element_matrix(ElementId w) const {
    Matrix m = identity_matrix(field_, dim());
    for (auto s : W().word(w)) m = multiply(m, simple_[s]);
    return m;
  }

  // Matrices of every element, indexed by ElementId.
  std::vector<Matrix> all_element_matrices() const {
    std::vector<Matrix> out(W().size());
    out[0] = identity_matrix(field_, dim());
    for (ElementId w = 1; w < W().size(); ++w) {
      Word const wd = W().word(w);
      ElementId const parent = W().right(w, wd.back());
      out[w] = multiply(out[parent], simple_[wd.back()]);
    }
    return out;
  }

  Vector act(ElementId w, Vector v) const {
    Word const wd = W().word(w);
    for (std::size_t i = wd.size(); i-- > 0;) v = apply_matrix(simple_[wd[i]], v);
    return v;
  }

  Subspace act(ElementId w, Subspace const& x) const {
    Matrix rows;
    for (auto const& b : x.basis()) rows.push_back(act(w, b));
    return Subspace::span(std::move(rows), dim(), field_);
  }

  Subspace fix(std::vector<ElementId> const& generators) const {
    if (generators.empty()) throw InvalidInput("fix_subspace needs at least one generator");
    Matrix rows;
    for (auto w : generators) {
      Matrix m = element_matrix(w);
      for (std::size_t i = 0; i < dim(); ++i) {
        m[i][i] -= Scalar(field_, 1L);
        rows.push_back(std::move(m[i]));
      }
    }
    return Subspace::kernel(rows, dim(), field_);
  }

  Subspace hyperplane(std::size_t root) const {
    return Subspace::kernel(Matrix(1, covectors_[root]), dim(), field_);
  }

  // Reflections fixing x pointwise, ascending by ElementId.
  std::vector<ElementId> galois_reflections(Subspace const& x) const {
    std::vector<ElementId> out;
    for (std::size_t r = 0; r < roots_.size(); ++r) {
      bool orthogonal = true;
      for (auto const& b : x.basis()) {
        if (!dot(covectors_[r], b).is_zero()) {
          orthogonal = false;
          break;
        }
      }
      if (orthogonal) out.push_back(reflection_of_root(r));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Scalar form(Vector const& x, Vector const& y) const { return bilinear(gram_, x, y); }

  Subspace whole_space() const { return Subspace::whole(dim(), field_); }

  static Scalar dot(Vector const& a, Vector const& b) {
    Scalar acc(a[0].field(), 0L);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
    }
    return acc;
  }

 private:
  void build_field_and_gram() {
    auto const& sys = W().system();
    std::size_t const n = dim();
    int big = 1;
    auto crystallographic = [](int m) { return m == 2 || m == 3 || m == 4 || m == 6; };
    for (int i = 0; i < rank(); ++i) {
      for (int j = i + 1; j < rank(); ++j) {
        int const m = sys.m(i, j);
        if (!crystallographic(m)) big = std::lcm(big, m);
      }
    }
    field_ = big <= 3 ? NumberField::rationals() : NumberField::two_cos_pi_over(big);

    std::vector<long> len(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
      if (len[start] != 0) continue;
      len[start] = 1;
      std::vector<std::size_t> queue{start};
      for (std::size_t h = 0; h < queue.size(); ++h) {
        std::size_t const i = queue[h];
        for (std::size_t j = 0; j < n; ++j) {
          int const m = sys.m(static_cast<int>(i), static_cast<int>(j));
          if (j == i || m == 2 || len[j] != 0) continue;
          len[j] = m == 4 ? 2 * len[i] : m == 6 ? 3 * len[i] : len[i];
          queue.push_back(j);
        }
      }
    }
    gram_ = Matrix(n, zero_vector(field_, n));
    lengths_.clear();
    for (std::size_t i = 0; i < n; ++i) lengths_.emplace_back(field_, len[i]);
    for (std::size_t i = 0; i < n; ++i) {
      gram_[i][i] = lengths_[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        int const m = sys.m(static_cast<int>(i), static_cast<int>(j));
        long const short_len = std::min(len[i], len[j]);
        Scalar v(field_, 0L);
        switch (m) {
          case 2: break;
          case 3: v = Scalar(field_, mpq_class(-short_len, 2)); break;
          case 4: v = Scalar(field_, -short_len); break;
          case 6: v = Scalar(field_, mpq_class(-3 * short_len, 2)); break;
          default:
            v = Scalar(field_, mpq_class(-short_len, 2)) * two_cos_pi_over(field_, m);
            break;
        }
        gram_[i][j] = v;
      }
    }
  }

  void build_simple_reflections() {
    std::size_t const n = dim();
    simple_.clear();
    for (std::size_t i = 0; i < n; ++i) {
      Matrix m = identity_matrix(field_, n);
      Scalar const two_over(field_, mpq_class(2) / lengths_[i].coefficients()[0]);
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= two_over * gram_[i][j];
      simple_.push_back(std::move(m));
    }
  }

  void build_roots() {
    auto const& refl = W().reflections();
    std::map<ElementId, std::size_t> position;
    for (std::size_t i = 0; i < refl.size(); ++i) position[refl[i]] = i;
    roots_.assign(refl.size(), Vector{});
    std::vector<bool> seen(refl.size(), false);
    std::vector<std::size_t> queue;
    simple_index_.assign(dim(), 0);
    for (int s = 0; s < rank(); ++s) {
      ElementId const t = W().right(CoxeterGroup::identity(), s);
      std::size_t const idx = position.at(t);
      Vector e = zero_vector(field_, dim());
      e[static_cast<std::size_t>(s)] = Scalar(field_, 1L);
      roots_[idx] = e;
      seen[idx] = true;
      simple_index_[static_cast<std::size_t>(s)] = idx;
      queue.push_back(idx);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::size_t const r = queue[h];
      ElementId const t = refl[r];
      for (int s = 0; s < rank(); ++s) {
        ElementId const conj = W().right(W().left(s, t), s);
        if (conj == t) continue;  // s alpha = -alpha or alpha orthogonal and fixed
        std::size_t const idx = position.at(conj);
        if (seen[idx]) continue;
        seen[idx] = true;
        roots_[idx] = apply_matrix(simple_[static_cast<std::size_t>(s)], roots_[r]);
        queue.push_back(idx);
      }
    }
    if (queue.size() != refl.size()) throw Error("root closure did not reach every reflection");
    for (std::size_t i = 0; i < refl.size(); ++i) reflection_index_[refl[i]] = i;
    covectors_.clear();
    for (auto const& r : roots_) covectors_.push_back(apply_matrix(gram_, r));
  }

  GroupPtr group_;
  FieldPtr field_;
  Matrix gram_;
  std::vector<Scalar> lengths_;
  std::vector<Matrix> simple_;
  Matrix roots_;
  Matrix covectors_;
  std::vector<std::size_t> simple_index_;
  std::map<ElementId, std::size_t> reflection_index_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

inline RootSystemPtr make_root_system(CoxeterSystem sys) {
  return std::make_shared<const RootSystem>(make_group(std::move(sys)));
}

// Coordinates of the simple roots of the standard A_n, B_n, D_n realizations
// in R^N, as an N x n matrix V with the simple root i in column i. Coordinate
// equations r . y = 0 on R^N pull back to the covector r^T V.
struct ClassicalEmbedding {
  char family;
  int rank;
  std::size_t coordinates;
  std::vector<std::vector<long>> columns;  // columns[i] = simple root i in R^N

  Vector pull_back(FieldPtr const& f, std::vector<long> const& row) const {
    Vector out = zero_vector(f, static_cast<std::size_t>(rank));
    for (std::size_t i = 0; i < columns.size(); ++i) {
      long acc = 0;
      for (std::size_t c = 0; c < coordinates; ++c) acc += row[c] * columns[i][c];
      out[i] = Scalar(f, acc);
    }
    return out;
  }
};

inline ClassicalEmbedding classical_embedding(char family, int n) {
  ClassicalEmbedding e{family, n, 0, {}};
  auto unit = [&](std::size_t size, std::size_t a, long va, std::optional<std::size_t> b = {}, long vb = 0) {
    std::vector<long> v(size, 0);
    v[a] = va;
    if (b) v[*b] = vb;
    return v;
  };
  auto const un = static_cast<std::size_t>(n);
  switch (family) {
    case 'A':
      e.coordinates = un + 1;
      for (std::size_t i = 0; i < un; ++i) e.columns.push_back(unit(un + 1, i, 1, i + 1, -1));
      break;
    case 'B':
      e.coordinates = un;
      e.columns.push_back(unit(un, 0, 1));
      for (std::size_t i = 1; i < un; ++i) e.columns.push_back(unit(un, i, 1, i - 1, -1));
      break;
    case 'D':
      e.coordinates = un;
      for (std::size_t i = 0; i + 1 < un; ++i) e.columns.push_back(unit(un, i, 1, i + 1, -1));
      e.columns.push_back(unit(un, un - 2, 1, un - 1, 1));
      break;
    default:
      throw InvalidInput(std::string("no coordinate realization for family ") + family);
  }
  return e;
}

}  // namespace parabolica
