#pragma once

// Parabolic subgroups, k-parabolic arrangements, coordinate reference
// arrangements, and intersection lattices.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parabolica/reflection_geometry.hpp"

namespace parabolica {

struct ParabolicSubgroup {
  std::vector<ElementId> reflections;    // ascending
  std::vector<ElementId> simple_system;  // ascending
  CoxeterMatrix diagram;                 // indexed like simple_system
  std::string type_label;
  bool irreducible = false;
  ElementId witness_w = 0;
  std::uint64_t witness_subset = 0;  // bitmask of I

  int rank() const { return static_cast<int>(simple_system.size()); }
};

// Conjugation action of W on its reflections through a table of s t s.
class ReflectionAction {
 public:
  explicit ReflectionAction(CoxeterGroup const& w) : w_(&w) {
    auto const& refl = w.reflections();
    for (std::size_t i = 0; i < refl.size(); ++i) index_[refl[i]] = i;
    table_.assign(static_cast<std::size_t>(w.rank()), std::vector<std::size_t>(refl.size()));
    for (int s = 0; s < w.rank(); ++s) {
      for (std::size_t i = 0; i < refl.size(); ++i) {
        table_[static_cast<std::size_t>(s)][i] = index_.at(w.right(w.left(s, refl[i]), s));
      }
    }
  }

  std::size_t index(ElementId t) const { return index_.at(t); }
  ElementId reflection(std::size_t i) const { return w_->reflections()[i]; }

  // w t w^-1 as a reflection index
  std::size_t conjugate(ElementId w, std::size_t t) const {
    Word const wd = w_->word(w);
    for (std::size_t i = wd.size(); i-- > 0;) t = table_[wd[i]][t];
    return t;
  }

 private:
  CoxeterGroup const* w_;
  std::map<ElementId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> table_;
};

// Multiplicative order of x.
inline int element_order(CoxeterGroup const& w, ElementId x) {
  int k = 1;
  ElementId p = x;
  while (p != CoxeterGroup::identity()) {
    p = w.multiply(p, x);
    ++k;
  }
  return k;
}

// Simple system of the reflection subgroup spanned by a set of reflections
// (closed under conjugation within itself): t is simple iff it sends exactly
// one positive root of the subsystem to a negative root. The root of u is
// sent to a negative root by t iff l(t u) < l(t).
inline std::vector<ElementId> simple_system_of(CoxeterGroup const& w, std::vector<ElementId> const& refl) {
  std::vector<ElementId> simple;
  for (ElementId t : refl) {
    int negated = 0;
    for (ElementId u : refl) {
      if (w.length(w.multiply(t, u)) < w.length(t)) ++negated;
      if (negated > 1) break;
    }
    if (negated == 1) simple.push_back(t);
  }
  return simple;
}

inline CoxeterMatrix diagram_of(CoxeterGroup const& w, std::vector<ElementId> const& simple) {
  std::size_t const r = simple.size();
  CoxeterMatrix m(r, std::vector<int>(r, 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      int const o = element_order(w, w.multiply(simple[i], simple[j]));
      m[i][j] = m[j][i] = o;
    }
  }
  return m;
}

inline ParabolicSubgroup describe_reflection_subgroup(CoxeterGroup const& w, std::vector<ElementId> refl) {
  ParabolicSubgroup p;
  std::sort(refl.begin(), refl.end());
  p.reflections = std::move(refl);
  p.simple_system = simple_system_of(w, p.reflections);
  if (p.simple_system.empty()) {
    p.type_label = "trivial";
    p.irreducible = false;
    return p;
  }
  p.diagram = diagram_of(w, p.simple_system);
  auto const sys = CoxeterSystem::from_matrix(p.diagram);
  p.type_label = sys.classification();
  p.irreducible = sys.is_irreducible();
  return p;
}

// Every parabolic subgroup of rank r, sorted by reflection set.
inline std::vector<ParabolicSubgroup> enumerate_parabolics(CoxeterGroup const& w, int r) {
  int const n = w.rank();
  if (r < 1 || r > n) {
    throw InvalidInput("parabolic rank " + std::to_string(r) + " outside 1.." + std::to_string(n));
  }
  ReflectionAction const act(w);
  auto const& refl = w.reflections();
  std::map<std::vector<ElementId>, std::pair<ElementId, std::uint64_t>> found;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
    if (std::popcount(subset) != r) continue;
    std::vector<std::size_t> standard;
    for (std::size_t i = 0; i < refl.size(); ++i) {
      if ((w.support(refl[i]) & ~subset) == 0) standard.push_back(i);
    }
    for (ElementId x = 0; x < w.size(); ++x) {
      std::vector<ElementId> conj;
      conj.reserve(standard.size());
      for (auto i : standard) conj.push_back(act.reflection(act.conjugate(x, i)));
      std::sort(conj.begin(), conj.end());
      found.emplace(std::move(conj), std::make_pair(x, subset));
    }
  }
  std::vector<ParabolicSubgroup> out;
  for (auto& [set, witness] : found) {
    auto p = describe_reflection_subgroup(w, set);
    p.witness_w = witness.first;
    p.witness_subset = witness.second;
    out.push_back(std::move(p));
  }
  return out;
}

struct Arrangement {
  std::string label;
  std::size_t ambient = 0;
  std::vector<Subspace> subspaces;         // canonical order, distinct
  std::vector<std::string> origin_types;   // parallel to subspaces; empty strings for coordinate families

  std::size_t size() const { return subspaces.size(); }
  bool contains(Subspace const& x) const {
    return std::binary_search(subspaces.begin(), subspaces.end(), x);
  }
};

inline Arrangement make_arrangement(std::string label, std::size_t ambient,
                                    std::vector<std::pair<Subspace, std::string>> items) {
  std::sort(items.begin(), items.end(), [](auto const& a, auto const& b) {
    if (a.first < b.first) return true;
    if (b.first < a.first) return false;
    return a.second < b.second;
  });
  Arrangement a;
  a.label = std::move(label);
  a.ambient = ambient;
  for (auto& [x, t] : items) {
    if (!a.subspaces.empty() && a.subspaces.back() == x) continue;
    a.subspaces.push_back(std::move(x));
    a.origin_types.push_back(std::move(t));
  }
  return a;
}

// First pair (i, j) with subspace i properly contained in subspace j.
inline std::optional<std::pair<std::size_t, std::size_t>> proper_containment(Arrangement const& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j && a.subspaces[j].dimension() > a.subspaces[i].dimension() &&
          a.subspaces[j].contains(a.subspaces[i])) {
        return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

inline Subspace fix_of(RootSystem const& rs, ParabolicSubgroup const& g) { return rs.fix(g.simple_system); }

inline Arrangement build_k_parabolic(RootSystem const& rs, int k) {
  int const n = rs.rank();
  if (k < 2 || k > n + 1) {
    throw InvalidInput("k = " + std::to_string(k) + " outside 2.." + std::to_string(n + 1));
  }
  if (k == n + 1 && !rs.W().system().is_irreducible()) {
    throw InvalidInput("k = n+1 needs an irreducible group");
  }
  std::vector<std::pair<Subspace, std::string>> items;
  for (auto const& g : enumerate_parabolics(rs.W(), k - 1)) {
    if (!g.irreducible) continue;
    items.emplace_back(fix_of(rs, g), g.type_label);
  }
  return make_arrangement("k-parabolic(k=" + std::to_string(k) + ")", rs.dim(), std::move(items));
}

// Parabolics of rank r whose type label starts with the given family letter.
inline Arrangement build_typed_arrangement(RootSystem const& rs, std::vector<std::pair<char, int>> const& families,
                                           std::string label) {
  std::vector<std::pair<Subspace, std::string>> items;
  for (auto [family, r] : families) {
    if (r < 1 || r > rs.rank()) throw InvalidInput("typed arrangement rank out of range");
    for (auto const& g : enumerate_parabolics(rs.W(), r)) {
      if (g.irreducible && g.type_label[0] == family) items.emplace_back(fix_of(rs, g), g.type_label);
    }
  }
  return make_arrangement(std::move(label), rs.dim(), std::move(items));
}

namespace detail {

inline void for_each_subset(int n, int k, auto&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline char family_of(RootSystem const& rs) {
  auto const& label = rs.W().system().type_label();
  if (!label || label->find('x') != std::string::npos || label->size() < 2 || label->find('(') != std::string::npos) {
    throw InvalidInput("coordinate arrangements need a standard A_n, B_n or D_n system");
  }
  char const f = (*label)[0];
  if (f != 'A' && f != 'B' && f != 'D') {
    throw InvalidInput("coordinate arrangements need a standard A_n, B_n or D_n system");
  }
  return f;
}

inline Subspace coordinate_subspace(RootSystem const& rs, ClassicalEmbedding const& e,
                                    std::vector<std::vector<long>> const& rows) {
  Matrix eq;
  for (auto const& r : rows) eq.push_back(e.pull_back(rs.field(), r));
  return Subspace::kernel(eq, rs.dim(), rs.field());
}

}  // namespace detail

// x_{i1} = ... = x_{ik} over (k)-subsets of the n+1 coordinates of A_n.
inline Arrangement build_k_equal(RootSystem const& rs, int k) {
  if (detail::family_of(rs) != 'A') throw InvalidInput("the k-equal arrangement needs type A");
  auto const e = classical_embedding('A', rs.rank());
  int const coords = static_cast<int>(e.coordinates);
  if (k < 2 || k > coords) throw InvalidInput("k out of range for the k-equal arrangement");
  std::vector<std::pair<Subspace, std::string>> items;
  detail::for_each_subset(coords, k, [&](std::vector<int> const& idx) {
    std::vector<std::vector<long>> rows;
    for (std::size_t j = 1; j < idx.size(); ++j) {
      std::vector<long> r(e.coordinates, 0);
      r[static_cast<std::size_t>(idx[0])] = 1;
      r[static_cast<std::size_t>(idx[j])] = -1;
      rows.push_back(std::move(r));
    }
    items.emplace_back(detail::coordinate_subspace(rs, e, rows), "");
  });
  return make_arrangement("k-equal(k=" + std::to_string(k) + ")", rs.dim(), std::move(items));
}

// +-x_{i1} = ... = +-x_{ik}; with h > 0 also x_{i1} = ... = x_{ih} = 0.
inline Arrangement build_signed_arrangement(RootSystem const& rs, int k, int h) {
  char const fam = detail::family_of(rs);
  if (fam != 'B' && fam != 'D') throw InvalidInput("signed coordinate arrangements need type B or D");
  auto const e = classical_embedding(fam, rs.rank());
  int const n = rs.rank();
  if (k < 2 || k > n) throw InvalidInput("k out of range for the signed arrangement");
  if (h != 0 && (h < 1 || h >= k)) throw InvalidInput("h must satisfy 1 <= h < k");
  std::vector<std::pair<Subspace, std::string>> items;
  detail::for_each_subset(n, k, [&](std::vector<int> const& idx) {
    for (std::uint32_t signs = 0; signs < (1u << (k - 1)); ++signs) {
      std::vector<std::vector<long>> rows;
      for (std::size_t j = 1; j < idx.size(); ++j) {
        std::vector<long> r(e.coordinates, 0);
        r[static_cast<std::size_t>(idx[0])] = 1;
        r[static_cast<std::size_t>(idx[j])] = ((signs >> (j - 1)) & 1u) ? 1 : -1;
        rows.push_back(std::move(r));
      }
      items.emplace_back(detail::coordinate_subspace(rs, e, rows), "");
    }
  });
  if (h > 0) {
    detail::for_each_subset(n, h, [&](std::vector<int> const& idx) {
      std::vector<std::vector<long>> rows;
      for (int i : idx) {
        std::vector<long> r(e.coordinates, 0);
        r[static_cast<std::size_t>(i)] = 1;
        rows.push_back(std::move(r));
      }
      items.emplace_back(detail::coordinate_subspace(rs, e, rows), "");
    });
  }
  std::string label = h > 0 ? "B(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",h=" + std::to_string(h) + ")"
                            : "D(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
  return make_arrangement(std::move(label), rs.dim(), std::move(items));
}

inline Arrangement build_d_arrangement(RootSystem const& rs, int k) { return build_signed_arrangement(rs, k, 0); }
inline Arrangement build_b_arrangement(RootSystem const& rs, int k, int h) {
  if (h < 1 || h >= k) throw InvalidInput("h must satisfy 1 <= h < k");
  return build_signed_arrangement(rs, k, h);
}

// The subspace x_{i1} = ... = x_{ij} = 0 (indices 0-based) of a B/D system.
inline Subspace coordinate_zero_subspace(RootSystem const& rs, std::vector<int> const& indices) {
  char const fam = detail::family_of(rs);
  auto const e = classical_embedding(fam, rs.rank());
  std::vector<std::vector<long>> rows;
  for (int i : indices) {
    std::vector<long> r(e.coordinates, 0);
    r[static_cast<std::size_t>(i)] = 1;
    rows.push_back(std::move(r));
  }
  return detail::coordinate_subspace(rs, e, rows);
}

struct ArrangementComparison {
  bool equal = true;
  std::optional<Subspace> witness;
  bool witness_in_first = false;
};

inline ArrangementComparison compare_arrangements(Arrangement const& a, Arrangement const& b) {
  if (a.ambient != b.ambient) {
    throw InvalidInput("arrangements live in spaces of dimension " + std::to_string(a.ambient) + " and " +
                       std::to_string(b.ambient));
  }
  ArrangementComparison c;
  for (auto const& x : a.subspaces) {
    if (!b.contains(x)) return {false, x, true};
  }
  for (auto const& x : b.subspaces) {
    if (!a.contains(x)) return {false, x, false};
  }
  return c;
}

// Equations of a subspace written in the coordinates of the classical
// realization, e.g. "x1 = 0, x2 = 0, x3 = 0"; row reduced over Q.
inline std::vector<std::string> coordinate_equations(RootSystem const& rs, Subspace const& x) {
  char const fam = detail::family_of(rs);
  auto const e = classical_embedding(fam, rs.rank());
  auto const& f = rs.field();
  // Image of the subspace in R^N, then its annihilator there.
  Matrix image;
  for (auto const& b : x.basis()) {
    Vector y = zero_vector(f, e.coordinates);
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t c = 0; c < e.coordinates; ++c) {
        if (e.columns[i][c] != 0) y[c] += b[i] * Scalar(f, e.columns[i][c]);
      }
    }
    image.push_back(std::move(y));
  }
  // for type A the all-ones direction is not part of the realization
  if (fam == 'A') image.push_back(Vector(e.coordinates, Scalar(f, 1L)));
  Matrix ann = image.empty() ? identity_matrix(f, e.coordinates) : nullspace(image, e.coordinates, f);
  rref(ann, e.coordinates);
  std::vector<std::string> out;
  for (auto const& row : ann) {
    std::string lhs;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c].is_zero()) continue;
      std::string coef = row[c].to_string();
      bool neg = !coef.empty() && coef[0] == '-';
      if (neg) coef = coef.substr(1);
      if (lhs.empty()) lhs += neg ? "-" : "";
      else lhs += neg ? " - " : " + ";
      if (coef != "1") lhs += coef + "*";
      lhs += "x" + std::to_string(c + 1);
    }
    out.push_back(lhs + " = 0");
  }
  return out;
}

struct IntersectionLattice {
  std::vector<Subspace> elements;  // index 0 is the ambient space (bottom)
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper) in reverse inclusion

  std::size_t size() const { return elements.size(); }
  std::size_t index_of(Subspace const& x) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] == x) return i;
    }
    return elements.size();
  }
  // x <= y iff x contains y
  bool leq(std::size_t x, std::size_t y) const { return elements[x].contains(elements[y]); }
};

inline IntersectionLattice intersection_lattice(Arrangement const& a) {
  if (a.subspaces.empty()) throw InvalidInput("intersection lattice of an empty arrangement");
  auto const& f = a.subspaces.front().field();
  std::set<Subspace> all(a.subspaces.begin(), a.subspaces.end());
  std::vector<Subspace> frontier(a.subspaces.begin(), a.subspaces.end());
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (auto const& x : frontier) {
      for (auto const& atom : a.subspaces) {
        Subspace y = x.intersect(atom);
        if (all.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  IntersectionLattice lat;
  lat.elements.push_back(Subspace::whole(a.ambient, f));
  std::vector<Subspace> rest(all.begin(), all.end());
  // descending dimension
  std::stable_sort(rest.begin(), rest.end(),
                   [](Subspace const& x, Subspace const& y) { return x.dimension() > y.dimension(); });
  for (auto& x : rest) {
    if (x != lat.elements.front()) lat.elements.push_back(std::move(x));
  }
  std::size_t const m = lat.elements.size();
  std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));  // i < j strictly
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      below[i][j] = i != j && lat.elements[i].dimension() > lat.elements[j].dimension() &&
                    lat.elements[i].contains(lat.elements[j]);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!below[i][j]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < m && cover; ++c) cover = !(below[i][c] && below[c][j]);
      if (cover) lat.covers.emplace_back(i, j);
    }
  }
  return lat;
}

struct OrbitCheck {
  bool pass = true;
  std::optional<std::pair<ElementId, std::size_t>> witness;  // (w, index of X)
};

// w X in A for all X in A: every generator, then every element when
// |W| <= sample_limit or a deterministic spread of sample_limit elements.
inline OrbitCheck orbit_invariance_check(RootSystem const& rs, Arrangement const& a, std::size_t sample_limit = 200) {
  auto const& w = rs.W();
  std::vector<ElementId> elems;
  for (int s = 0; s < w.rank(); ++s) elems.push_back(w.right(CoxeterGroup::identity(), s));
  if (w.size() <= sample_limit) {
    for (ElementId x = 0; x < w.size(); ++x) elems.push_back(x);
  } else {
    for (std::size_t i = 0; i < sample_limit; ++i) elems.push_back(static_cast<ElementId>((i * w.size()) / sample_limit));
  }
  for (auto x : elems) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a.contains(rs.act(x, a.subspaces[i]))) return {false, std::make_pair(x, i)};
    }
  }
  return {};
}

}  // namespace parabolica
