#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "parabolica/reflection_geometry.hpp"

using namespace parabolica;

namespace {

// Real value of an exact scalar; z = 2cos(pi/M).
double real_value(Scalar const& s) {
  double const z = 2 * std::cos(M_PI / s.field()->conductor());
  double acc = 0;
  double pw = 1;
  for (auto const& c : s.coefficients()) {
    acc += c.get_d() * pw;
    pw *= z;
  }
  if (s.field()->degree() == 1) return s.coefficients()[0].get_d();
  return acc;
}

// Elements fixing every vector of x, by scanning the whole group.
std::set<ElementId> pointwise_stabilizer(RootSystem const& rs, Subspace const& x) {
  std::set<ElementId> out;
  auto const mats = rs.all_element_matrices();
  for (ElementId w = 0; w < rs.W().size(); ++w) {
    bool fixes = true;
    for (auto const& b : x.basis()) fixes = fixes && apply_matrix(mats[w], b) == b;
    if (fixes) out.insert(w);
  }
  return out;
}

std::set<ElementId> generated_subgroup(CoxeterGroup const& w, std::vector<ElementId> const& gens) {
  std::set<ElementId> seen{CoxeterGroup::identity()};
  std::vector<ElementId> queue{CoxeterGroup::identity()};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (auto g : gens) {
      ElementId const x = w.multiply(queue[h], g);
      if (seen.insert(x).second) queue.push_back(x);
    }
  }
  return seen;
}

}  // namespace

TEST(RootSystem, RootCounts) {
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("A2"))->root_count(), 6u);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("A3"))->root_count(), 12u);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("B3"))->root_count(), 18u);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("H3"))->root_count(), 30u);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("D4"))->root_count(), 24u);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("F4"))->root_count(), 48u);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("H4"))->root_count(), 120u);
}

TEST(RootSystem, FieldsPerSystem) {
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("B3"))->field()->degree(), 1);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("G2"))->field()->degree(), 1);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("H3"))->field()->degree(), 2);
  EXPECT_EQ(make_root_system(CoxeterSystem::from_type("I2(7)"))->field()->degree(), 3);
}

TEST(RootSystem, PositiveRootsHaveSignCoherentCoordinates) {
  for (std::string label : {"A3", "B3", "H3", "D4", "F4", "H4", "I2(5)", "I2(8)", "G2"}) {
    auto rs = make_root_system(CoxeterSystem::from_type(label));
    for (auto const& r : rs->positive_roots()) {
      for (auto const& c : r) EXPECT_GE(real_value(c), -1e-12) << label;
    }
  }
}

TEST(RootSystem, ClosedUnderSimpleReflections) {
  for (std::string label : {"A3", "B3", "H3", "D4", "I2(7)"}) {
    auto rs = make_root_system(CoxeterSystem::from_type(label));
    auto const all = rs->all_roots();
    std::set<std::vector<std::string>> keys;
    auto key = [](Vector const& v) {
      std::vector<std::string> k;
      for (auto const& c : v) k.push_back(c.to_string());
      return k;
    };
    for (auto const& r : all) keys.insert(key(r));
    EXPECT_EQ(keys.size(), all.size());
    for (int s = 0; s < rs->rank(); ++s) {
      for (auto const& r : all) EXPECT_TRUE(keys.count(key(apply_matrix(rs->simple_reflection_matrix(s), r)))) << label;
      Vector neg = rs->simple_root(s);
      for (auto& c : neg) c = -c;
      EXPECT_EQ(apply_matrix(rs->simple_reflection_matrix(s), rs->simple_root(s)), neg);
    }
  }
}

TEST(RootSystem, GroupActionStability) {
  std::mt19937_64 rng(3);
  for (std::string label : {"A3", "B3", "H3", "D4"}) {
    auto rs = make_root_system(CoxeterSystem::from_type(label));
    auto const all = rs->all_roots();
    std::uniform_int_distribution<std::size_t> pick_w(0, rs->W().size() - 1);
    std::uniform_int_distribution<std::size_t> pick_r(0, all.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      auto const img = rs->act(static_cast<ElementId>(pick_w(rng)), all[pick_r(rng)]);
      EXPECT_NE(std::find(all.begin(), all.end(), img), all.end());
    }
  }
}

TEST(RootSystem, MatricesRealizeTheGroupFaithfully) {
  for (std::string label : {"A3", "B3", "H3", "D4", "I2(5)", "I2(7)"}) {
    auto rs = make_root_system(CoxeterSystem::from_type(label));
    auto const& w = rs->W();
    auto const mats = rs->all_element_matrices();
    auto const id = identity_matrix(rs->field(), rs->dim());
    std::set<std::vector<std::string>> distinct;
    for (ElementId x = 0; x < w.size(); ++x) {
      std::vector<std::string> k;
      for (auto const& row : mats[x]) {
        for (auto const& c : row) k.push_back(c.to_string());
      }
      distinct.insert(k);
      for (int s = 0; s < w.rank(); ++s) {
        EXPECT_EQ(multiply(mats[x], rs->simple_reflection_matrix(s)), mats[w.right(x, s)]);
      }
    }
    EXPECT_EQ(distinct.size(), w.size()) << label;
    for (int s = 0; s < w.rank(); ++s) {
      for (int t = 0; t < w.rank(); ++t) {
        // (s t) has order exactly m(s,t)
        Matrix const p = multiply(rs->simple_reflection_matrix(s), rs->simple_reflection_matrix(t));
        Matrix q = p;
        int order = 1;
        while (q != id) {
          q = multiply(q, p);
          ++order;
        }
        EXPECT_EQ(order, s == t ? 1 : w.system().m(s, t)) << label;
      }
    }
  }
}

TEST(RootSystem, ElementMatricesPreserveForm) {
  std::mt19937_64 rng(9);
  for (std::string label : {"A3", "B3", "H3", "D4", "A4"}) {
    auto rs = make_root_system(CoxeterSystem::from_type(label));
    std::uniform_int_distribution<std::size_t> pick(0, rs->W().size() - 1);
    for (int trial = 0; trial < 1000; ++trial) {
      Matrix const m = rs->element_matrix(static_cast<ElementId>(pick(rng)));
      EXPECT_EQ(multiply(multiply(transpose(m), rs->gram()), m), rs->gram()) << label;
    }
  }
  auto a2 = make_root_system(CoxeterSystem::from_type("A2"));
  Matrix const p = a2->element_matrix(a2->W().evaluate({0, 1}));
  auto const id = identity_matrix(a2->field(), 2);
  EXPECT_NE(p, id);
  EXPECT_NE(multiply(p, p), id);
  EXPECT_EQ(multiply(multiply(p, p), p), id);
  EXPECT_EQ(a2->element_matrix(CoxeterGroup::identity()), id);
}

TEST(RootSystem, ClassicalEmbeddingsAreIsometries) {
  for (auto [family, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'A', 4}, {'B', 3}, {'B', 4}, {'D', 4}, {'D', 5}}) {
    std::string const label = std::string(1, family) + std::to_string(n);
    auto rs = make_root_system(CoxeterSystem::from_type(label));
    auto const e = classical_embedding(family, n);
    // V^T V = c G for one rational c
    std::optional<mpq_class> ratio;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        long dotv = 0;
        for (std::size_t c = 0; c < e.coordinates; ++c) dotv += e.columns[static_cast<std::size_t>(i)][c] * e.columns[static_cast<std::size_t>(j)][c];
        mpq_class const g = rs->gram()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].coefficients()[0];
        if (g == 0) {
          EXPECT_EQ(dotv, 0) << label;
          continue;
        }
        mpq_class const r = mpq_class(dotv) / g;
        if (!ratio) ratio = r;
        EXPECT_EQ(r, *ratio) << label << " " << i << "," << j;
      }
    }
  }
}

TEST(Subspace, FixExamples) {
  auto rs = make_root_system(CoxeterSystem::from_type("A3"));
  auto const& w = rs->W();
  auto const s1 = w.evaluate({0});
  auto const s2 = w.evaluate({1});
  EXPECT_EQ(rs->fix({s1}).codimension(), 1u);
  EXPECT_EQ(rs->fix({s1}), rs->hyperplane(rs->root_index(s1)));
  std::vector<ElementId> all;
  for (ElementId x = 0; x < w.size(); ++x) all.push_back(x);
  EXPECT_EQ(rs->fix(all).dimension(), 0u);
  EXPECT_EQ(rs->fix({s1, s2}).codimension(), 2u);
  EXPECT_THROW(rs->fix({}), InvalidInput);
}

TEST(Subspace, GaloisExamples) {
  auto rs = make_root_system(CoxeterSystem::from_type("A3"));
  auto const& w = rs->W();
  EXPECT_TRUE(rs->galois_reflections(rs->whole_space()).empty());
  for (std::size_t r = 0; r < rs->positive_roots().size(); ++r) {
    EXPECT_EQ(rs->galois_reflections(rs->hyperplane(r)), std::vector<ElementId>{rs->reflection_of_root(r)});
  }
  auto const x = rs->fix({w.evaluate({0}), w.evaluate({1})});
  auto const gal = rs->galois_reflections(x);
  auto const generated = generated_subgroup(w, gal);
  EXPECT_EQ(generated.size(), 6u);
  EXPECT_EQ(generated, pointwise_stabilizer(*rs, x));
}

TEST(Subspace, CanonicalFormAndOperations) {
  auto rs = make_root_system(CoxeterSystem::from_type("B3"));
  auto const f = rs->field();
  auto const h0 = rs->hyperplane(0);
  auto const h1 = rs->hyperplane(1);
  auto const line = h0.intersect(h1);
  EXPECT_EQ(line.dimension(), 1u);
  EXPECT_TRUE(h0.contains(line));
  EXPECT_EQ(h0.sum(h1), rs->whole_space());
  Matrix scaled = h0.basis();
  for (auto& row : scaled) {
    for (auto& c : row) c = c * Scalar(f, 7L);
  }
  EXPECT_EQ(Subspace::span(scaled, 3, f), h0);
  EXPECT_EQ(Subspace::kernel(h0.equations(), 3, f), h0);
  for (auto const& row : h0.basis()) {
    auto it = std::find_if(row.begin(), row.end(), [](Scalar const& c) { return !c.is_zero(); });
    EXPECT_EQ(*it, Scalar(f, 1L));
  }
}
