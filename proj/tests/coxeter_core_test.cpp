#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "parabolica/coxeter_group.hpp"

using namespace parabolica;

TEST(CoxeterSystem, StandardMatrices) {
  auto a3 = CoxeterSystem::from_type("A3");
  EXPECT_EQ(a3.matrix(), (CoxeterMatrix{{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}));
  auto b3 = CoxeterSystem::from_type("B3");
  EXPECT_EQ(b3.m(0, 1), 4);
  EXPECT_EQ(b3.m(1, 2), 3);
  EXPECT_EQ(b3.m(0, 2), 2);
  EXPECT_EQ(b3.generator_names(), (std::vector<std::string>{"s0", "s1", "s2"}));
  EXPECT_EQ(a3.generator_names(), (std::vector<std::string>{"s1", "s2", "s3"}));
  auto rank1 = CoxeterSystem::from_matrix({{1}});
  EXPECT_TRUE(rank1.is_finite());
  EXPECT_EQ(CoxeterGroup(rank1).size(), 2u);
}

TEST(CoxeterSystem, RejectsInvalidMatrices) {
  EXPECT_THROW(CoxeterSystem::from_matrix({{1, 3}, {2, 1}}), InvalidInput);
  EXPECT_THROW(CoxeterSystem::from_matrix({{2, 3}, {3, 1}}), InvalidInput);
  EXPECT_THROW(CoxeterSystem::from_matrix({{1, 1}, {1, 1}}), InvalidInput);
  EXPECT_THROW(CoxeterSystem::from_type("Q7"), InvalidInput);
  EXPECT_THROW(CoxeterSystem::from_type("E9"), InvalidInput);
  try {
    CoxeterSystem::from_matrix({{1, 3, 2}, {3, 1, 3}, {2, 4, 1}});
    FAIL();
  } catch (InvalidInput const& e) {
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos);
  }
}

TEST(CoxeterSystem, Classification) {
  auto cls = [](CoxeterMatrix m) { return classify(m); };
  EXPECT_EQ(cls({{1, 3}, {3, 1}}), "A2");
  EXPECT_EQ(cls({{1, 5, 2}, {5, 1, 3}, {2, 3, 1}}), "H3");
  EXPECT_EQ(cls({{1, 3, 2}, {3, 1, 5}, {2, 5, 1}}), "H3");
  EXPECT_EQ(cls({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}), "infinite");
  EXPECT_EQ(cls({{1, 0}, {0, 1}}), "infinite");
  EXPECT_EQ(cls({{1, 2}, {2, 1}}), "A1xA1");
  EXPECT_EQ(cls({{1, 4, 2}, {4, 1, 4}, {2, 4, 1}}), "infinite");
  for (std::string label : {"A1", "A4", "B3", "B5", "D4", "D5", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)"}) {
    auto sys = CoxeterSystem::from_type(label);
    EXPECT_EQ(sys.classification(), label);
    EXPECT_EQ(sys.type_label().value(), label);
    EXPECT_TRUE(sys.is_irreducible());
  }
  EXPECT_EQ(CoxeterSystem::from_type("G2").classification(), "I2(6)");
  EXPECT_EQ(CoxeterSystem::from_type("A2xB2").classification(), "A2xB2");
  auto permuted = CoxeterSystem::from_matrix({{1, 2, 3}, {2, 1, 3}, {3, 3, 1}});
  EXPECT_EQ(permuted.classification(), "A3");
  EXPECT_FALSE(permuted.type_label().has_value());
  EXPECT_EQ(CoxeterSystem::from_matrix({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}).type_label().value(), "A3");
}

TEST(CoxeterGroup, OrdersMatchClassification) {
  for (std::string label : {"A2", "A3", "A4", "B3", "D4", "H3", "F4", "B4", "D5", "H4", "A1xA2"}) {
    CoxeterGroup g(CoxeterSystem::from_type(label));
    EXPECT_EQ(g.size(), classification_order(label)) << label;
  }
  for (int m = 2; m <= 8; ++m) {
    std::string const label = "I2(" + std::to_string(m) + ")";
    CoxeterGroup g(CoxeterSystem::from_matrix({{1, m}, {m, 1}}));
    EXPECT_EQ(g.size(), static_cast<std::size_t>(2 * m));
  }
}

TEST(CoxeterGroup, RejectsInfinite) {
  try {
    CoxeterGroup g(CoxeterSystem::from_matrix({{1, 0}, {0, 1}}));
    FAIL();
  } catch (InvalidInput const& e) {
    EXPECT_NE(std::string(e.what()).find("infinite"), std::string::npos);
  }
}

namespace {

struct Case {
  std::string label;
  char family;
  int rank;
  int bond;
};

std::vector<Case> const kPermCases = {
    {"A2", 'A', 2, 0}, {"A3", 'A', 3, 0}, {"A4", 'A', 4, 0}, {"B3", 'B', 3, 0},
    {"B4", 'B', 4, 0}, {"D4", 'D', 4, 0}, {"I2(5)", 'I', 2, 5}, {"I2(8)", 'I', 2, 8},
};

}  // namespace

TEST(CoxeterGroup, CanonicalWordsAgreeWithCayleyOracle) {
  for (auto const& c : kPermCases) {
    CoxeterGroup g(CoxeterSystem::from_type(c.label));
    oracle::CayleyOracle cay(oracle::permutation_generators(c.family, c.rank, c.bond));
    ASSERT_EQ(g.size(), cay.elements.size()) << c.label;
    for (ElementId w = 0; w < g.size(); ++w) EXPECT_EQ(g.word(w), cay.words[w]) << c.label;
  }
}

TEST(CoxeterGroup, ReduceWordSoundAgainstBruteForce) {
  std::mt19937_64 rng(11);
  for (auto const& c : kPermCases) {
    CoxeterGroup g(CoxeterSystem::from_type(c.label));
    oracle::CayleyOracle cay(oracle::permutation_generators(c.family, c.rank, c.bond));
    for (int trial = 0; trial < 10000; ++trial) {
      Word const w = oracle::random_word(rng, c.rank, 20);
      GroupElement const r = g.reduce_word(w);
      ASSERT_EQ(r.canonical_word, cay.words[cay.id(w)]) << c.label;
      EXPECT_LE(r.canonical_word.size(), w.size());
    }
  }
}

TEST(CoxeterGroup, ReduceWordIdempotentExhaustiveRankTwo) {
  CoxeterGroup g(CoxeterSystem::from_type("I2(5)"));
  for (int len = 0; len <= 12; ++len) {
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      Word w(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) w[static_cast<std::size_t>(i)] = (bits >> i) & 1u;
      auto const r = g.reduce_word(w);
      ASSERT_EQ(g.reduce_word(r.canonical_word), r);
    }
  }
}

TEST(CoxeterGroup, ReduceWordIdempotentRandom) {
  std::mt19937_64 rng(5);
  for (std::string label : {"A3", "B3", "H3", "D4", "A4", "F4", "H4"}) {
    CoxeterGroup g(CoxeterSystem::from_type(label));
    for (int trial = 0; trial < 2000; ++trial) {
      auto const r = g.reduce_word(oracle::random_word(rng, g.rank(), 12));
      ASSERT_EQ(g.reduce_word(r.canonical_word), r);
    }
  }
}

TEST(CoxeterGroup, Examples) {
  CoxeterGroup a2(CoxeterSystem::from_type("A2"));
  EXPECT_TRUE(a2.reduce_word({0, 1, 0, 1, 0, 1}).is_identity());
  EXPECT_TRUE(a2.reduce_word({0, 0}).is_identity());
  auto const s1 = a2.reduce_word({0});
  auto const s2 = a2.reduce_word({1});
  auto const p = a2.multiply(s1, s2);
  EXPECT_EQ(p.canonical_word, (Word{0, 1}));
  EXPECT_EQ(a2.inverse(p).canonical_word, (Word{1, 0}));
  EXPECT_TRUE(a2.is_identity(a2.multiply(p, a2.inverse(p))));
  CoxeterGroup a3(CoxeterSystem::from_type("A3"));
  EXPECT_EQ(a3.reduce_word({0, 2}), a3.reduce_word({2, 0}));
  for (int s = 0; s < 3; ++s) {
    EXPECT_TRUE(a3.reduce_word({static_cast<Generator>(s), static_cast<Generator>(s)}).is_identity());
  }
  EXPECT_THROW(a3.multiply(s1, a3.reduce_word({0})), InvalidInput);
  EXPECT_THROW(a3.reduce_word({5}), InvalidInput);
}

TEST(CoxeterGroup, TablesConsistent) {
  for (std::string label : {"A3", "B3", "H3", "D4"}) {
    CoxeterGroup g(CoxeterSystem::from_type(label));
    std::size_t reflections = 0;
    for (ElementId w = 0; w < g.size(); ++w) {
      EXPECT_EQ(g.multiply(w, g.inverse(w)), CoxeterGroup::identity());
      EXPECT_EQ(g.length(g.inverse(w)), g.length(w));
      for (int s = 0; s < g.rank(); ++s) {
        EXPECT_EQ(g.right(g.right(w, s), s), w);
        EXPECT_EQ(std::abs(g.length(g.right(w, s)) - g.length(w)), 1);
      }
      if (g.is_reflection(w)) {
        ++reflections;
        EXPECT_EQ(g.length(w) % 2, 1);
        EXPECT_EQ(g.multiply(w, w), CoxeterGroup::identity());
      }
    }
    // number of reflections = number of positive roots = l(w0)
    EXPECT_EQ(reflections, static_cast<std::size_t>(g.length(g.longest_element())));
  }
}

TEST(CoxeterGroup, WordTextRoundTrip) {
  auto b3 = CoxeterSystem::from_type("B3");
  EXPECT_EQ(b3.format_word({0, 1, 2}), "s0.s1.s2");
  EXPECT_EQ(b3.parse_word("s0.s1 s2"), (Word{0, 1, 2}));
  EXPECT_EQ(b3.format_word({}), "e");
  EXPECT_TRUE(b3.parse_word("e").empty());
  EXPECT_THROW(b3.parse_word("s3"), InvalidInput);
}
