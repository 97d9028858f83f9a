#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <set>

#include "oracles.hpp"
#include "parabolica/parabolic.hpp"
#include "parabolica/relaxed.hpp"

using namespace parabolica;

namespace {

GroupPtr group(char const* label) { return make_group(CoxeterSystem::from_type(label)); }

Word parse(CoxeterSystem const& sys, char const* text) { return sys.parse_word(text); }

// Shortlex-least word reachable by deleting adjacent equal letters and
// swapping adjacent commuting letters.
Word reachable_minimum(CoxeterMatrix const& m, Word const& w) {
  std::set<Word> seen{w};
  std::queue<Word> queue;
  queue.push(w);
  Word best = w;
  auto better = [](Word const& a, Word const& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; };
  while (!queue.empty()) {
    Word const cur = queue.front();
    queue.pop();
    if (better(cur, best)) best = cur;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      Word next = cur;
      if (cur[i] == cur[i + 1]) {
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(i), next.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      } else if (m[cur[i]][cur[i + 1]] == 2) {
        std::swap(next[i], next[i + 1]);
      } else {
        continue;
      }
      if (seen.insert(next).second) queue.push(next);
    }
  }
  return best;
}

void for_each_word(int rank, int max_len, auto&& fn) {
  Word w;
  auto rec = [&](auto&& self, int len) -> void {
    fn(w);
    if (len == max_len) return;
    for (int s = 0; s < rank; ++s) {
      w.push_back(static_cast<Generator>(s));
      self(self, len + 1);
      w.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

TEST(Relax, TheoremModeMatrices) {
  auto a2 = relax(CoxeterSystem::from_type("A2"));
  EXPECT_EQ(a2.m(0, 1), kInfinity);
  auto a3 = relax(CoxeterSystem::from_type("A3"));
  EXPECT_EQ(a3.m(0, 1), kInfinity);
  EXPECT_EQ(a3.m(0, 2), 2);
  EXPECT_EQ(a3.m(1, 2), kInfinity);
  EXPECT_TRUE(a3.right_angled());
  EXPECT_FALSE(a3.system().is_finite());
}

TEST(Relax, ConjectureModeKeepsLabelsOutsideTheCollection) {
  auto b3 = group("B3");
  std::vector<std::vector<ElementId>> collection;
  for (auto const& p : enumerate_parabolics(*b3, 2)) {
    if (p.type_label == "A2") collection.push_back(p.reflections);
  }
  ASSERT_FALSE(collection.empty());
  auto r = relax(*b3, collection);
  EXPECT_EQ(r.mode(), RelaxMode::conjecture);
  EXPECT_EQ(r.m(1, 2), kInfinity);  // s1, s2
  EXPECT_EQ(r.m(0, 1), 4);          // s0, s1
  EXPECT_EQ(r.m(0, 2), 2);
  EXPECT_FALSE(r.right_angled());
}

TEST(Relax, RejectsCollectionsNotClosedUnderConjugation) {
  auto a3 = group("A3");
  auto const all = enumerate_parabolics(*a3, 2);
  std::vector<std::vector<ElementId>> one{all.front().reflections};
  EXPECT_THROW(relax(*a3, one), InvalidInput);
}

TEST(NormalForm, Examples) {
  auto const a2 = CoxeterSystem::from_type("A2");
  auto const r2 = relax(a2);
  Word const hex = parse(a2, "s1 s2 s1 s2 s1 s2");
  EXPECT_EQ(normal_form(r2, hex).normal_form, hex);
  auto const a3 = CoxeterSystem::from_type("A3");
  EXPECT_TRUE(normal_form(relax(a3), parse(a3, "s1 s3 s1 s3")).is_identity());
  EXPECT_EQ(normal_form(relax(a3), parse(a3, "s3 s1")).normal_form, parse(a3, "s1 s3"));
}

TEST(NormalForm, MatchesReachabilityExhaustively) {
  for (auto [label, len] : std::vector<std::pair<char const*, int>>{{"A3", 9}, {"B3", 8}, {"A2", 10}}) {
    auto const sys = CoxeterSystem::from_type(label);
    auto const r = relax(sys);
    std::size_t checked = 0;
    for_each_word(sys.rank(), len, [&](Word const& w) {
      ASSERT_EQ(normal_form(r, w).normal_form, reachable_minimum(r.matrix(), w)) << sys.format_word(w);
      ++checked;
    });
    EXPECT_GT(checked, 0u);
  }
}

TEST(NormalForm, IdempotentAndStepsReplay) {
  std::mt19937_64 rng(3);
  for (char const* label : {"A3", "B3", "H3", "A4", "D4"}) {
    auto const sys = CoxeterSystem::from_type(label);
    auto const r = relax(sys);
    for (int i = 0; i < 2000; ++i) {
      Word const w = oracle::random_word(rng, sys.rank(), 20);
      auto const rw = rewrite(r, w);
      EXPECT_EQ(rewrite(r, rw.result).result, rw.result);
      Word replay = w;
      for (auto const& st : rw.steps) {
        if (st.kind == RewriteStep::Kind::commute) {
          ASSERT_TRUE(r.commute(replay[st.position], replay[st.position + 1]));
        }
        apply_step(replay, st);
      }
      EXPECT_EQ(replay, rw.result);
    }
  }
}

TEST(NormalForm, TitsSearchAgreesInTheRightAngledCase) {
  std::mt19937_64 rng(5);
  auto const sys = CoxeterSystem::from_type("A4");
  auto const r = relax(sys);
  for (int i = 0; i < 500; ++i) {
    Word const w = oracle::random_word(rng, sys.rank(), 14);
    EXPECT_EQ(tits_normal_form(r, w), rewrite(r, w).result);
  }
}

TEST(NormalForm, ConjectureModeIsBoundedAndCompatibleWithPhi) {
  auto b3 = group("B3");
  std::vector<std::vector<ElementId>> collection;
  for (auto const& p : enumerate_parabolics(*b3, 2)) {
    if (p.type_label == "A2") collection.push_back(p.reflections);
  }
  auto const r = relax(*b3, collection);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    Word const w = oracle::random_word(rng, 3, 12);
    Word const nf = normal_form(r, w).normal_form;
    EXPECT_EQ(b3->evaluate(nf), b3->evaluate(w));
    EXPECT_EQ(normal_form(r, nf).normal_form, nf);
  }
  Word const longish = b3->system().parse_word("s0 s1 s0 s1 s2 s0 s1 s0 s1 s2 s0 s1 s0");
  EXPECT_THROW(tits_normal_form(r, longish, 2), Inconclusive);
}

TEST(Kernel, MembershipAndHomomorphism) {
  auto a3 = group("A3");
  auto const& sys = a3->system();
  EXPECT_TRUE(kernel_membership(*a3, {}).in_kernel);
  EXPECT_TRUE(kernel_membership(*a3, parse(sys, "s1 s2 s1 s2 s1 s2")).in_kernel);
  EXPECT_FALSE(normal_form(relax(sys), parse(sys, "s1 s2 s1 s2 s1 s2")).is_identity());
  EXPECT_FALSE(kernel_membership(*a3, parse(sys, "s1")).in_kernel);
  std::mt19937_64 rng(1);
  for (char const* label : {"A3", "B3", "H3"}) {
    auto g = group(label);
    for (int i = 0; i < 10000; ++i) {
      Word u = oracle::random_word(rng, g->rank(), 12);
      Word const v = oracle::random_word(rng, g->rank(), 12);
      ElementId const pu = kernel_membership(*g, u).image;
      ElementId const pv = kernel_membership(*g, v).image;
      u.insert(u.end(), v.begin(), v.end());
      ASSERT_EQ(kernel_membership(*g, u).image, g->multiply(pu, pv));
    }
  }
}

TEST(Kernel, BraidRelatorsSurviveInTheRelaxedGroup) {
  for (char const* label : {"A3", "B3", "H3", "A4", "D4", "F4"}) {
    auto g = group(label);
    auto const r = relax(g->system());
    for (int s = 0; s < g->rank(); ++s) {
      for (int t = s + 1; t < g->rank(); ++t) {
        Word const rel = braid_relator(g->system(), s, t);
        EXPECT_TRUE(kernel_membership(*g, rel).in_kernel);
        EXPECT_EQ(normal_form(r, rel).is_identity(), g->system().m(s, t) == 2) << label;
      }
    }
  }
}

TEST(ReidemeisterSchreier, AbelianizedKernel) {
  struct Case {
    char const* label;
    std::size_t betti;
  };
  for (auto c : {Case{"A2", 1}, Case{"A3", 7}, Case{"B3", 13}, Case{"H3", 31}}) {
    auto g = group(c.label);
    auto const a = rs_abelianization(relax(g->system()), *g);
    EXPECT_EQ(a.betti, c.betti) << c.label;
    EXPECT_TRUE(a.torsion.empty()) << c.label;
  }
}

TEST(ReidemeisterSchreier, GeneratorsAlignWithComplexEdges) {
  for (char const* label : {"A3", "B3", "H3"}) {
    auto g = group(label);
    auto const rs = reidemeister_schreier(relax(g->system()), *g);
    auto const pi = pi1_presentation(TwoComplex(g, g->rank() - 2));
    std::set<std::pair<ElementId, ElementId>> a;
    for (auto [c, s] : rs.generator_cosets) a.emplace(c, g->right(c, s));
    std::set<std::pair<ElementId, ElementId>> b(pi.generator_edges.begin(), pi.generator_edges.end());
    EXPECT_EQ(a, b) << label;
    EXPECT_EQ(abelianize(rs.presentation).betti, h1_of_complex(TwoComplex(g, g->rank() - 2)).betti);
  }
}
