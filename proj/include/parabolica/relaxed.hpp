#pragma once

// The relaxed group W' obtained by replacing edge labels with infinity, the
// surjection phi': W' -> W, normal forms in W', and the abelianized kernel of
// phi' by Reidemeister-Schreier rewriting over the Cayley graph of W.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parabolica/coxeter_group.hpp"
#include "parabolica/error.hpp"
#include "parabolica/presentation.hpp"

namespace parabolica {

enum class RelaxMode { theorem, conjecture };

class RelaxedSystem {
 public:
  RelaxedSystem(CoxeterSystem base, CoxeterMatrix relaxed, RelaxMode mode)
      : base_(std::move(base)), relaxed_(std::move(relaxed)), mode_(mode) {}

  CoxeterSystem const& base() const { return base_; }
  CoxeterMatrix const& matrix() const { return relaxed_; }
  RelaxMode mode() const { return mode_; }
  int rank() const { return base_.rank(); }
  int m(int s, int t) const { return relaxed_[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]; }
  bool commute(int s, int t) const { return s != t && m(s, t) == 2; }

  // Every off-diagonal label is 2 or infinity; normal forms are then exact.
  bool right_angled() const {
    for (int s = 0; s < rank(); ++s) {
      for (int t = s + 1; t < rank(); ++t) {
        if (m(s, t) != 2 && m(s, t) != kInfinity) return false;
      }
    }
    return true;
  }

  CoxeterSystem system() const { return CoxeterSystem::from_matrix(relaxed_, base_.generator_names()); }

 private:
  CoxeterSystem base_;
  CoxeterMatrix relaxed_;
  RelaxMode mode_;
};

inline RelaxedSystem relax(CoxeterSystem const& sys) {
  CoxeterMatrix m = sys.matrix();
  for (int s = 0; s < sys.rank(); ++s) {
    for (int t = 0; t < sys.rank(); ++t) {
      if (s != t && sys.m(s, t) != 2) m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = kInfinity;
    }
  }
  return {sys, std::move(m), RelaxMode::theorem};
}

// Conjecture mode. The collection holds parabolic subgroups as ascending
// reflection sets and must be closed under conjugation.
inline RelaxedSystem relax(CoxeterGroup const& w, std::vector<std::vector<ElementId>> const& collection) {
  std::set<std::vector<ElementId>> members(collection.begin(), collection.end());
  for (auto const& p : members) {
    for (int s = 0; s < w.rank(); ++s) {
      std::vector<ElementId> conj;
      for (auto t : p) conj.push_back(w.right(w.left(s, t), s));
      std::sort(conj.begin(), conj.end());
      if (members.count(conj)) continue;
      std::string text;
      for (auto t : conj) text += (text.empty() ? "" : ", ") + w.format(t);
      throw InvalidInput("parabolic collection is not closed under conjugation: conjugate by " +
                         w.system().generator_names()[static_cast<std::size_t>(s)] + " gives {" + text +
                         "}, which is missing");
    }
  }
  auto const& sys = w.system();
  CoxeterMatrix m = sys.matrix();
  for (int s = 0; s < w.rank(); ++s) {
    for (int t = s + 1; t < w.rank(); ++t) {
      std::uint64_t const pair = (std::uint64_t{1} << s) | (std::uint64_t{1} << t);
      std::vector<ElementId> standard;
      for (auto r : w.reflections()) {
        if ((w.support(r) & ~pair) == 0) standard.push_back(r);
      }
      if (members.count(standard)) {
        m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = kInfinity;
        m[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = kInfinity;
      }
    }
  }
  return {sys, std::move(m), RelaxMode::conjecture};
}

struct RewriteStep {
  enum class Kind { commute, cancel };
  Kind kind;
  std::size_t position;  // acts on letters position and position + 1
};

struct Rewriting {
  Word result;
  std::vector<RewriteStep> steps;
};

inline void apply_step(Word& w, RewriteStep const& step) {
  if (step.position + 1 >= w.size()) throw InvalidInput("rewrite step out of range");
  if (step.kind == RewriteStep::Kind::commute) {
    std::swap(w[step.position], w[step.position + 1]);
  } else {
    if (w[step.position] != w[step.position + 1]) throw InvalidInput("cancel step on distinct letters");
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(step.position),
            w.begin() + static_cast<std::ptrdiff_t>(step.position) + 2);
  }
}

// Right-angled case: cancel s...s pairs whose interior commutes with s, then
// take the lexicographically least rearrangement by commutations. Every step
// is recorded.
inline Rewriting rewrite(RelaxedSystem const& r, Word w) {
  if (!r.right_angled()) throw InvalidInput("rewrite needs every relaxed label in {2, inf}");
  r.base().check_word(w);
  Rewriting out;
  auto step = [&](RewriteStep::Kind kind, std::size_t pos) {
    out.steps.push_back({kind, pos});
    apply_step(w, out.steps.back());
  };
  for (bool found = true; found;) {
    found = false;
    for (std::size_t j = 1; j < w.size() && !found; ++j) {
      for (std::size_t i = j; i-- > 0;) {
        if (w[i] == w[j]) {
          for (std::size_t p = j - 1; p > i; --p) step(RewriteStep::Kind::commute, p);
          step(RewriteStep::Kind::cancel, i);
          found = true;
          break;
        }
        if (!r.commute(w[i], w[j])) break;
      }
    }
  }
  for (std::size_t front = 0; front < w.size(); ++front) {
    std::size_t best = front;
    for (std::size_t p = front + 1; p < w.size(); ++p) {
      bool movable = true;
      for (std::size_t i = front; i < p && movable; ++i) movable = r.commute(w[i], w[p]);
      if (movable && w[p] < w[best]) best = p;
    }
    for (std::size_t p = best; p > front; --p) step(RewriteStep::Kind::commute, p - 1);
  }
  out.result = w;
  return out;
}

inline constexpr std::size_t kDefaultTitsBound = 200'000;

// Tits' word problem solution for an arbitrary relaxed matrix: explore the
// braid-move class, shorten at any adjacent repeat, return the lexicographically
// least reduced word. Throws Inconclusive past the state bound.
inline Word tits_normal_form(RelaxedSystem const& r, Word w, std::size_t bound = kDefaultTitsBound) {
  r.base().check_word(w);
  for (;;) {
    std::set<Word> seen{w};
    std::vector<Word> queue{w};
    bool shortened = false;
    for (std::size_t h = 0; h < queue.size() && !shortened; ++h) {
      Word const cur = queue[h];
      for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
        if (cur[i] == cur[i + 1]) {
          w = cur;
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          shortened = true;
          break;
        }
      }
      if (shortened) break;
      for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
        int const a = cur[i];
        int const b = cur[i + 1];
        int const m = r.m(a, b);
        if (m == kInfinity || i + static_cast<std::size_t>(m) > cur.size()) continue;
        bool alternating = true;
        for (int k = 0; k < m && alternating; ++k) alternating = cur[i + static_cast<std::size_t>(k)] == (k % 2 ? b : a);
        if (!alternating) continue;
        Word next = cur;
        for (int k = 0; k < m; ++k) next[i + static_cast<std::size_t>(k)] = static_cast<Generator>(k % 2 ? a : b);
        if (seen.insert(next).second) {
          if (seen.size() > bound) {
            throw Inconclusive("braid class search exceeded " + std::to_string(bound) + " words");
          }
          queue.push_back(std::move(next));
        }
      }
    }
    if (!shortened) return *seen.begin();
  }
}

struct RelaxedElement {
  Word normal_form;

  friend bool operator==(RelaxedElement const&, RelaxedElement const&) = default;
  bool is_identity() const { return normal_form.empty(); }
};

inline RelaxedElement normal_form(RelaxedSystem const& r, Word const& w, std::size_t bound = kDefaultTitsBound) {
  if (r.right_angled()) return {rewrite(r, w).result};
  return {tits_normal_form(r, w, bound)};
}

struct KernelWitness {
  Word word;
  ElementId image = 0;
  bool in_kernel = false;
};

inline KernelWitness kernel_membership(CoxeterGroup const& w, Word const& word) {
  ElementId const image = w.evaluate(word);
  return {word, image, image == CoxeterGroup::identity()};
}

// (s t)^m(s,t) as a word.
inline Word braid_relator(CoxeterSystem const& sys, int s, int t) {
  int const m = sys.m(s, t);
  if (m == kInfinity) throw InvalidInput("m(s,t) is infinite");
  Word out;
  for (int i = 0; i < m; ++i) {
    out.push_back(static_cast<Generator>(s));
    out.push_back(static_cast<Generator>(t));
  }
  return out;
}

struct SchreierPresentation {
  Presentation presentation;
  std::vector<std::pair<ElementId, int>> generator_cosets;  // generator (c, s): edge c -> c s
};

// Reidemeister-Schreier presentation of ker phi'. Cosets of the kernel are the
// elements of W; the transversal is the shortlex spanning tree of the Cayley
// graph. Only Schreier generators on edges c -> cs with c < cs are kept; the
// reverse direction is its inverse by the rewritten s^2.
inline SchreierPresentation reidemeister_schreier(RelaxedSystem const& r, CoxeterGroup const& w) {
  if (w.system().matrix() != r.base().matrix()) throw InvalidInput("group does not match the relaxed system");
  std::size_t const n = static_cast<std::size_t>(w.rank());
  std::vector<int> last(w.size(), -1);
  for (ElementId c = 1; c < w.size(); ++c) last[c] = w.word(c).back();
  auto tree_edge = [&](ElementId c, int s) {
    ElementId const d = w.right(c, s);
    return last[c] == s || last[d] == s;
  };
  SchreierPresentation out;
  std::map<std::pair<ElementId, int>, int> index;
  for (ElementId c = 0; c < w.size(); ++c) {
    for (std::size_t s = 0; s < n; ++s) {
      ElementId const d = w.right(c, static_cast<int>(s));
      if (c > d || tree_edge(c, static_cast<int>(s))) continue;
      out.generator_cosets.emplace_back(c, static_cast<int>(s));
      index[{c, static_cast<int>(s)}] = static_cast<int>(out.generator_cosets.size());
      out.presentation.generator_names.push_back("x[" + w.format(c) + "," +
                                                 w.system().generator_names()[s] + "]");
    }
  }
  // letter for traversing c -> cs
  auto letter = [&](ElementId c, int s) -> int {
    if (tree_edge(c, s)) return 0;
    ElementId const d = w.right(c, s);
    return c < d ? index.at({c, s}) : -index.at({d, s});
  };
  auto rewrite_relator = [&](ElementId c, Word const& rel) {
    Relator out_rel;
    for (auto s : rel) {
      if (int const x = letter(c, s)) out_rel.push_back(x);
      c = w.right(c, s);
    }
    return out_rel;
  };
  std::vector<Word> relators;
  for (std::size_t s = 0; s < n; ++s) relators.push_back({static_cast<Generator>(s), static_cast<Generator>(s)});
  for (int s = 0; s < r.rank(); ++s) {
    for (int t = s + 1; t < r.rank(); ++t) {
      if (r.m(s, t) == kInfinity) continue;
      Word rel;
      for (int i = 0; i < r.m(s, t); ++i) {
        rel.push_back(static_cast<Generator>(s));
        rel.push_back(static_cast<Generator>(t));
      }
      relators.push_back(std::move(rel));
    }
  }
  for (ElementId c = 0; c < w.size(); ++c) {
    for (auto const& rel : relators) out.presentation.relators.push_back(free_reduce(rewrite_relator(c, rel)));
  }
  return out;
}

inline Abelianization rs_abelianization(RelaxedSystem const& r, CoxeterGroup const& w) {
  return abelianize(reidemeister_schreier(r, w).presentation);
}

}  // namespace parabolica
