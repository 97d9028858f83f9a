#pragma once

// Discrete homotopy of chamber loops in the Coxeter complex: q-loops based at
// the identity chamber, homotopy grids and the moves T1-T3, the word maps f
// and g, homotopy decision through W' normal forms, and the level-reduction
// constructions used for k > 3.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "parabolica/coxeter_complex.hpp"
#include "parabolica/coxeter_group.hpp"
#include "parabolica/error.hpp"
#include "parabolica/relaxed.hpp"

namespace parabolica {

using Chain = std::vector<ElementId>;

inline constexpr ElementId kBaseChamber = CoxeterGroup::identity();

struct QLoop {
  int q = 0;
  Chain chambers{kBaseChamber};
};

struct HomotopyGrid {
  int q = 0;
  std::vector<Chain> rows;

  std::size_t width() const { return rows.empty() ? 0 : rows[0].size(); }
  std::size_t height() const { return rows.size(); }
};

inline int gallery_level(CoxeterGroup const& w) { return w.rank() - 2; }

inline bool near_or_equal(CoxeterGroup const& w, ElementId a, ElementId b, int q) {
  return a == b || q_near(w, a, b, q);
}

// Throws unless chain is a q-chain (consecutive entries near or equal).
inline void check_chain(CoxeterGroup const& w, Chain const& chain, int q) {
  check_level(w, q);
  if (chain.empty()) throw InvalidInput("empty chain");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] >= w.size()) throw InvalidInput("chamber id out of range");
    if (i && !near_or_equal(w, chain[i - 1], chain[i], q)) {
      throw InvalidInput("positions " + std::to_string(i - 1) + " and " + std::to_string(i) + " (" +
                         w.format(chain[i - 1]) + ", " + w.format(chain[i]) + ") are not " + std::to_string(q) +
                         "-near");
    }
  }
}

inline void check_loop(CoxeterGroup const& w, QLoop const& loop) {
  check_chain(w, loop.chambers, loop.q);
  if (loop.chambers.front() != kBaseChamber || loop.chambers.back() != kBaseChamber) {
    throw InvalidInput("loop must start and end at the base chamber");
  }
}

// f: the letters read along a gallery, repeats elided.
inline Word word_of_chain(CoxeterGroup const& w, Chain const& chain) {
  Word out;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (chain[i] == chain[i - 1]) continue;
    ElementId const x = w.multiply(w.inverse(chain[i - 1]), chain[i]);
    if (w.length(x) != 1) {
      throw InvalidInput("chambers " + std::to_string(i - 1) + " and " + std::to_string(i) +
                         " are neither equal nor adjacent");
    }
    out.push_back(w.word(x)[0]);
  }
  return out;
}

inline Word word_of_loop(CoxeterGroup const& w, QLoop const& loop) {
  if (loop.q != gallery_level(w)) throw InvalidInput("f is defined on loops at level n-2");
  check_loop(w, loop);
  return word_of_chain(w, loop.chambers);
}

// g: partial products of w starting at the base chamber.
inline Chain chain_of_word(CoxeterGroup const& w, Word const& word, ElementId start = kBaseChamber) {
  w.system().check_word(word);
  Chain out{start};
  for (auto s : word) out.push_back(w.right(out.back(), s));
  return out;
}

inline QLoop loop_of_word(CoxeterGroup const& w, Word const& word) {
  Chain c = chain_of_word(w, word);
  if (c.back() != kBaseChamber) throw InvalidInput("word " + w.system().format_word(word) + " is not the identity in W");
  return {gallery_level(w), std::move(c)};
}

inline QLoop concatenate(QLoop const& a, QLoop const& b) {
  if (a.q != b.q) throw InvalidInput("loops at different levels");
  QLoop out = a;
  out.chambers.insert(out.chambers.end(), b.chambers.begin() + 1, b.chambers.end());
  return out;
}

// Chamber sequence with consecutive repeats removed.
inline Chain compress(Chain const& c) {
  Chain out;
  for (auto x : c) {
    if (out.empty() || out.back() != x) out.push_back(x);
  }
  return out;
}

inline bool is_stretching(Chain const& stretched, Chain const& original) {
  return compress(stretched) == compress(original);
}

struct GridCheck {
  bool pass = true;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string reason;
};

inline GridCheck verify_grid(CoxeterGroup const& w, HomotopyGrid const& grid) {
  auto fail = [](std::size_t r, std::size_t c, std::string why) { return GridCheck{false, r, c, std::move(why)}; };
  if (grid.rows.empty() || grid.rows[0].empty()) return fail(0, 0, "empty grid");
  if (grid.q < 0 || grid.q > w.rank() - 1) return fail(0, 0, "level out of range");
  std::size_t const width = grid.rows[0].size();
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    auto const& row = grid.rows[r];
    if (row.size() != width) return fail(r, 0, "row length differs from the first row");
    for (std::size_t c = 0; c < width; ++c) {
      if (row[c] >= w.size()) return fail(r, c, "chamber id out of range");
      if (c && !near_or_equal(w, row[c - 1], row[c], grid.q)) return fail(r, c, "not near its left neighbour");
      if (r && !near_or_equal(w, grid.rows[r - 1][c], row[c], grid.q)) return fail(r, c, "not near the entry above");
    }
    if (row.front() != kBaseChamber) return fail(r, 0, "row does not start at the base chamber");
    if (row.back() != kBaseChamber) return fail(r, width - 1, "row does not end at the base chamber");
  }
  return {};
}

struct Move {
  enum class Kind { T1, T2Insert, T2Remove, T3 };
  Kind kind = Kind::T1;
  std::size_t position = 0;  // T1: chamber index; otherwise letter index of f
  int s = -1;                // T2Insert: inserted generator
};

inline std::string to_string(Move const& m, CoxeterSystem const& sys) {
  auto const& names = sys.generator_names();
  switch (m.kind) {
    case Move::Kind::T1:
      return "T1@" + std::to_string(m.position);
    case Move::Kind::T2Insert:
      return "T2+@" + std::to_string(m.position) + ":" + names[static_cast<std::size_t>(m.s)];
    case Move::Kind::T2Remove:
      return "T2-@" + std::to_string(m.position);
    case Move::Kind::T3:
      return "T3@" + std::to_string(m.position);
  }
  return "?";
}

namespace detail {

// [begin, end) column ranges of the maximal constant blocks of a row.
inline std::vector<std::pair<std::size_t, std::size_t>> runs(Chain const& row) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < row.size();) {
    std::size_t j = i;
    while (j < row.size() && row[j] == row[i]) ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

inline void duplicate_column(HomotopyGrid& grid, std::size_t c) {
  for (auto& row : grid.rows) row.insert(row.begin() + static_cast<std::ptrdiff_t>(c), row[c]);
}

}  // namespace detail

// Applies a move to the last row of the grid: columns are duplicated across
// the whole grid where the move needs room, then the new row is appended.
inline void apply_move(CoxeterGroup const& w, HomotopyGrid& grid, Move const& m) {
  if (grid.rows.empty()) throw InvalidInput("empty grid");
  auto run_list = detail::runs(grid.rows.back());
  std::size_t const letters = run_list.size() - 1;
  auto ensure_length = [&](std::size_t run, std::size_t len) {
    while (run_list[run].second - run_list[run].first < len) {
      detail::duplicate_column(grid, run_list[run].first);
      run_list = detail::runs(grid.rows.back());
    }
  };
  auto letter = [&](std::size_t p) {
    ElementId const a = grid.rows.back()[run_list[p].first];
    ElementId const b = grid.rows.back()[run_list[p + 1].first];
    ElementId const x = w.multiply(w.inverse(a), b);
    if (w.length(x) != 1) throw InvalidInput("row is not a gallery at letter " + std::to_string(p));
    return static_cast<int>(w.word(x)[0]);
  };
  switch (m.kind) {
    case Move::Kind::T1: {
      if (m.position >= grid.width()) throw InvalidInput("T1 position out of range");
      detail::duplicate_column(grid, m.position);
      grid.rows.push_back(grid.rows.back());
      return;
    }
    case Move::Kind::T2Insert: {
      if (m.position > letters) throw InvalidInput("T2 insertion position out of range");
      if (m.s < 0 || m.s >= w.rank()) throw InvalidInput("T2 insertion generator out of range");
      ensure_length(m.position, 3);
      Chain row = grid.rows.back();
      std::size_t const mid = run_list[m.position].first + 1;
      row[mid] = w.right(row[mid], m.s);
      grid.rows.push_back(std::move(row));
      return;
    }
    case Move::Kind::T2Remove: {
      if (m.position + 2 > letters) throw InvalidInput("T2 removal position out of range");
      if (letter(m.position) != letter(m.position + 1)) throw InvalidInput("T2 removal needs two equal letters");
      Chain row = grid.rows.back();
      ElementId const base = row[run_list[m.position].first];
      for (std::size_t c = run_list[m.position + 1].first; c < run_list[m.position + 1].second; ++c) row[c] = base;
      grid.rows.push_back(std::move(row));
      return;
    }
    case Move::Kind::T3: {
      if (m.position + 2 > letters) throw InvalidInput("T3 position out of range");
      int const s = letter(m.position);
      int const t = letter(m.position + 1);
      if (s == t || w.system().m(s, t) != 2) {
        throw InvalidInput("T3 needs commuting generators, got " + w.system().generator_names()[static_cast<std::size_t>(s)] +
                           " and " + w.system().generator_names()[static_cast<std::size_t>(t)]);
      }
      ensure_length(m.position + 2, 2);
      Chain row = grid.rows.back();
      ElementId const base = row[run_list[m.position].first];
      for (std::size_t c = run_list[m.position + 1].first; c < run_list[m.position + 1].second; ++c) row[c] = base;
      row[run_list[m.position + 2].first] = w.right(base, t);
      grid.rows.push_back(std::move(row));
      return;
    }
  }
}

struct MoveResult {
  QLoop loop;
  HomotopyGrid fragment;  // two rows: a stretching of the input, then the output
};

inline MoveResult apply_move(CoxeterGroup const& w, QLoop const& loop, Move const& m) {
  check_loop(w, loop);
  HomotopyGrid grid{loop.q, {loop.chambers}};
  apply_move(w, grid, m);
  grid.rows.erase(grid.rows.begin(), grid.rows.end() - 2);
  return {{loop.q, grid.rows.back()}, std::move(grid)};
}

inline Move inverse_move(Move const& m, Word const& before) {
  switch (m.kind) {
    case Move::Kind::T2Insert:
      return {Move::Kind::T2Remove, m.position, -1};
    case Move::Kind::T2Remove:
      return {Move::Kind::T2Insert, m.position, before.at(m.position)};
    case Move::Kind::T3:
      return m;
    case Move::Kind::T1:
      break;
  }
  throw InvalidInput("T1 has no inverse move");
}

inline Move move_of_step(RewriteStep const& step) {
  return {step.kind == RewriteStep::Kind::commute ? Move::Kind::T3 : Move::Kind::T2Remove, step.position, -1};
}

struct HomotopyDecision {
  bool equivalent = false;
  Word normal_form1;
  Word normal_form2;
  std::vector<Move> script;
  HomotopyGrid grid;
};

// Two gallery loops are homotopic iff their words agree in W'. The certificate
// replays the rewriting of the first word to normal form and the reversed
// rewriting of the second.
inline HomotopyDecision decide_homotopic(CoxeterGroup const& w, QLoop const& loop1, QLoop const& loop2) {
  if (loop1.q != loop2.q) throw InvalidInput("loops at different levels");
  Word const w1 = word_of_loop(w, loop1);
  Word const w2 = word_of_loop(w, loop2);
  RelaxedSystem const r = relax(w.system());
  Rewriting const r1 = rewrite(r, w1);
  Rewriting const r2 = rewrite(r, w2);
  HomotopyDecision out;
  out.normal_form1 = r1.result;
  out.normal_form2 = r2.result;
  out.equivalent = r1.result == r2.result;
  if (!out.equivalent) return out;
  for (auto const& step : r1.steps) out.script.push_back(move_of_step(step));
  std::vector<Word> before{w2};
  for (auto const& step : r2.steps) {
    before.push_back(before.back());
    apply_step(before.back(), step);
  }
  for (std::size_t i = r2.steps.size(); i-- > 0;) {
    out.script.push_back(inverse_move(move_of_step(r2.steps[i]), before[i]));
  }
  out.grid = {loop1.q, {loop1.chambers}};
  for (auto const& m : out.script) apply_move(w, out.grid, m);
  return out;
}

// A grid certifies loop1 ~ loop2 when it is valid and its first and last rows
// stretch the two loops.
inline GridCheck check_certificate(CoxeterGroup const& w, HomotopyGrid const& grid, QLoop const& loop1,
                                   QLoop const& loop2) {
  GridCheck g = verify_grid(w, grid);
  if (!g.pass) return g;
  if (!is_stretching(grid.rows.front(), loop1.chambers)) return {false, 0, 0, "first row does not stretch loop1"};
  if (!is_stretching(grid.rows.back(), loop2.chambers)) {
    return {false, grid.height() - 1, 0, "last row does not stretch loop2"};
  }
  return g;
}

// F: gallery loops to kernel words.
inline Word theorem_map_F(CoxeterGroup const& w, QLoop const& loop) { return word_of_loop(w, loop); }

// G: kernel words to gallery loops.
inline QLoop theorem_map_G(CoxeterGroup const& w, Word const& word) {
  if (!kernel_membership(w, word).in_kernel) {
    throw InvalidInput("word " + w.system().format_word(word) + " is not in the kernel of phi'");
  }
  return loop_of_word(w, word);
}

inline void check_coarse_level(CoxeterGroup const& w, int k) {
  if (k < 4 || k > w.rank() + 1) {
    throw InvalidInput("level reduction needs 4 <= k <= n+1, got k = " + std::to_string(k));
  }
}

// theta: the same chambers read at level n-k+1.
inline QLoop level_project(CoxeterGroup const& w, QLoop const& loop, int k) {
  check_coarse_level(w, k);
  if (loop.q != gallery_level(w)) throw InvalidInput("level_project expects a loop at level n-2");
  check_loop(w, loop);
  return {w.rank() - k + 1, loop.chambers};
}

struct GalleryNormalization {
  QLoop gallery;      // level n-2
  HomotopyGrid grid;  // level of the input loop
};

// Refines every step u -> v of a q-loop into the canonical gallery inside
// the coset u W_J, J = supp(u^-1 v). One grid row per refined step.
inline GalleryNormalization normalize_to_gallery(CoxeterGroup const& w, QLoop const& loop) {
  check_loop(w, loop);
  HomotopyGrid grid{loop.q, {loop.chambers}};
  for (std::size_t c = 1; c < grid.width(); ++c) {
    Chain const& row = grid.rows.back();
    ElementId const u = row[c - 1];
    ElementId const v = row[c];
    if (u == v) continue;
    Word const path = w.word(w.multiply(w.inverse(u), v));
    if (path.size() == 1) continue;
    for (std::size_t i = 1; i < path.size(); ++i) detail::duplicate_column(grid, c);
    Chain next = grid.rows.back();
    ElementId x = u;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      x = w.right(x, path[i]);
      next[c + i] = x;
    }
    grid.rows.push_back(std::move(next));
    c += path.size() - 1;
  }
  return {{gallery_level(w), grid.rows.back()}, std::move(grid)};
}

// Contracts g(u (st)^m u^-1) at level n-k+1: the relator columns collapse to
// the chamber of u one at a time, then the u u^-1 letters cancel innermost
// first.
inline HomotopyGrid contract_relator_grid(CoxeterGroup const& w, int k, Word const& u, int s, int t) {
  check_coarse_level(w, k);
  if (s < 0 || t < 0 || s >= w.rank() || t >= w.rank() || s == t) throw InvalidInput("invalid generator pair");
  Word word = u;
  Word const rel = braid_relator(w.system(), s, t);
  word.insert(word.end(), rel.begin(), rel.end());
  word.insert(word.end(), u.rbegin(), u.rend());
  HomotopyGrid grid{w.rank() - k + 1, {chain_of_word(w, word)}};
  std::size_t const first = u.size();
  ElementId const tau = grid.rows[0][first];
  for (std::size_t c = first + 1; c < first + rel.size(); ++c) {
    Chain row = grid.rows.back();
    row[c] = tau;
    grid.rows.push_back(std::move(row));
  }
  for (std::size_t i = u.size(); i-- > 0;) apply_move(w, grid, {Move::Kind::T2Remove, i, -1});
  return grid;
}

}  // namespace parabolica
