#pragma once

// Named verification suites and the report they produce.

#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "parabolica/coxeter_complex.hpp"
#include "parabolica/homotopy.hpp"
#include "parabolica/parabolic.hpp"
#include "parabolica/presentation.hpp"
#include "parabolica/relaxed.hpp"
#include "parabolica/serialize.hpp"

namespace parabolica {

enum class Status { pass, fail, inconclusive, skipped, cap };

inline char const* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inconclusive:
      return "inconclusive";
    case Status::skipped:
      return "skipped";
    case Status::cap:
      return "cap-exceeded";
  }
  return "?";
}

struct Record {
  std::string suite;
  std::string name;
  std::string inputs;
  std::string expected;
  std::string computed;
  Status status = Status::fail;
  std::string note;
  double seconds = 0;
};

struct Report {
  std::string system;
  std::vector<std::string> suites;
  std::vector<Record> records;

  // Failures dominate caps, caps dominate inconclusive records; skipped
  // records carry their reason and do not change the outcome.
  Status overall() const {
    bool cap = false;
    bool inconclusive = false;
    for (auto const& r : records) {
      if (r.status == Status::fail) return Status::fail;
      cap = cap || r.status == Status::cap;
      inconclusive = inconclusive || r.status == Status::inconclusive;
    }
    if (cap) return Status::cap;
    if (inconclusive) return Status::inconclusive;
    return Status::pass;
  }

  int exit_code() const {
    switch (overall()) {
      case Status::pass:
      case Status::skipped:
        return 0;
      case Status::fail:
        return 1;
      case Status::cap:
        return 3;
      case Status::inconclusive:
        return 4;
    }
    return 1;
  }

  Json to_json(bool timing = false) const {
    Json recs = Json::array();
    for (auto const& r : records) {
      Json j = {{"suite", r.suite},       {"name", r.name},         {"inputs", r.inputs},
                {"expected", r.expected}, {"computed", r.computed}, {"status", to_string(r.status)}};
      if (!r.note.empty()) j["note"] = r.note;
      if (timing) j["runtime_seconds"] = r.seconds;
      recs.push_back(std::move(j));
    }
    return {{"schema_version", kSchemaVersion}, {"kind", "report"},
            {"system", system},                 {"suites", suites},
            {"overall", to_string(overall())},  {"records", std::move(recs)}};
  }

  std::string to_csv(bool timing = false) const {
    auto quote = [](std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"') out += '"';
        out += c;
      }
      return out + "\"";
    };
    std::ostringstream os;
    os << "suite,name,inputs,expected,computed,status,note" << (timing ? ",runtime_seconds" : "") << '\n';
    for (auto const& r : records) {
      os << quote(r.suite) << ',' << quote(r.name) << ',' << quote(r.inputs) << ',' << quote(r.expected) << ','
         << quote(r.computed) << ',' << quote(to_string(r.status)) << ',' << quote(r.note);
      if (timing) os << ',' << r.seconds;
      os << '\n';
    }
    return os.str();
  }
};

struct SuiteOptions {
  std::optional<int> k;
  std::size_t cell_cap = kDefaultCellCap;
  std::size_t coset_cap = kDefaultCosetCap;
  std::uint64_t seed = 20100215;
  bool parallel = false;
  std::size_t samples = 100;
};

inline std::vector<std::string> const& suite_names() {
  static std::vector<std::string> const names{"galois",       "arrangement-equalities", "theorem-3-3",
                                              "theorem-4-1",  "k4-triviality",          "structure"};
  return names;
}

namespace detail {

struct Outcome {
  std::string computed;
  Status status;
  std::string note = {};
};

inline Outcome verdict(bool ok, std::string computed, std::string note = {}) {
  return {std::move(computed), ok ? Status::pass : Status::fail, std::move(note)};
}

class SuiteRun {
 public:
  SuiteRun(std::string suite, std::vector<Record>& out) : suite_(std::move(suite)), out_(out) {}

  void check(std::string name, std::string inputs, std::string expected, std::function<Outcome()> const& body) {
    Record r{suite_, std::move(name), std::move(inputs), std::move(expected), {}, Status::fail, {}, 0};
    auto const start = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      r.computed = std::move(o.computed);
      r.status = o.status;
      r.note = std::move(o.note);
    } catch (CapExceeded const& e) {
      r.status = Status::cap;
      r.note = e.what();
    } catch (Inconclusive const& e) {
      r.status = Status::inconclusive;
      r.note = e.what();
    } catch (std::exception const& e) {
      r.status = Status::fail;
      r.note = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out_.push_back(std::move(r));
  }

  void skip(std::string name, std::string inputs, std::string reason) {
    out_.push_back({suite_, std::move(name), std::move(inputs), "", "", Status::skipped, std::move(reason), 0});
  }

 private:
  std::string suite_;
  std::vector<Record>& out_;
};

inline std::string kstr(int k) { return "k=" + std::to_string(k); }

// A product of conjugated braid relators u (st)^m u^-1 of total length
// at most max_len.
inline Word random_kernel_word(CoxeterGroup const& w, std::mt19937_64& rng, std::size_t max_len) {
  Word out;
  int const n = w.rank();
  for (int tries = 0; tries < 8; ++tries) {
    int const s = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    int const t = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (s == t) continue;
    Word piece;
    std::size_t const ulen = rng() % 5;
    for (std::size_t i = 0; i < ulen; ++i) piece.push_back(static_cast<Generator>(rng() % static_cast<std::uint64_t>(n)));
    Word const u = piece;
    Word rel = braid_relator(w.system(), s, t);
    if (rng() % 2) std::reverse(rel.begin(), rel.end());
    piece.insert(piece.end(), rel.begin(), rel.end());
    piece.insert(piece.end(), u.rbegin(), u.rend());
    if (out.size() + piece.size() > max_len) break;
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

// A random gallery loop: a random word followed by a reduced word for the
// inverse of its value, total length at most max_len.
inline QLoop random_gallery_loop(CoxeterGroup const& w, std::mt19937_64& rng, std::size_t max_len) {
  std::size_t const longest = static_cast<std::size_t>(w.length(w.longest_element()));
  std::size_t const room = max_len > longest ? max_len - longest : 0;
  Word word;
  std::size_t const len = room == 0 ? 0 : rng() % (room + 1);
  for (std::size_t i = 0; i < len; ++i) word.push_back(static_cast<Generator>(rng() % static_cast<std::uint64_t>(w.rank())));
  Word const back = w.word(w.inverse(w.evaluate(word)));
  word.insert(word.end(), back.begin(), back.end());
  return loop_of_word(w, word);
}

// A random q-loop: a random walk in the q-graph, closed up along the BFS
// tree of the base chamber.
inline QLoop random_q_loop(QGraph const& graph, std::vector<ElementId> const& parent, std::mt19937_64& rng,
                           std::size_t steps) {
  Chain c{kBaseChamber};
  for (std::size_t i = 0; i < steps; ++i) {
    auto const& nb = graph.neighbors(c.back());
    c.push_back(nb[rng() % nb.size()]);
  }
  while (c.back() != kBaseChamber) c.push_back(parent[c.back()]);
  return {graph.q(), c};
}

inline std::vector<ElementId> sorted(std::vector<ElementId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

inline void suite_galois(RootSystem const& rs, SuiteOptions const&, std::vector<Record>& out) {
  detail::SuiteRun run("galois", out);
  auto const& w = rs.W();
  run.check("fix-of-gal-on-lattice", "lattice of the reflection arrangement", "0 failures", [&] {
    auto const lat = intersection_lattice(build_k_parabolic(rs, 2));
    std::size_t bad = 0;
    for (auto const& x : lat.elements) {
      auto const gal = rs.galois_reflections(x);
      Subspace const back = gal.empty() ? rs.whole_space() : rs.fix(gal);
      bad += back != x;
    }
    return detail::verdict(bad == 0, std::to_string(lat.size()) + " elements, " + std::to_string(bad) + " failures");
  });
  run.check("gal-of-fix-on-parabolics", "all parabolic subgroups of rank 1..n", "0 failures", [&] {
    std::size_t total = 0;
    std::size_t bad = 0;
    for (int r = 1; r <= w.rank(); ++r) {
      for (auto const& g : enumerate_parabolics(w, r)) {
        ++total;
        bad += detail::sorted(rs.galois_reflections(fix_of(rs, g))) != detail::sorted(g.reflections);
      }
    }
    return detail::verdict(bad == 0, std::to_string(total) + " subgroups, " + std::to_string(bad) + " failures");
  });
}

inline void suite_arrangements(RootSystem const& rs, SuiteOptions const& opt, std::vector<Record>& out) {
  detail::SuiteRun run("arrangement-equalities", out);
  auto const& sys = rs.W().system();
  int const n = rs.rank();
  std::string const label = sys.type_label().value_or(sys.classification());
  char const fam = label.size() >= 2 && label.find('x') == std::string::npos && label.find('(') == std::string::npos
                       ? label[0]
                       : '?';
  if (fam != 'A' && fam != 'B' && fam != 'D') {
    run.skip("coordinate-comparison", label, "no coordinate arrangement family for type " + label);
    return;
  }
  auto wanted = [&](int k) { return !opt.k || *opt.k == k; };
  auto equal_check = [&](int k, std::string const& ref_name, auto&& build_ref) {
    run.check("k-parabolic-vs-" + ref_name, detail::kstr(k), "equal", [&, k] {
      auto const a = build_k_parabolic(rs, k);
      auto const b = build_ref();
      auto const c = compare_arrangements(a, b);
      std::string computed = c.equal ? "equal" : "not equal";
      computed += " (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " subspaces)";
      std::string note;
      if (!c.equal) {
        std::string eqs;
        for (auto const& e : coordinate_equations(rs, *c.witness)) eqs += (eqs.empty() ? "" : ", ") + e;
        note = std::string("witness only in ") + (c.witness_in_first ? "k-parabolic" : ref_name) + ": " + eqs;
      }
      return detail::verdict(c.equal, computed, note);
    });
  };
  if (fam == 'A') {
    for (int k = 3; k <= n + 1; ++k) {
      if (wanted(k)) equal_check(k, "k-equal", [&, k] { return build_k_equal(rs, k); });
    }
    return;
  }
  if (fam == 'B') {
    for (int k = 3; k <= n; ++k) {
      std::string const ref = "B(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(k - 1) + ")";
      if (wanted(k)) equal_check(k, ref, [&, k] { return build_b_arrangement(rs, k, k - 1); });
    }
    return;
  }
  std::string const d3 = "D(" + std::to_string(n) + ",3)";
  if (wanted(3)) equal_check(3, d3, [&] { return build_d_arrangement(rs, 3); });
  if (wanted(4)) {
    std::string const d4 = "D(" + std::to_string(n) + ",4)";
    run.check("k-parabolic-vs-" + d4, detail::kstr(4), "not equal, witness x_i = x_j = x_l = 0 in the k-parabolic side",
              [&] {
                auto const a = build_k_parabolic(rs, 4);
                auto const b = build_d_arrangement(rs, 4);
                auto const c = compare_arrangements(a, b);
                if (c.equal) return detail::verdict(false, "equal");
                bool coordinate = false;
                detail::for_each_subset(n, 3, [&](std::vector<int> const& idx) {
                  coordinate = coordinate || coordinate_zero_subspace(rs, idx) == *c.witness;
                });
                std::string eqs;
                for (auto const& e : coordinate_equations(rs, *c.witness)) eqs += (eqs.empty() ? "" : ", ") + e;
                std::string const side = c.witness_in_first ? "k-parabolic" : d4;
                return detail::verdict(c.witness_in_first && coordinate,
                                       "not equal (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                           " subspaces), witness in " + side + ": " + eqs);
              });
  }
  for (int k = 4; k <= n; ++k) {
    std::string const ref = "B(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(k - 1) + ")";
    if (wanted(k)) equal_check(k, ref, [&, k] { return build_signed_arrangement(rs, k, k - 1); });
  }
}

inline void suite_theorem_3_3(GroupPtr const& g, RootSystem const& rs, SuiteOptions const& opt,
                              std::vector<Record>& out) {
  detail::SuiteRun run("theorem-3-3", out);
  if (g->rank() != 3) {
    run.skip("betti-vs-lines", "q=n-2", "the lines-through-origin count applies to rank 3 only");
    return;
  }
  std::size_t lines = 0;
  run.check("line-count", detail::kstr(3), "L = |W_{3,3}| lines through the origin", [&] {
    auto const a = build_k_parabolic(rs, 3);
    bool ok = true;
    for (auto const& x : a.subspaces) ok = ok && x.dimension() == 1;
    lines = a.size();
    return detail::verdict(ok, "L = " + std::to_string(lines));
  });
  run.check("betti-vs-lines", "q=1", "b1 = 2L-1 = " + std::to_string(2 * lines - 1) + ", no torsion", [&] {
    auto const h = h1_of_complex(TwoComplex(g, 1, opt.cell_cap));
    return detail::verdict(h.betti == 2 * lines - 1 && h.torsion.empty(), "H1 = " + h.to_string());
  });
}

inline void suite_theorem_4_1(GroupPtr const& g, SuiteOptions const& opt, std::vector<Record>& out) {
  detail::SuiteRun run("theorem-4-1", out);
  auto const& w = *g;
  if (w.rank() < 2) {
    run.skip("kernel-vs-complex", "q=n-2", "rank below 2 has no level n-2");
    return;
  }
  int const q = gallery_level(w);
  std::string const level = "q=" + std::to_string(q);
  RelaxedSystem const r = relax(w.system());
  Abelianization complex_h1;
  run.check("h1-of-complex", level, "finitely generated abelian group", [&] {
    complex_h1 = h1_of_complex(TwoComplex(g, q, opt.cell_cap));
    return detail::verdict(true, complex_h1.to_string());
  });
  run.check("rs-abelianization-vs-h1", level, "H1 = " + complex_h1.to_string(), [&] {
    auto const a = rs_abelianization(r, w);
    return detail::verdict(a.betti == complex_h1.betti && a.torsion == complex_h1.torsion, a.to_string());
  });
  std::string const samples = std::to_string(opt.samples);
  run.check("F-after-G", samples + " kernel words, length <= 30", "F(G(w)) = w in W' for all", [&] {
    std::mt19937_64 rng(opt.seed);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < opt.samples; ++i) {
      Word const word = detail::random_kernel_word(w, rng, 30);
      ok += normal_form(r, theorem_map_F(w, theorem_map_G(w, word))) == normal_form(r, word);
    }
    return detail::verdict(ok == opt.samples, std::to_string(ok) + "/" + samples);
  });
  run.check("G-after-F", samples + " gallery loops, length <= 20", "G(F(l)) homotopic to l for all", [&] {
    std::mt19937_64 rng(opt.seed + 1);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < opt.samples; ++i) {
      QLoop const loop = detail::random_gallery_loop(w, rng, 20);
      QLoop const back = theorem_map_G(w, theorem_map_F(w, loop));
      auto const d = decide_homotopic(w, back, loop);
      ok += d.equivalent && check_certificate(w, d.grid, back, loop).pass;
    }
    return detail::verdict(ok == opt.samples, std::to_string(ok) + "/" + samples);
  });
}

inline void suite_k4_triviality(GroupPtr const& g, SuiteOptions const& opt, std::vector<Record>& out) {
  detail::SuiteRun run("k4-triviality", out);
  auto const& w = *g;
  int const k = opt.k.value_or(4);
  std::string const in = detail::kstr(k);
  if (k < 4 || k > w.rank() + 1) {
    run.skip("relator-contraction", in, "needs 4 <= k <= n+1 = " + std::to_string(w.rank() + 1));
    return;
  }
  int const q = w.rank() - k + 1;
  std::string const level = in + ", q=" + std::to_string(q);
  run.check("relator-contraction-grids", level, "every grid valid and ends at the base chamber", [&] {
    std::size_t total = 0;
    std::size_t ok = 0;
    for (ElementId u = 0; u < w.size(); ++u) {
      for (int s = 0; s < w.rank(); ++s) {
        for (int t = s + 1; t < w.rank(); ++t) {
          if (w.system().m(s, t) == 2) continue;
          auto const grid = contract_relator_grid(w, k, w.word(u), s, t);
          ++total;
          bool good = verify_grid(w, grid).pass;
          for (auto c : grid.rows.back()) good = good && c == kBaseChamber;
          ok += good;
        }
      }
    }
    return detail::verdict(ok == total, std::to_string(ok) + "/" + std::to_string(total) + " grids valid");
  });
  std::string const samples = std::to_string(opt.samples);
  run.check("gallery-normalization", level + ", " + samples + " random loops", "every grid valid", [&] {
    std::mt19937_64 rng(opt.seed + 2);
    QGraph const graph(g, q);
    auto const parent = bfs_tree(graph, kBaseChamber);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < opt.samples; ++i) {
      QLoop const loop = detail::random_q_loop(graph, parent, rng, 6);
      auto const n = normalize_to_gallery(w, loop);
      bool good = verify_grid(w, n.grid).pass && is_stretching(n.grid.rows.front(), loop.chambers);
      try {
        check_loop(w, n.gallery);
      } catch (InvalidInput const&) {
        good = false;
      }
      ok += good;
    }
    return detail::verdict(ok == opt.samples, std::to_string(ok) + "/" + samples);
  });
  run.check("pi1-probe", level, "trivial", [&] {
    TwoComplex const X(g, q, opt.cell_cap);
    auto const p = pi1_presentation(X);
    auto const res = pi1_triviality_probe(p.presentation, opt.coset_cap);
    std::string computed = to_string(res.verdict);
    computed += " (" + std::to_string(p.presentation.generator_count()) + " generators, " +
                std::to_string(p.presentation.relators.size()) + " relators, H1 = " + res.h1.to_string() + ")";
    if (res.verdict == ProbeResult::Verdict::inconclusive) return detail::Outcome{computed, Status::inconclusive, res.certificate};
    return detail::verdict(res.verdict == ProbeResult::Verdict::trivial, computed, res.certificate);
  });
}

inline void suite_structure(GroupPtr const& g, SuiteOptions const& opt, std::vector<Record>& out) {
  detail::SuiteRun run("structure", out);
  auto const& w = *g;
  if (w.rank() < 2) {
    run.skip("cayley-level", "q=n-2", "rank below 2 has no level n-2");
    return;
  }
  int const q = gallery_level(w);
  std::string const level = "q=" + std::to_string(q);
  run.check("edge-count", level, "|W| n / 2 = " + std::to_string(w.size() * static_cast<std::size_t>(w.rank()) / 2),
            [&] {
              QGraph const graph(g, q);
              return detail::verdict(graph.edge_count() == w.size() * static_cast<std::size_t>(w.rank()) / 2,
                                     std::to_string(graph.edge_count()));
            });
  std::size_t commuting = 0;
  for (int s = 0; s < w.rank(); ++s) {
    for (int t = s + 1; t < w.rank(); ++t) commuting += w.system().m(s, t) == 2;
  }
  std::size_t const squares = commuting * w.size() / 4;
  run.check("two-cells", level, "0 triangles, " + std::to_string(squares) + " squares", [&] {
    TwoComplex const X(g, q, opt.cell_cap);
    return detail::verdict(X.triangle_count() == 0 && X.square_count() == squares,
                           std::to_string(X.triangle_count()) + " triangles, " + std::to_string(X.square_count()) +
                               " squares");
  });
}

// Runs the named suites ("all" expands to every suite) in the documented
// order. With opt.parallel the suites run concurrently; the record order
// does not change.
inline Report run_suites(GroupPtr const& g, std::vector<std::string> names, SuiteOptions const& opt) {
  std::vector<std::string> chosen;
  for (auto const& n : names) {
    if (n == "all") {
      chosen = suite_names();
      break;
    }
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end()) {
      throw InvalidInput("unknown suite '" + n + "'");
    }
    if (std::find(chosen.begin(), chosen.end(), n) == chosen.end()) chosen.push_back(n);
  }
  if (chosen.empty()) throw InvalidInput("no suite selected");
  if (!g->system().is_finite()) throw InvalidInput("verification needs a finite Coxeter group");
  RootSystem const rs(g);
  auto one = [&](std::string const& name) {
    std::vector<Record> out;
    if (name == "galois") suite_galois(rs, opt, out);
    if (name == "arrangement-equalities") suite_arrangements(rs, opt, out);
    if (name == "theorem-3-3") suite_theorem_3_3(g, rs, opt, out);
    if (name == "theorem-4-1") suite_theorem_4_1(g, opt, out);
    if (name == "k4-triviality") suite_k4_triviality(g, opt, out);
    if (name == "structure") suite_structure(g, opt, out);
    return out;
  };
  std::vector<std::vector<Record>> parts(chosen.size());
  if (opt.parallel) {
    std::vector<std::future<std::vector<Record>>> jobs;
    for (auto const& n : chosen) jobs.push_back(std::async(std::launch::async, one, n));
    for (std::size_t i = 0; i < jobs.size(); ++i) parts[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < chosen.size(); ++i) parts[i] = one(chosen[i]);
  }
  Report rep{g->system().display_name(), chosen, {}};
  for (auto& p : parts) rep.records.insert(rep.records.end(), p.begin(), p.end());
  return rep;
}

}  // namespace parabolica
