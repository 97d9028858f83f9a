#pragma once

// Finite group presentations: the spanning-tree presentation of pi_1 of a
// 2-complex, abelianization, Tietze simplification and a three-way
// triviality probe.
//
// Letters are signed integers: +(i+1) is generator i, -(i+1) its inverse.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parabolica/coxeter_complex.hpp"
#include "parabolica/error.hpp"
#include "parabolica/smith_normal_form.hpp"
#include "parabolica/todd_coxeter.hpp"

namespace parabolica {

using Relator = std::vector<int>;

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Relator> relators;

  std::size_t generator_count() const { return generator_names.size(); }

  std::string format_relator(Relator const& r) const {
    if (r.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += '*';
      out += generator_names[static_cast<std::size_t>(std::abs(r[i]) - 1)];
      if (r[i] < 0) out += "^-1";
    }
    return out;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "generators " << generator_count() << '\n';
    for (auto const& n : generator_names) os << n << '\n';
    os << "relators " << relators.size() << '\n';
    for (auto const& r : relators) os << format_relator(r) << '\n';
    return os.str();
  }
};

inline Relator inverse_word(Relator const& r) {
  Relator out(r.rbegin(), r.rend());
  for (auto& x : out) x = -x;
  return out;
}

inline Relator free_reduce(Relator const& r) {
  Relator out;
  for (int x : r) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

inline Relator cyclic_reduce(Relator r) {
  r = free_reduce(r);
  std::size_t a = 0;
  std::size_t b = r.size();
  while (b - a >= 2 && r[a] == -r[b - 1]) {
    ++a;
    --b;
  }
  return Relator(r.begin() + static_cast<std::ptrdiff_t>(a), r.begin() + static_cast<std::ptrdiff_t>(b));
}

// Least rotation of r or r^-1; equal for relators defining the same normal closure element up to conjugacy.
inline Relator cyclic_canonical(Relator const& r) {
  Relator best = r;
  for (auto const& base : {r, inverse_word(r)}) {
    Relator rot = base;
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (rot < best) best = rot;
    }
  }
  return best;
}

struct Pi1Presentation {
  Presentation presentation;
  ElementId base = 0;
  std::vector<ElementId> tree_parent;                           // BFS tree, base is its own parent
  std::vector<std::pair<ElementId, ElementId>> generator_edges;  // oriented u -> v with u < v
};

// BFS spanning tree of the graph from base, neighbours visited in increasing
// id order. Returns the parent of every vertex.
inline std::vector<ElementId> bfs_tree(QGraph const& graph, ElementId base) {
  std::vector<ElementId> parent(graph.vertex_count(), CosetTable::kUndefined);
  std::deque<ElementId> queue{base};
  parent[base] = base;
  while (!queue.empty()) {
    ElementId const u = queue.front();
    queue.pop_front();
    for (auto v : graph.neighbors(u)) {
      if (parent[v] != CosetTable::kUndefined) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  for (auto p : parent) {
    if (p == CosetTable::kUndefined) throw InvalidInput("graph is disconnected");
  }
  return parent;
}

inline Pi1Presentation pi1_presentation(TwoComplex const& X, ElementId base = 0) {
  auto const& graph = X.graph();
  if (base >= graph.vertex_count()) throw InvalidInput("base chamber out of range");
  Pi1Presentation out;
  out.base = base;
  out.tree_parent = bfs_tree(graph, base);
  std::vector<int> gen(graph.edge_count(), 0);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.edges()[e];
    if (out.tree_parent[v] == u || out.tree_parent[u] == v) continue;
    out.generator_edges.emplace_back(u, v);
    gen[e] = static_cast<int>(out.generator_edges.size());
    out.presentation.generator_names.push_back("x" + std::to_string(out.generator_edges.size()));
  }
  for (auto const& cell : X.cells()) {
    Relator r;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      ElementId const a = cell[i];
      ElementId const b = cell[(i + 1) % cell.size()];
      int const g = gen[graph.edge_index(a, b)];
      if (g) r.push_back(a < b ? g : -g);
    }
    out.presentation.relators.push_back(free_reduce(r));
  }
  return out;
}

struct Abelianization {
  std::size_t generators = 0;
  std::size_t relators = 0;
  std::size_t relation_rank = 0;
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;

  bool trivial() const { return betti == 0 && torsion.empty(); }

  std::string to_string() const {
    std::string out;
    if (betti) out = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
    for (auto const& t : torsion) out += (out.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
    return out.empty() ? "0" : out;
  }
};

inline Abelianization abelianize(Presentation const& p) {
  std::size_t const g = p.generator_count();
  IntMatrix m;
  m.reserve(p.relators.size());
  for (auto const& r : p.relators) {
    std::vector<std::int64_t> row(g, 0);
    for (int x : r) row[static_cast<std::size_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  SmithResult const snf = smith_normal_form(std::move(m), g);
  Abelianization out;
  out.generators = g;
  out.relators = p.relators.size();
  out.relation_rank = snf.rank;
  out.betti = g - snf.rank;
  out.torsion = snf.torsion();
  return out;
}

inline Abelianization h1_of_complex(TwoComplex const& X) { return abelianize(pi1_presentation(X).presentation); }

// Tietze simplification: cyclic reduction, removal of duplicate relators and
// elimination of generators occurring exactly once in some relator. Stops
// early rather than let any relator grow past max_relator_length.
inline Presentation simplify(Presentation const& p, std::size_t max_relator_length = 4096) {
  std::size_t const g0 = p.generator_count();
  std::vector<bool> alive(g0, true);
  std::vector<Relator> rels;
  for (auto const& r : p.relators) rels.push_back(cyclic_reduce(r));

  auto tidy = [&] {
    std::set<Relator> seen;
    std::vector<Relator> next;
    for (auto& r : rels) {
      r = cyclic_reduce(r);
      if (r.empty()) continue;
      if (seen.insert(cyclic_canonical(r)).second) next.push_back(std::move(r));
    }
    rels = std::move(next);
    std::stable_sort(rels.begin(), rels.end(),
                     [](Relator const& a, Relator const& b) { return a.size() < b.size(); });
  };

  for (bool progress = true; progress;) {
    progress = false;
    tidy();
    for (std::size_t ri = 0; ri < rels.size() && !progress; ++ri) {
      Relator const& r = rels[ri];
      std::map<int, std::size_t> count;
      for (int x : r) ++count[std::abs(x)];
      for (std::size_t pos = 0; pos < r.size(); ++pos) {
        int const gen = std::abs(r[pos]);
        if (count[gen] != 1) continue;
        // r = x^e * rest  =>  x = rest^-1 (e = +1) or x = rest (e = -1)
        Relator rot(r.begin() + static_cast<std::ptrdiff_t>(pos), r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
        Relator rest(rot.begin() + 1, rot.end());
        Relator const value = rot[0] > 0 ? inverse_word(rest) : rest;
        Relator const value_inv = inverse_word(value);
        std::vector<Relator> next;
        bool too_long = false;
        for (std::size_t j = 0; j < rels.size(); ++j) {
          if (j == ri) continue;
          Relator out;
          for (int x : rels[j]) {
            if (std::abs(x) != gen) {
              out.push_back(x);
            } else {
              auto const& v = x > 0 ? value : value_inv;
              out.insert(out.end(), v.begin(), v.end());
            }
          }
          out = cyclic_reduce(out);
          if (out.size() > max_relator_length) too_long = true;
          next.push_back(std::move(out));
        }
        if (too_long) continue;
        rels = std::move(next);
        alive[static_cast<std::size_t>(gen - 1)] = false;
        progress = true;
        break;
      }
    }
  }
  tidy();

  std::vector<int> renumber(g0 + 1, 0);
  Presentation out;
  for (std::size_t i = 0; i < g0; ++i) {
    if (!alive[i]) continue;
    out.generator_names.push_back(p.generator_names[i]);
    renumber[i + 1] = static_cast<int>(out.generator_names.size());
  }
  for (auto const& r : rels) {
    Relator nr;
    for (int x : r) nr.push_back(x > 0 ? renumber[static_cast<std::size_t>(x)] : -renumber[static_cast<std::size_t>(-x)]);
    out.relators.push_back(std::move(nr));
  }
  return out;
}

inline constexpr std::size_t kDefaultCosetCap = 1'000'000;

struct ProbeResult {
  enum class Verdict { trivial, nontrivial, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  Abelianization h1;
  std::size_t simplified_generators = 0;
  std::size_t simplified_relators = 0;
  std::size_t cosets_defined = 0;
  std::size_t index = 0;  // order of the group when enumeration completed
  std::string certificate;
};

inline char const* to_string(ProbeResult::Verdict v) {
  switch (v) {
    case ProbeResult::Verdict::trivial:
      return "trivial";
    case ProbeResult::Verdict::nontrivial:
      return "nontrivial";
    case ProbeResult::Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

// Nontrivial is reported only with a certificate: H1 != 0, or a completed
// coset table with more than one coset.
inline ProbeResult pi1_triviality_probe(Presentation const& p, std::size_t coset_cap = kDefaultCosetCap) {
  ProbeResult res;
  res.h1 = abelianize(p);
  if (!res.h1.trivial()) {
    res.verdict = ProbeResult::Verdict::nontrivial;
    res.certificate = "H1 = " + res.h1.to_string();
    return res;
  }
  Presentation const s = simplify(p);
  res.simplified_generators = s.generator_count();
  res.simplified_relators = s.relators.size();
  std::size_t const letters = 2 * s.generator_count();
  std::vector<std::size_t> inverse(letters);
  for (std::size_t i = 0; i < letters; ++i) inverse[i] = i ^ 1u;
  std::vector<std::vector<std::size_t>> relators;
  for (auto const& r : s.relators) {
    std::vector<std::size_t> w;
    for (int x : r) w.push_back(2 * static_cast<std::size_t>(std::abs(x) - 1) + (x < 0 ? 1 : 0));
    relators.push_back(std::move(w));
  }
  EnumerationLimits limits;
  limits.max_cosets = coset_cap;
  CosetEnumerator tc(letters, inverse, relators, limits);
  auto table = tc.run();
  res.cosets_defined = tc.cosets_defined();
  if (!table) {
    res.verdict = ProbeResult::Verdict::inconclusive;
    res.certificate = "coset enumeration hit the cap of " + std::to_string(coset_cap) + " cosets";
    return res;
  }
  res.index = table->size();
  if (res.index == 1) {
    res.verdict = ProbeResult::Verdict::trivial;
    res.certificate = "coset enumeration closed with 1 coset after " + std::to_string(res.cosets_defined) +
                      " definitions (" + std::to_string(s.generator_count()) + " generators after Tietze)";
  } else {
    res.verdict = ProbeResult::Verdict::nontrivial;
    res.certificate = "perfect group of order " + std::to_string(res.index);
  }
  return res;
}

}  // namespace parabolica
