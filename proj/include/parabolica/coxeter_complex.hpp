#pragma once

// The Coxeter complex as cosets wW_I, the graphs on chambers whose edges are
// q-near pairs, and the 2-complex with a 2-cell on every 3- and 4-cycle.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parabolica/coxeter_group.hpp"
#include "parabolica/error.hpp"

namespace parabolica {

struct Face {
  ElementId rep = 0;         // minimal-length element of rep W_I
  std::uint64_t subset = 0;  // I as a bitmask over S

  friend bool operator==(Face const&, Face const&) = default;
  friend auto operator<=>(Face const&, Face const&) = default;
};

// Minimal-length representative of w W_I.
inline ElementId coset_min_rep(CoxeterGroup const& g, ElementId w, std::uint64_t subset) {
  for (bool moved = true; moved;) {
    moved = false;
    for (int s = 0; s < g.rank(); ++s) {
      if ((subset >> s & 1u) && g.is_right_descent(w, s)) {
        w = g.right(w, s);
        moved = true;
      }
    }
  }
  return w;
}

inline Face face_of(CoxeterGroup const& g, ElementId w, std::uint64_t subset) {
  return {coset_min_rep(g, w, subset), subset};
}

// Coset containment a ⊆ b.
inline bool face_contained_in(CoxeterGroup const& g, Face const& a, Face const& b) {
  return (a.subset & ~b.subset) == 0 && coset_min_rep(g, a.rep, b.subset) == b.rep;
}

// All cosets wW_I ordered by (I, rep).
inline std::vector<Face> enumerate_faces(CoxeterGroup const& g) {
  std::vector<Face> out;
  std::uint64_t const full = (std::uint64_t{1} << g.rank()) - 1;
  for (std::uint64_t subset = 0; subset <= full; ++subset) {
    for (ElementId w = 0; w < g.size(); ++w) {
      bool minimal = true;
      for (int s = 0; s < g.rank() && minimal; ++s) {
        if ((subset >> s & 1u) && g.is_right_descent(w, s)) minimal = false;
      }
      if (minimal) out.push_back({w, subset});
    }
  }
  return out;
}

// Cover relations of the coset poset under inclusion: (smaller, larger)
// indices into enumerate_faces(g). Reverse them for the complex order.
inline std::vector<std::pair<std::size_t, std::size_t>> face_covers(CoxeterGroup const& g,
                                                                    std::vector<Face> const& faces) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (int s = 0; s < g.rank(); ++s) {
      if (faces[i].subset >> s & 1u) continue;
      Face const up = face_of(g, faces[i].rep, faces[i].subset | (std::uint64_t{1} << s));
      auto it = std::lower_bound(faces.begin(), faces.end(), up, [](Face const& a, Face const& b) {
        return a.subset != b.subset ? a.subset < b.subset : a.rep < b.rep;
      });
      out.emplace_back(i, static_cast<std::size_t>(it - faces.begin()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void check_level(CoxeterGroup const& g, int q) {
  if (q < 0 || q > g.rank() - 1) {
    throw InvalidInput("level q = " + std::to_string(q) + " outside 0.." + std::to_string(g.rank() - 1));
  }
}

// Chambers u, v share q+1 vertices of the complex.
inline bool q_near(CoxeterGroup const& g, ElementId u, ElementId v, int q) {
  check_level(g, q);
  return g.support_size(g.multiply(g.inverse(u), v)) <= g.rank() - q - 1;
}

class QGraph {
 public:
  QGraph(GroupPtr group, int q) : group_(std::move(group)), q_(q) {
    auto const& g = *group_;
    check_level(g, q);
    int const budget = g.rank() - q - 1;
    std::vector<ElementId> steps;
    for (ElementId x = 1; x < g.size(); ++x) {
      if (g.support_size(x) <= budget) steps.push_back(x);
    }
    adjacency_.assign(g.size(), {});
    for (ElementId u = 0; u < g.size(); ++u) {
      auto& nb = adjacency_[u];
      for (auto x : steps) nb.push_back(g.multiply(u, x));
      std::sort(nb.begin(), nb.end());
    }
    for (ElementId u = 0; u < g.size(); ++u) {
      for (auto v : adjacency_[u]) {
        if (u < v) edges_.emplace_back(u, v);
      }
    }
  }

  CoxeterGroup const& W() const { return *group_; }
  GroupPtr const& group() const { return group_; }
  int q() const { return q_; }
  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::vector<std::pair<ElementId, ElementId>> const& edges() const { return edges_; }
  std::vector<ElementId> const& neighbors(ElementId u) const { return adjacency_[u]; }
  bool adjacent(ElementId u, ElementId v) const {
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
  }
  // Index of edge {u, v} in edges().
  std::size_t edge_index(ElementId u, ElementId v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it == edges_.end() || *it != std::make_pair(u, v)) throw InvalidInput("not an edge");
    return static_cast<std::size_t>(it - edges_.begin());
  }

 private:
  GroupPtr group_;
  int q_;
  std::vector<std::vector<ElementId>> adjacency_;
  std::vector<std::pair<ElementId, ElementId>> edges_;
};

inline constexpr std::size_t kDefaultCellCap = 1'000'000;

class TwoComplex {
 public:
  TwoComplex(GroupPtr group, int q, std::size_t cell_cap = kDefaultCellCap)
      : graph_(std::move(group), q) {
    auto add = [&](std::vector<ElementId> cell, bool triangle) {
      if (cells_.size() >= cell_cap) {
        throw CapExceeded("2-cell count exceeds the cell cap of " + std::to_string(cell_cap));
      }
      cells_.push_back(std::move(cell));
      (triangle ? triangles_ : squares_)++;
    };
    std::size_t const nv = graph_.vertex_count();
    for (ElementId a = 0; a < nv; ++a) {
      auto const& na = graph_.neighbors(a);
      // triangles a < b < c
      for (auto b : na) {
        if (b <= a) continue;
        for (auto c : graph_.neighbors(b)) {
          if (c > b && graph_.adjacent(a, c)) add({a, b, c}, true);
        }
      }
      // 4-cycles a-b-c-d with a minimal and b < d
      for (std::size_t i = 0; i < na.size(); ++i) {
        ElementId const b = na[i];
        if (b <= a) continue;
        for (std::size_t j = i + 1; j < na.size(); ++j) {
          ElementId const d = na[j];
          if (d <= a) continue;
          auto const& nb = graph_.neighbors(b);
          auto const& nd = graph_.neighbors(d);
          auto ib = nb.begin();
          auto id = nd.begin();
          while (ib != nb.end() && id != nd.end()) {
            if (*ib < *id) {
              ++ib;
            } else if (*id < *ib) {
              ++id;
            } else {
              ElementId const c = *ib;
              if (c > a) add({a, b, c, d}, false);
              ++ib;
              ++id;
            }
          }
        }
      }
    }
  }

  QGraph const& graph() const { return graph_; }
  CoxeterGroup const& W() const { return graph_.W(); }
  std::vector<std::vector<ElementId>> const& cells() const { return cells_; }
  std::size_t triangle_count() const { return triangles_; }
  std::size_t square_count() const { return squares_; }

 private:
  QGraph graph_;
  std::vector<std::vector<ElementId>> cells_;
  std::size_t triangles_ = 0;
  std::size_t squares_ = 0;
};

struct TwoFace {
  ElementId rep = 0;  // minimal element of rep W_{s,t}
  int s = 0;
  int t = 0;
  std::vector<ElementId> boundary;  // rep, rep s, rep s t, ... (2m entries)
};

// Every rank-2 coset wW_{s,t} with m(s,t) finite and its boundary gallery.
inline std::vector<TwoFace> permutahedron_two_faces(CoxeterGroup const& g) {
  std::vector<TwoFace> out;
  for (int s = 0; s < g.rank(); ++s) {
    for (int t = s + 1; t < g.rank(); ++t) {
      int const m = g.system().m(s, t);
      std::uint64_t const subset = (std::uint64_t{1} << s) | (std::uint64_t{1} << t);
      for (ElementId w = 0; w < g.size(); ++w) {
        if (coset_min_rep(g, w, subset) != w) continue;
        TwoFace f{w, s, t, {}};
        ElementId x = w;
        for (int i = 0; i < 2 * m; ++i) {
          f.boundary.push_back(x);
          x = g.right(x, i % 2 == 0 ? s : t);
        }
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

// DOT text of the graph: vertex label = canonical word, edge attribute =
// support of u^-1 v.
inline std::string to_dot(QGraph const& graph) {
  auto const& g = graph.W();
  auto const& names = g.system().generator_names();
  std::ostringstream os;
  os << "graph gamma_q" << graph.q() << " {\n";
  for (ElementId u = 0; u < graph.vertex_count(); ++u) {
    os << "  v" << u << " [label=\"" << g.format(u) << "\"];\n";
  }
  for (auto [u, v] : graph.edges()) {
    std::uint64_t const supp = g.support(g.multiply(g.inverse(u), v));
    std::string label;
    for (int s = 0; s < g.rank(); ++s) {
      if (supp >> s & 1u) label += (label.empty() ? "" : ",") + names[static_cast<std::size_t>(s)];
    }
    os << "  v" << u << " -- v" << v << " [support=\"{" << label << "}\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace parabolica
