#pragma once

// Coxeter systems: construction from Cartan-Killing labels or explicit
// matrices, classification of the Coxeter diagram, and the word types shared
// by the rest of the library.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "parabolica/error.hpp"

namespace parabolica {

using Generator = std::uint8_t;
using Word = std::vector<Generator>;
using CoxeterMatrix = std::vector<std::vector<int>>;

// m(s,t) = infinity
inline constexpr int kInfinity = 0;
inline constexpr int kMaxRank = 64;

struct DiagramComponent {
  std::vector<int> nodes;             // ascending generator indices
  std::optional<std::string> label;   // nullopt when the component is infinite
};

namespace detail {

inline std::string label_with_rank(char family, int n) {
  return std::string(1, family) + std::to_string(n);
}

// Classification of one connected component given by its nodes.
inline std::optional<std::string> classify_component(CoxeterMatrix const& m,
                                                     std::vector<int> const& nodes) {
  int const k = static_cast<int>(nodes.size());
  if (k == 1) return "A1";
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(static_cast<std::size_t>(k), 0);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
  int big_count = 0;
  int max_label = 0;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      int const lab = m[static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)])]
                       [static_cast<std::size_t>(nodes[static_cast<std::size_t>(b)])];
      if (lab == 2) continue;
      if (lab == kInfinity) return std::nullopt;
      edges.emplace_back(a, b);
      ++degree[static_cast<std::size_t>(a)];
      ++degree[static_cast<std::size_t>(b)];
      adj[static_cast<std::size_t>(a)].push_back(b);
      adj[static_cast<std::size_t>(b)].push_back(a);
      if (lab > 3) ++big_count;
      max_label = std::max(max_label, lab);
    }
  }
  if (static_cast<int>(edges.size()) != k - 1) return std::nullopt;
  auto label_of = [&](int a, int b) {
    return m[static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)])]
            [static_cast<std::size_t>(nodes[static_cast<std::size_t>(b)])];
  };
  if (k == 2) {
    int const lab = label_of(0, 1);
    if (lab == 3) return "A2";
    if (lab == 4) return "B2";
    return "I2(" + std::to_string(lab) + ")";
  }
  if (max_label >= 6) return std::nullopt;
  int branch = -1;
  for (int a = 0; a < k; ++a) {
    int const d = degree[static_cast<std::size_t>(a)];
    if (d >= 4) return std::nullopt;
    if (d == 3) {
      if (branch >= 0) return std::nullopt;
      branch = a;
    }
  }
  if (branch >= 0) {
    if (big_count > 0) return std::nullopt;
    std::vector<int> arms;
    for (int start : adj[static_cast<std::size_t>(branch)]) {
      int len = 1;
      int prev = branch;
      int cur = start;
      while (degree[static_cast<std::size_t>(cur)] == 2) {
        int const next = adj[static_cast<std::size_t>(cur)][0] == prev
                             ? adj[static_cast<std::size_t>(cur)][1]
                             : adj[static_cast<std::size_t>(cur)][0];
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return label_with_rank('D', k);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
      return label_with_rank('E', k);
    }
    return std::nullopt;
  }
  // a path
  if (big_count == 0) return label_with_rank('A', k);
  if (big_count > 1) return std::nullopt;
  for (auto [a, b] : edges) {
    int const lab = label_of(a, b);
    if (lab <= 3) continue;
    bool const at_end = degree[static_cast<std::size_t>(a)] == 1 ||
                        degree[static_cast<std::size_t>(b)] == 1;
    if (lab == 4) {
      if (at_end) return label_with_rank('B', k);
      if (k == 4) return "F4";
      return std::nullopt;
    }
    if (lab == 5 && at_end && (k == 3 || k == 4)) return label_with_rank('H', k);
    return std::nullopt;
  }
  return std::nullopt;
}

struct ParsedLabel {
  char family;
  int rank;
  int bond;  // for I2(m)
};

inline ParsedLabel parse_single_label(std::string_view text) {
  auto fail = [&]() -> InvalidInput {
    return InvalidInput("unknown Coxeter type label '" + std::string(text) + "'");
  };
  if (text.size() < 2) throw fail();
  char const family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (family == 'I') {
    // I2(m)
    if (text.size() < 5 || text[1] != '2' || text[2] != '(' || text.back() != ')') throw fail();
    std::string const inner(text.substr(3, text.size() - 4));
    if (inner.empty() || !std::all_of(inner.begin(), inner.end(), ::isdigit)) throw fail();
    int const mm = std::stoi(inner);
    if (mm < 2) throw fail();
    return {'I', 2, mm};
  }
  std::string const digits(text.substr(1));
  if (digits.empty() || digits.size() > 3 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    throw fail();
  }
  int const n = std::stoi(digits);
  switch (family) {
    case 'A':
      if (n >= 1) return {'A', n, 0};
      break;
    case 'B':
    case 'C':
      if (n >= 2) return {'B', n, 0};
      break;
    case 'D':
      if (n >= 4) return {'D', n, 0};
      break;
    case 'E':
      if (n >= 6 && n <= 8) return {'E', n, 0};
      break;
    case 'F':
      if (n == 4) return {'F', 4, 0};
      break;
    case 'G':
      if (n == 2) return {'I', 2, 6};
      break;
    case 'H':
      if (n == 3 || n == 4) return {'H', n, 0};
      break;
    default:
      break;
  }
  throw fail();
}

inline CoxeterMatrix standard_matrix(ParsedLabel const& p) {
  int const n = p.rank;
  CoxeterMatrix m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
  auto set = [&](int a, int b, int v) {
    m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
    m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = v;
  };
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  switch (p.family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) set(i, i + 1, 3);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) set(i, i + 1, 3);
      set(0, 1, 4);
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) set(i, i + 1, 3);
      set(n - 3, n - 1, 3);
      break;
    case 'E':
      set(0, 2, 3);
      set(1, 3, 3);
      for (int i = 2; i + 1 < n; ++i) set(i, i + 1, 3);
      break;
    case 'F':
      set(0, 1, 3);
      set(1, 2, 4);
      set(2, 3, 3);
      break;
    case 'H':
      set(0, 1, 5);
      for (int i = 1; i + 1 < n; ++i) set(i, i + 1, 3);
      break;
    case 'I':
      set(0, 1, p.bond);
      break;
    default:
      break;
  }
  return m;
}

inline std::string canonical_label(ParsedLabel const& p) {
  if (p.family == 'I') {
    if (p.bond == 3) return "A2";
    if (p.bond == 4) return "B2";
    if (p.bond == 2) return "A1xA1";
    return "I2(" + std::to_string(p.bond) + ")";
  }
  return label_with_rank(p.family, p.rank);
}

inline std::vector<std::string> split_product(std::string_view label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : label) {
    if (c == 'x' || c == '*') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::uint64_t fingerprint(CoxeterMatrix const& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(m.size());
  for (auto const& row : m) {
    for (int v : row) mix(static_cast<std::uint64_t>(v) + 7);
  }
  return h;
}

}  // namespace detail

class CoxeterSystem {
 public:
  // Accepts single labels (A3, B3, D4, E6, F4, H3, I2(5), G2) and products
  // joined by 'x' (A1xA2).
  static CoxeterSystem from_type(std::string_view label) {
    auto const parts = detail::split_product(label);
    CoxeterMatrix m;
    std::vector<std::string> names;
    std::vector<std::string> labels;
    bool const single_b = parts.size() == 1 && !parts[0].empty() &&
                          (std::toupper(static_cast<unsigned char>(parts[0][0])) == 'B' ||
                           std::toupper(static_cast<unsigned char>(parts[0][0])) == 'C');
    for (auto const& part : parts) {
      auto const parsed = detail::parse_single_label(part);
      auto const block = detail::standard_matrix(parsed);
      std::size_t const off = m.size();
      for (auto& row : m) row.resize(off + block.size(), 2);
      for (std::size_t i = 0; i < block.size(); ++i) {
        std::vector<int> row(off + block.size(), 2);
        for (std::size_t j = 0; j < block.size(); ++j) row[off + j] = block[i][j];
        m.push_back(std::move(row));
      }
      labels.push_back(detail::canonical_label(parsed));
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      names.push_back("s" + std::to_string(single_b ? i : i + 1));
    }
    CoxeterSystem sys(std::move(m), std::move(names));
    std::string joined;
    for (std::size_t i = 0; i < labels.size(); ++i) joined += (i ? "x" : "") + labels[i];
    sys.type_label_ = joined;
    return sys;
  }

  static CoxeterSystem from_matrix(CoxeterMatrix m, std::vector<std::string> names = {}) {
    if (names.empty()) {
      for (std::size_t i = 0; i < m.size(); ++i) names.push_back("s" + std::to_string(i + 1));
    }
    CoxeterSystem sys(std::move(m), std::move(names));
    // Attach the label only when the matrix is exactly the standard one.
    if (sys.is_finite()) {
      std::string const cls = sys.classification();
      try {
        auto probe = from_type(cls);
        if (probe.matrix_ == sys.matrix_) sys.type_label_ = cls;
      } catch (InvalidInput const&) {
      }
    }
    return sys;
  }

  int rank() const { return static_cast<int>(matrix_.size()); }
  int m(int s, int t) const {
    return matrix_[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
  }
  CoxeterMatrix const& matrix() const { return matrix_; }
  std::vector<std::string> const& generator_names() const { return names_; }
  std::optional<std::string> const& type_label() const { return type_label_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  std::vector<DiagramComponent> const& components() const { return components_; }

  bool is_finite() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](auto const& c) { return c.label.has_value(); });
  }
  bool is_irreducible() const { return components_.size() == 1; }

  // "A3", "A1xA1", or "infinite" for a non-spherical diagram.
  std::string classification() const {
    if (!is_finite()) return "infinite";
    std::vector<std::string> labels;
    for (auto const& c : components_) labels.push_back(*c.label);
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "x" : "") + labels[i];
    return out;
  }

  std::string display_name() const { return type_label_ ? *type_label_ : classification(); }

  Word parse_word(std::string_view text) const {
    Word w;
    std::string token;
    auto flush = [&]() {
      if (token.empty() || token == "e") {
        token.clear();
        return;
      }
      auto it = std::find(names_.begin(), names_.end(), token);
      if (it == names_.end()) throw InvalidInput("unknown generator '" + token + "'");
      w.push_back(static_cast<Generator>(it - names_.begin()));
      token.clear();
    };
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == ',') {
        flush();
      } else {
        token.push_back(c);
      }
    }
    flush();
    return w;
  }

  std::string format_word(Word const& w) const {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += '.';
      out += names_[w[i]];
    }
    return out;
  }

  void check_word(Word const& w) const {
    for (auto g : w) {
      if (g >= matrix_.size()) {
        throw InvalidInput("letter " + std::to_string(g) + " is not a generator of a rank-" +
                           std::to_string(rank()) + " system");
      }
    }
  }

 private:
  CoxeterSystem(CoxeterMatrix m, std::vector<std::string> names)
      : matrix_(std::move(m)), names_(std::move(names)) {
    validate();
    fingerprint_ = detail::fingerprint(matrix_);
    build_components();
  }

  void validate() const {
    std::size_t const n = matrix_.size();
    if (n == 0) throw InvalidInput("Coxeter matrix must have rank >= 1");
    if (n > static_cast<std::size_t>(kMaxRank)) throw InvalidInput("rank exceeds 64");
    if (names_.size() != n) throw InvalidInput("generator name count does not match rank");
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix_[i].size() != n) {
        throw InvalidInput("Coxeter matrix row " + std::to_string(i) + " has wrong length");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix_[i][i] != 1) {
        throw InvalidInput("diagonal entry m(" + std::to_string(i) + "," + std::to_string(i) +
                           ") = " + std::to_string(matrix_[i][i]) + " must be 1");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        int const v = matrix_[i][j];
        if (v != matrix_[j][i]) {
          throw InvalidInput("Coxeter matrix not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
        }
        if (v != kInfinity && v < 2) {
          throw InvalidInput("off-diagonal entry m(" + std::to_string(i) + "," +
                             std::to_string(j) + ") = " + std::to_string(v) + " must be >= 2");
        }
      }
    }
  }

  void build_components() {
    std::size_t const n = matrix_.size();
    std::vector<int> comp(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
      if (comp[start] >= 0) continue;
      DiagramComponent c;
      std::vector<std::size_t> stack{start};
      comp[start] = static_cast<int>(components_.size());
      while (!stack.empty()) {
        std::size_t const v = stack.back();
        stack.pop_back();
        c.nodes.push_back(static_cast<int>(v));
        for (std::size_t u = 0; u < n; ++u) {
          if (u != v && matrix_[v][u] != 2 && comp[u] < 0) {
            comp[u] = comp[start];
            stack.push_back(u);
          }
        }
      }
      std::sort(c.nodes.begin(), c.nodes.end());
      c.label = detail::classify_component(matrix_, c.nodes);
      components_.push_back(std::move(c));
    }
  }

  CoxeterMatrix matrix_;
  std::vector<std::string> names_;
  std::optional<std::string> type_label_;
  std::uint64_t fingerprint_ = 0;
  std::vector<DiagramComponent> components_;
};

// Classification label of an arbitrary Coxeter matrix (used for the induced
// diagrams of parabolic subgroups).
inline std::string classify(CoxeterMatrix const& m) {
  return CoxeterSystem::from_matrix(m).classification();
}

// Order of a finite irreducible Coxeter group from its label; 0 if unknown.
inline std::uint64_t classification_order(std::string const& label) {
  auto const parts = detail::split_product(label);
  std::uint64_t total = 1;
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  for (auto const& part : parts) {
    auto const p = detail::parse_single_label(part);
    std::uint64_t o = 0;
    switch (p.family) {
      case 'A': o = fact(p.rank + 1); break;
      case 'B': o = (std::uint64_t{1} << p.rank) * fact(p.rank); break;
      case 'D': o = (std::uint64_t{1} << (p.rank - 1)) * fact(p.rank); break;
      case 'E': o = p.rank == 6 ? 51840 : p.rank == 7 ? 2903040 : 696729600; break;
      case 'F': o = 1152; break;
      case 'H': o = p.rank == 3 ? 120 : 14400; break;
      case 'I': o = 2 * static_cast<std::uint64_t>(p.bond); break;
      default: break;
    }
    total *= o;
  }
  return total;
}

}  // namespace parabolica
