#pragma once

// Hasselgrove-Leech-Trotter coset enumeration over the trivial subgroup.
//
// Letters are column indices 0..L-1 with an explicit inverse map, so both
// involutive generators (Coxeter presentations) and free generators with
// formal inverses (fundamental group presentations) share one engine.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "parabolica/error.hpp"

namespace parabolica {

class CosetTable {
 public:
  static constexpr std::uint32_t kUndefined = std::numeric_limits<std::uint32_t>::max();

  CosetTable() = default;
  CosetTable(std::size_t letters, std::vector<std::uint32_t> cells)
      : letters_(letters), cells_(std::move(cells)) {}

  std::size_t size() const { return letters_ == 0 ? 1 : cells_.size() / letters_; }
  std::size_t letters() const { return letters_; }
  std::uint32_t operator()(std::size_t coset, std::size_t letter) const {
    return cells_[coset * letters_ + letter];
  }

 private:
  std::size_t letters_ = 0;
  std::vector<std::uint32_t> cells_;
};

struct EnumerationLimits {
  std::size_t max_cosets = 1'000'000;       // total coset definitions
  std::size_t max_table_cells = 100'000'000;  // memory guard
};

class CosetEnumerator {
 public:
  CosetEnumerator(std::size_t letters, std::vector<std::size_t> inverse,
                  std::vector<std::vector<std::size_t>> relators, EnumerationLimits limits = {})
      : letters_(letters),
        inverse_(std::move(inverse)),
        relators_(std::move(relators)),
        limits_(limits) {
    if (inverse_.size() != letters_) throw InvalidInput("inverse map size mismatch");
    for (auto const& r : relators_) {
      for (auto x : r) {
        if (x >= letters_) throw InvalidInput("relator letter out of range");
      }
    }
  }

  // The completed table with live cosets renumbered 0..index-1, or nullopt
  // when a limit was hit first.
  std::optional<CosetTable> run() {
    table_.clear();
    forward_.clear();
    defined_ = 0;
    new_row();
    try {
      for (std::size_t c = 0; c < forward_.size(); ++c) {
        if (!alive(c)) continue;
        for (auto const& rel : relators_) {
          if (rel.empty()) continue;
          scan_and_fill(static_cast<std::uint32_t>(c), rel);
          if (!alive(c)) break;
        }
        if (!alive(c)) continue;
        for (std::size_t x = 0; x < letters_; ++x) {
          if (cell(c, x) == CosetTable::kUndefined) define(static_cast<std::uint32_t>(c), x);
        }
      }
    } catch (LimitHit const&) {
      return std::nullopt;
    }
    return compact();
  }

  std::size_t cosets_defined() const { return defined_; }

 private:
  struct LimitHit {};

  std::uint32_t& cell(std::size_t c, std::size_t x) { return table_[c * letters_ + x]; }
  bool alive(std::size_t c) const { return forward_[c] == c; }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (forward_[r] != r) r = forward_[r];
    while (forward_[c] != r) {
      std::uint32_t const next = forward_[c];
      forward_[c] = r;
      c = next;
    }
    return r;
  }

  std::uint32_t new_row() {
    if (defined_ >= limits_.max_cosets ||
        (forward_.size() + 1) * letters_ > limits_.max_table_cells) {
      throw LimitHit{};
    }
    auto const id = static_cast<std::uint32_t>(forward_.size());
    forward_.push_back(id);
    table_.resize(table_.size() + letters_, CosetTable::kUndefined);
    ++defined_;
    return id;
  }

  void define(std::uint32_t c, std::size_t x) {
    std::uint32_t const d = new_row();
    cell(c, x) = d;
    cell(d, inverse_[x]) = c;
  }

  void scan_and_fill(std::uint32_t c, std::vector<std::size_t> const& w) {
    std::uint32_t f = c;
    std::uint32_t b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && cell(f, w[i]) != CosetTable::kUndefined) f = cell(f, w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && cell(b, inverse_[w[j - 1]]) != CosetTable::kUndefined) {
        b = cell(b, inverse_[w[--j]]);
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        cell(f, w[i]) = b;
        cell(b, inverse_[w[i]]) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void merge(std::uint32_t k, std::uint32_t l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    forward_[l] = k;
    queue_.push_back(l);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      std::uint32_t const e = queue_[qi];
      for (std::size_t x = 0; x < letters_; ++x) {
        std::uint32_t const f = cell(e, x);
        if (f == CosetTable::kUndefined) continue;
        std::size_t const xi = inverse_[x];
        if (cell(f, xi) == e) cell(f, xi) = CosetTable::kUndefined;
        std::uint32_t const e1 = rep(e);
        std::uint32_t const f1 = rep(f);
        if (cell(e1, x) != CosetTable::kUndefined) {
          merge(f1, cell(e1, x));
        } else if (cell(f1, xi) != CosetTable::kUndefined) {
          merge(e1, cell(f1, xi));
        } else {
          cell(e1, x) = f1;
          cell(f1, xi) = e1;
        }
      }
    }
  }

  CosetTable compact() {
    std::vector<std::uint32_t> index(forward_.size(), CosetTable::kUndefined);
    std::uint32_t live = 0;
    for (std::size_t c = 0; c < forward_.size(); ++c) {
      if (alive(c)) index[c] = live++;
    }
    std::vector<std::uint32_t> cells(static_cast<std::size_t>(live) * letters_);
    for (std::size_t c = 0; c < forward_.size(); ++c) {
      if (!alive(c)) continue;
      for (std::size_t x = 0; x < letters_; ++x) {
        cells[index[c] * letters_ + x] = index[rep(cell(c, x))];
      }
    }
    return CosetTable(letters_, std::move(cells));
  }

  std::size_t letters_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::size_t>> relators_;
  EnumerationLimits limits_;

  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> forward_;
  std::vector<std::uint32_t> queue_;
  std::size_t defined_ = 0;
};

}  // namespace parabolica
