#pragma once

// A finite Coxeter group enumerated once into multiplication tables indexed
// by shortlex rank. Element 0 is the identity; the canonical word of every
// element is its shortlex-least reduced word.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "parabolica/coxeter_system.hpp"
#include "parabolica/error.hpp"
#include "parabolica/todd_coxeter.hpp"

namespace parabolica {

using ElementId = std::uint32_t;

struct GroupElement {
  std::uint64_t system = 0;  // fingerprint of the ambient Coxeter matrix
  Word canonical_word;

  friend bool operator==(GroupElement const& a, GroupElement const& b) {
    return a.system == b.system && a.canonical_word == b.canonical_word;
  }
  bool is_identity() const { return canonical_word.empty(); }
};

class CoxeterGroup {
 public:
  static constexpr std::size_t kDefaultCosetLimit = 4'000'000;

  explicit CoxeterGroup(CoxeterSystem sys, std::size_t coset_limit = kDefaultCosetLimit)
      : sys_(std::move(sys)) {
    if (!sys_.is_finite()) {
      throw InvalidInput("Coxeter system " + describe_infinite() +
                         " is infinite; element enumeration needs a finite group");
    }
    enumerate(coset_limit);
  }

  CoxeterSystem const& system() const { return sys_; }
  int rank() const { return sys_.rank(); }
  std::size_t size() const { return length_.size(); }
  static constexpr ElementId identity() { return 0; }

  ElementId right(ElementId w, int s) const {
    return right_[static_cast<std::size_t>(w) * rank_ + static_cast<std::size_t>(s)];
  }
  ElementId left(int s, ElementId w) const { return inverse_[right(inverse_[w], s)]; }
  ElementId inverse(ElementId w) const { return inverse_[w]; }
  int length(ElementId w) const { return length_[w]; }
  std::uint64_t support(ElementId w) const { return support_[w]; }
  int support_size(ElementId w) const { return std::popcount(support_[w]); }
  bool is_reflection(ElementId w) const { return reflection_[w] != 0; }
  std::vector<ElementId> const& reflections() const { return reflections_; }
  ElementId longest_element() const { return static_cast<ElementId>(size() - 1); }

  // s is a right descent of w iff l(ws) < l(w).
  bool is_right_descent(ElementId w, int s) const { return length(right(w, s)) < length(w); }

  Word word(ElementId w) const {
    Word out(static_cast<std::size_t>(length_[w]));
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = last_[w];
      w = parent_[w];
    }
    return out;
  }

  ElementId evaluate(Word const& w) const {
    sys_.check_word(w);
    ElementId x = identity();
    for (auto s : w) x = right(x, s);
    return x;
  }

  ElementId multiply(ElementId a, ElementId b) const {
    for (auto s : word(b)) a = right(a, s);
    return a;
  }

  GroupElement element(ElementId w) const { return {sys_.fingerprint(), word(w)}; }

  ElementId id_of(GroupElement const& g) const {
    check_same(g);
    return evaluate(g.canonical_word);
  }

  GroupElement reduce_word(Word const& w) const { return element(evaluate(w)); }

  GroupElement multiply(GroupElement const& a, GroupElement const& b) const {
    return element(multiply(id_of(a), id_of(b)));
  }
  GroupElement inverse(GroupElement const& a) const { return element(inverse(id_of(a))); }
  bool is_identity(GroupElement const& a) const {
    check_same(a);
    return a.canonical_word.empty();
  }

  std::string format(ElementId w) const { return sys_.format_word(word(w)); }

  ElementId parse_element(std::string const& text) const { return evaluate(sys_.parse_word(text)); }

 private:
  void check_same(GroupElement const& g) const {
    if (g.system != sys_.fingerprint()) {
      throw InvalidInput("group element belongs to a different Coxeter system");
    }
  }

  std::string describe_infinite() const {
    for (auto const& c : sys_.components()) {
      if (c.label) continue;
      std::string nodes;
      for (int v : c.nodes) nodes += (nodes.empty() ? "" : ",") + sys_.generator_names()[static_cast<std::size_t>(v)];
      return "(non-spherical component on {" + nodes + "})";
    }
    return sys_.classification();
  }

  void enumerate(std::size_t coset_limit) {
    rank_ = static_cast<std::size_t>(sys_.rank());
    std::vector<std::size_t> inverse(rank_);
    for (std::size_t s = 0; s < rank_; ++s) inverse[s] = s;
    std::vector<std::vector<std::size_t>> relators;
    for (std::size_t s = 0; s < rank_; ++s) {
      for (std::size_t t = s + 1; t < rank_; ++t) {
        int const m = sys_.m(static_cast<int>(s), static_cast<int>(t));
        std::vector<std::size_t> rel;
        for (int i = 0; i < m; ++i) {
          rel.push_back(s);
          rel.push_back(t);
        }
        relators.push_back(std::move(rel));
      }
    }
    EnumerationLimits limits;
    limits.max_cosets = coset_limit;
    CosetEnumerator tc(rank_, inverse, relators, limits);
    auto table = tc.run();
    if (!table) {
      throw CapExceeded("element enumeration of " + sys_.display_name() + " exceeded " +
                        std::to_string(coset_limit) + " coset definitions");
    }
    std::size_t const order = table->size();

    // Relabel by breadth-first search with generators in declared order.
    std::vector<ElementId> rank_of(order, CosetTable::kUndefined);
    std::vector<std::uint32_t> coset_of;
    coset_of.reserve(order);
    rank_of[0] = 0;
    coset_of.push_back(0);
    parent_.assign(1, 0);
    last_.assign(1, 0);
    length_.assign(1, 0);
    support_.assign(1, 0);
    for (std::size_t head = 0; head < coset_of.size(); ++head) {
      std::uint32_t const c = coset_of[head];
      for (std::size_t s = 0; s < rank_; ++s) {
        std::uint32_t const d = (*table)(c, s);
        if (rank_of[d] != CosetTable::kUndefined) continue;
        rank_of[d] = static_cast<ElementId>(coset_of.size());
        coset_of.push_back(d);
        parent_.push_back(static_cast<ElementId>(head));
        last_.push_back(static_cast<Generator>(s));
        length_.push_back(length_[head] + 1);
        support_.push_back(support_[head] | (std::uint64_t{1} << s));
      }
    }
    right_.assign(order * rank_, 0);
    for (std::size_t w = 0; w < order; ++w) {
      for (std::size_t s = 0; s < rank_; ++s) right_[w * rank_ + s] = rank_of[(*table)(coset_of[w], s)];
    }
    inverse_.assign(order, 0);
    for (std::size_t w = 0; w < order; ++w) {
      ElementId x = identity();
      Word const wd = word(static_cast<ElementId>(w));
      for (std::size_t i = wd.size(); i-- > 0;) x = right(x, wd[i]);
      inverse_[w] = x;
    }
    reflection_.assign(order, 0);
    for (std::size_t w = 0; w < order; ++w) {
      for (std::size_t s = 0; s < rank_; ++s) {
        // w s w^-1
        ElementId const conj = multiply(right(static_cast<ElementId>(w), static_cast<int>(s)),
                                        inverse_[w]);
        reflection_[conj] = 1;
      }
    }
    for (std::size_t w = 0; w < order; ++w) {
      if (reflection_[w]) reflections_.push_back(static_cast<ElementId>(w));
    }
  }

  CoxeterSystem sys_;
  std::size_t rank_ = 0;
  std::vector<ElementId> right_;
  std::vector<ElementId> parent_;
  std::vector<Generator> last_;
  std::vector<int> length_;
  std::vector<std::uint64_t> support_;
  std::vector<ElementId> inverse_;
  std::vector<std::uint8_t> reflection_;
  std::vector<ElementId> reflections_;
};

using GroupPtr = std::shared_ptr<const CoxeterGroup>;

inline GroupPtr make_group(CoxeterSystem sys) { return std::make_shared<const CoxeterGroup>(std::move(sys)); }

}  // namespace parabolica
