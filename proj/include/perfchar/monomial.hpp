#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "perfchar/exponent.hpp"

namespace perfchar {

// Sparse monomial: (variable index, exponent) pairs sorted by index, no zero
// exponents.  Exponents live in Z[1/p] >= 0.
class PerfMonomial {
 public:
  using Entry = std::pair<int, PExponent>;

  PerfMonomial() = default;

  static PerfMonomial variable(int idx, PExponent e = pexp_int(1)) {
    PerfMonomial m;
    if (!e.is_zero()) m.entries_.push_back({idx, std::move(e)});
    return m;
  }

  static PerfMonomial from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    PerfMonomial m;
    for (auto& e : entries) {
      if (e.second.is_zero()) continue;
      if (!m.entries_.empty() && m.entries_.back().first == e.first)
        throw Error("duplicate variable in monomial");
      m.entries_.push_back(std::move(e));
    }
    return m;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }

  PExponent exponent(int idx) const {
    for (const auto& e : entries_)
      if (e.first == idx) return e.second;
    return {};
  }

  PerfMonomial mul(const PerfMonomial& o, const PrimeChar& ch) const {
    PerfMonomial r;
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() || b != o.entries_.end()) {
      if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first))
        r.entries_.push_back(*a++);
      else if (a == entries_.end() || b->first < a->first)
        r.entries_.push_back(*b++);
      else {
        PExponent s = pexp_add(a->second, b->second, ch);
        if (!s.is_zero()) r.entries_.push_back({a->first, std::move(s)});
        ++a;
        ++b;
      }
    }
    return r;
  }

  // Divisibility and quotient; meaningful for the rescaled (integer
  // exponent) world but correct for any exact exponents.
  bool divisible_by(const PerfMonomial& o, const PrimeChar& ch) const {
    for (const auto& e : o.entries_)
      if (pexp_cmp(exponent(e.first), e.second, ch) < 0) return false;
    return true;
  }

  PerfMonomial div(const PerfMonomial& o, const PrimeChar& ch) const {
    PerfMonomial r;
    for (const auto& e : entries_) {
      PExponent d = pexp_sub(e.second, o.exponent(e.first), ch);
      if (!d.is_zero()) r.entries_.push_back({e.first, std::move(d)});
    }
    return r;
  }

  PerfMonomial lcm(const PerfMonomial& o, const PrimeChar& ch) const {
    PerfMonomial r;
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() || b != o.entries_.end()) {
      if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first))
        r.entries_.push_back(*a++);
      else if (a == entries_.end() || b->first < a->first)
        r.entries_.push_back(*b++);
      else {
        r.entries_.push_back(
            {a->first, pexp_cmp(a->second, b->second, ch) >= 0 ? a->second
                                                               : b->second});
        ++a;
        ++b;
      }
    }
    return r;
  }

  bool coprime_with(const PerfMonomial& o) const {
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() && b != o.entries_.end()) {
      if (a->first < b->first)
        ++a;
      else if (b->first < a->first)
        ++b;
      else
        return false;
    }
    return true;
  }

  PerfMonomial scale_pk(unsigned k, const PrimeChar& ch) const {
    PerfMonomial r;
    for (const auto& e : entries_)
      r.entries_.push_back({e.first, pexp_scale_pk(e.second, k, ch)});
    return r;
  }

  PerfMonomial root_pk(unsigned k, const PrimeChar& ch) const {
    PerfMonomial r;
    for (const auto& e : entries_)
      r.entries_.push_back({e.first, pexp_root_pk(e.second, k, ch)});
    return r;
  }

  unsigned level() const {
    unsigned l = 0;
    for (const auto& e : entries_)
      if (e.second.level > l) l = e.second.level;
    return l;
  }

  // Total degree as an exact rational, returned unnormalized as num/p^level.
  PExponent degree(const PrimeChar& ch) const {
    PExponent d;
    for (const auto& e : entries_) d = pexp_add(d, e.second, ch);
    return d;
  }

  // Re-index variables (e.g. when embedding into a ring with tag variables).
  PerfMonomial remap(const std::vector<int>& new_index) const {
    std::vector<Entry> es;
    es.reserve(entries_.size());
    for (const auto& e : entries_)
      es.push_back({new_index.at(static_cast<std::size_t>(e.first)), e.second});
    return from_entries(std::move(es));
  }

  bool operator==(const PerfMonomial& o) const { return entries_ == o.entries_; }
  bool operator!=(const PerfMonomial& o) const { return !(*this == o); }

 private:
  std::vector<Entry> entries_;
};

// Block order: earlier blocks dominate (giving elimination orders);
// degree-reverse-lexicographic inside each block.  Exponent comparisons are
// exact rational comparisons.
struct MonomialOrder {
  std::vector<std::vector<int>> blocks;

  static MonomialOrder degrevlex(int nvars) {
    MonomialOrder o;
    o.blocks.emplace_back();
    for (int i = 0; i < nvars; ++i) o.blocks.back().push_back(i);
    return o;
  }

  static MonomialOrder elimination(std::vector<int> front,
                                   std::vector<int> back) {
    MonomialOrder o;
    o.blocks.push_back(std::move(front));
    o.blocks.push_back(std::move(back));
    return o;
  }

  // -1 if a < b, 0 if equal, 1 if a > b.
  int cmp(const PerfMonomial& a, const PerfMonomial& b,
          const PrimeChar& ch) const {
    for (const auto& block : blocks) {
      PExponent da, db;
      for (int v : block) {
        da = pexp_add(da, a.exponent(v), ch);
        db = pexp_add(db, b.exponent(v), ch);
      }
      int c = pexp_cmp(da, db, ch);
      if (c != 0) return c;
      // Reverse lex: last variable (in block order) with differing exponent;
      // the monomial with the smaller exponent there is larger.
      for (auto it = block.rbegin(); it != block.rend(); ++it) {
        int c2 = pexp_cmp(a.exponent(*it), b.exponent(*it), ch);
        if (c2 != 0) return -c2;
      }
    }
    return 0;
  }
};

}  // namespace perfchar
