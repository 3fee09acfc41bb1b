#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perfchar/poly.hpp"

namespace perfchar {

// Value of the normalized valuation on a one-variable perfect closure:
// either an element of Z[1/p] >= 0, or infinity (the value of 0).  When a
// truncation order is in play, values at or past the order are reported as
// the order itself with the `saturated` flag — beyond the truncation the
// representative carries no information.
struct ValuationValue {
  bool infinite = false;
  bool saturated = false;
  PExponent value;
};

inline ValuationValue val_infinite() { return {true, false, {}}; }

inline bool val_at_least(const ValuationValue& v, const PExponent& r,
                         const PrimeChar& ch) {
  return v.infinite || pexp_cmp(v.value, r, ch) >= 0;
}

inline bool val_equals(const ValuationValue& v, const PExponent& r,
                       const PrimeChar& ch) {
  return !v.infinite && !v.saturated && pexp_cmp(v.value, r, ch) == 0;
}

// Minimum exponent among the terms of f — the DVR valuation extended to
// p-power roots.  f must involve at most one variable.
inline ValuationValue perfect_valuation(
    const PerfPoly& f, std::optional<PExponent> truncation = {}) {
  if (f.is_zero()) return val_infinite();
  int var = -1;
  for (const auto& t : f.terms())
    for (const auto& [idx, e] : t.m.entries()) {
      if (var == -1) var = idx;
      if (idx != var)
        throw MultiVariable("valuation needs a one-variable element");
    }
  const PrimeChar& ch = f.ch();
  ValuationValue v;
  bool first = true;
  for (const auto& t : f.terms()) {
    PExponent e = var == -1 ? PExponent{} : t.m.exponent(var);
    if (first || pexp_cmp(e, v.value, ch) < 0) v.value = e;
    first = false;
  }
  if (truncation && pexp_cmp(v.value, *truncation, ch) >= 0)
    return {false, true, *truncation};
  return v;
}

// --- the Ext^1 kernel chains -------------------------------------------
//
// Tuples (a_1, ..., a_N) with a_k = x^((p-1)/p^k) * a_{k+1}; these are the
// kernels of the connecting map beta(a) = (a_1 - x^((p-1)/p) a_2, ...).
// Telescoping the relation gives v(a_1) >= sum_{i<N} (p-1)/p^i = 1 - p^(1-N),
// and when v(a_1) reaches 1 the whole chain is alpha of a single element
// a = a_1/x, where alpha(a)_k = a * x^(1/p^(k-1)).

inline std::vector<PerfPoly> ext1_chain_from_seed(const PerfPoly& x, int n,
                                                  const PerfPoly& seed) {
  if (n < 1) throw Error("chain length must be positive");
  const PrimeChar& ch = x.ch();
  PerfPoly xp1 = x.pow(ch.p - 1);
  std::vector<PerfPoly> a(static_cast<std::size_t>(n), seed);
  for (int k = n - 1; k >= 1; --k)
    a[static_cast<std::size_t>(k) - 1] =
        xp1.pth_root(static_cast<unsigned>(k)) * a[static_cast<std::size_t>(k)];
  return a;
}

struct Ext1Report {
  int n = 0;
  PExponent bound;           // 1 - p^(1-N), exactly
  ValuationValue head_value;  // v(a_1)
  bool bound_ok = false;
  bool tight = false;  // v(a_1) equals the bound
  std::optional<PerfPoly> recovered;
  bool alpha_ok = false;  // recovered * x^(1/p^(k-1)) reproduces every a_k
};

namespace detail {

inline PerfPoly divide_by_variable(const PerfPoly& f, int var) {
  const PrimeChar& ch = f.ch();
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    std::vector<PerfMonomial::Entry> entries;
    bool found = false;
    for (const auto& [idx, e] : t.m.entries()) {
      if (idx == var) {
        found = true;
        PExponent r = pexp_sub(e, pexp_int(1), ch);
        if (!r.is_zero()) entries.push_back({idx, std::move(r)});
      } else {
        entries.push_back({idx, e});
      }
    }
    if (!found) throw Error("element is not divisible by the variable");
    ts.push_back({t.c, PerfMonomial::from_entries(std::move(entries))});
  }
  return PerfPoly::from_terms(f.ring(), std::move(ts));
}

}  // namespace detail

// Validates the chain relations (RelationViolated(k) on the first failure,
// 1-based), checks the valuation bound on a_1, and attempts the recovery
// a = a_1/x whenever v(a_1) >= 1.  x must be a plain variable.
inline Ext1Report ext1_chain_recovery(const std::vector<PerfPoly>& a,
                                      const PerfPoly& x) {
  if (a.empty()) throw Error("empty chain");
  if (x.terms().size() != 1 || x.terms()[0].c != 1 ||
      x.terms()[0].m.entries().size() != 1 ||
      !(x.terms()[0].m.entries()[0].second == pexp_int(1)))
    throw Error("the uniformizer must be a single variable");
  int var = x.terms()[0].m.entries()[0].first;
  const PrimeChar& ch = x.ch();
  int n = static_cast<int>(a.size());

  PerfPoly xp1 = x.pow(ch.p - 1);
  for (int k = 1; k < n; ++k)
    if (!(a[static_cast<std::size_t>(k) - 1] ==
          xp1.pth_root(static_cast<unsigned>(k)) *
              a[static_cast<std::size_t>(k)]))
      throw RelationViolated("chain relation failed",
                             static_cast<std::size_t>(k));

  Ext1Report rep;
  rep.n = n;
  rep.bound = pexp_normalized(
      pow_p(ch.p, static_cast<unsigned>(n) - 1) - 1,
      static_cast<unsigned>(n) - 1, ch);
  rep.head_value = perfect_valuation(a[0]);
  rep.bound_ok = val_at_least(rep.head_value, rep.bound, ch);
  rep.tight = val_equals(rep.head_value, rep.bound, ch);

  if (!a[0].is_zero() && val_at_least(rep.head_value, pexp_int(1), ch)) {
    PerfPoly rec = detail::divide_by_variable(a[0], var);
    rep.alpha_ok = true;
    for (int k = 1; k <= n; ++k)
      if (!(a[static_cast<std::size_t>(k) - 1] ==
            rec * x.pth_root(static_cast<unsigned>(k) - 1)))
        rep.alpha_ok = false;
    rep.recovered = std::move(rec);
  }
  return rep;
}

}  // namespace perfchar
