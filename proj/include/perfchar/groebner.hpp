#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "perfchar/poly.hpp"

namespace perfchar {

// The Groebner layer works on free modules over the *rescaled* (integer
// exponent) polynomial ring: callers rescale level-ring elements first.
// A module polynomial is a flat list of (component, monomial, coefficient)
// terms sorted descending under position-over-term; ideals are the rank-1
// case.  Buchberger runs with normal selection refined by the sugar degree
// and a deterministic (i, j) tie-break, so bases, syzygies and certificates
// are reproducible byte for byte.

struct MTerm {
  int comp = 0;
  PerfMonomial m;
  std::int64_t c = 0;
};

using MPoly = std::vector<MTerm>;
using VecPoly = std::vector<PerfPoly>;

constexpr std::uint64_t kDefaultPairBudget = 1000000;

class GBEngine {
 public:
  GBEngine(PolyRingPtr ring, MonomialOrder ord,
           std::uint64_t pair_budget = kDefaultPairBudget)
      : ring_(std::move(ring)), ord_(std::move(ord)), budget_(pair_budget) {}

  const PolyRingPtr& ring() const { return ring_; }
  const PrimeChar& ch() const { return ring_->ch; }
  std::int64_t p() const { return ring_->ch.p; }

  // Position-over-term: lower component dominates, then the monomial order.
  int cmp_term(const MTerm& a, const MTerm& b) const {
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return ord_.cmp(a.m, b.m, ch());
  }

  MPoly normalized(std::vector<MTerm> ts) const {
    std::sort(ts.begin(), ts.end(),
              [&](const MTerm& a, const MTerm& b) { return cmp_term(a, b) > 0; });
    MPoly out;
    out.reserve(ts.size());
    for (auto& t : ts) {
      std::int64_t c = fp_normalize(t.c, p());
      if (c == 0) continue;
      if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m) {
        out.back().c = fp_add(out.back().c, c, p());
        if (out.back().c == 0) out.pop_back();
      } else {
        out.push_back({t.comp, std::move(t.m), c});
      }
    }
    return out;
  }

  MPoly add(const MPoly& a, const MPoly& b) const {
    MPoly out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
      int c = (i == a.end()) ? -1 : (j == b.end()) ? 1 : cmp_term(*i, *j);
      if (c > 0)
        out.push_back(*i++);
      else if (c < 0)
        out.push_back(*j++);
      else {
        std::int64_t s = fp_add(i->c, j->c, p());
        if (s != 0) out.push_back({i->comp, i->m, s});
        ++i;
        ++j;
      }
    }
    return out;
  }

  MPoly scale(const MPoly& a, std::int64_t c) const {
    c = fp_normalize(c, p());
    if (c == 0) return {};
    MPoly out = a;
    for (auto& t : out) t.c = fp_mul(t.c, c, p());
    return out;
  }

  // Multiply by the scalar term c * mono (components unchanged; monomial
  // orders are multiplicative, so sortedness is preserved).
  MPoly mul_term(const MPoly& a, std::int64_t c, const PerfMonomial& mono) const {
    c = fp_normalize(c, p());
    if (c == 0) return {};
    MPoly out;
    out.reserve(a.size());
    for (const auto& t : a)
      out.push_back({t.comp, t.m.mul(mono, ch()), fp_mul(t.c, c, p())});
    return out;
  }

  // Multiply by a scalar polynomial (component-0 MPoly).
  MPoly scalar_mul(const MPoly& scalar, const MPoly& f) const {
    MPoly acc;
    for (const auto& t : scalar) acc = add(acc, mul_term(f, t.c, t.m));
    return acc;
  }

  // --- conversions ---------------------------------------------------

  MPoly from_poly(const PerfPoly& f, int comp = 0) const {
    std::vector<MTerm> ts;
    ts.reserve(f.terms().size());
    for (const auto& t : f.terms()) ts.push_back({comp, t.m, t.c});
    return normalized(std::move(ts));
  }

  MPoly from_vec(const VecPoly& v) const {
    std::vector<MTerm> ts;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (const auto& t : v[i].terms())
        ts.push_back({static_cast<int>(i), t.m, t.c});
    return normalized(std::move(ts));
  }

  PerfPoly to_poly(const MPoly& f) const {
    std::vector<Term> ts;
    ts.reserve(f.size());
    for (const auto& t : f) ts.push_back({t.c, t.m});
    return PerfPoly::from_terms(ring_, std::move(ts));
  }

  VecPoly to_vec(const MPoly& f, int rank) const {
    VecPoly out(static_cast<std::size_t>(rank), PerfPoly::zero(ring_));
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(rank));
    for (const auto& t : f) buckets.at(static_cast<std::size_t>(t.comp)).push_back({t.c, t.m});
    for (int i = 0; i < rank; ++i)
      out[static_cast<std::size_t>(i)] =
          PerfPoly::from_terms(ring_, std::move(buckets[static_cast<std::size_t>(i)]));
    return out;
  }

  // --- division ------------------------------------------------------

  // Fully reduced normal form.  If `quotients` is non-null it receives one
  // scalar polynomial per basis element with f = sum q_k basis_k + r.
  MPoly normal_form(const MPoly& f, const std::vector<MPoly>& basis,
                    std::vector<MPoly>* quotients = nullptr) const {
    if (quotients) quotients->assign(basis.size(), MPoly{});
    MPoly work = f;
    MPoly rem;
    while (!work.empty()) {
      const MTerm lt = work.front();
      bool reduced = false;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].empty()) continue;
        const MTerm& glt = basis[k].front();
        if (glt.comp != lt.comp || !lt.m.divisible_by(glt.m, ch())) continue;
        std::int64_t q = fp_mul(lt.c, fp_inv(glt.c, p()), p());
        PerfMonomial qm = lt.m.div(glt.m, ch());
        work = add(work, mul_term(basis[k], fp_normalize(-q, p()), qm));
        if (quotients)
          (*quotients)[k] = add((*quotients)[k], MPoly{{0, qm, q}});
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.push_back(lt);
        work.erase(work.begin());
      }
    }
    return rem;
  }

  // --- Buchberger ----------------------------------------------------

  struct Result {
    std::vector<MPoly> basis;
    // Input-coordinate representations of basis elements (component k of
    // reps[i] multiplies input k); filled only in tracking mode.
    std::vector<MPoly> reps;
    bool tracked = false;
  };

  // When track_syzygies is set: all pairs are processed (no product
  // criterion), redundant inputs stay in the basis, and every reduction to
  // zero contributes its input-coordinate representation to *syzygies —
  // these generate the full syzygy module of the inputs.
  Result compute(const std::vector<MPoly>& inputs, bool track_syzygies = false,
                 std::vector<MPoly>* syzygies = nullptr) const {
    Result res;
    res.tracked = track_syzygies;
    std::vector<PExponent> sugar;

    struct Pair {
      std::size_t i, j;
      PerfMonomial lcm;
      int comp;
      PExponent sugar;
    };
    std::vector<Pair> queue;

    auto degree_of = [&](const MPoly& f) {
      PExponent d;
      for (const auto& t : f) {
        PExponent td = t.m.degree(ch());
        if (pexp_cmp(td, d, ch()) > 0) d = td;
      }
      return d;
    };

    auto push_pairs = [&](std::size_t j) {
      const MTerm& bj = res.basis[j].front();
      for (std::size_t i = 0; i < j; ++i) {
        if (res.basis[i].empty()) continue;
        const MTerm& bi = res.basis[i].front();
        if (bi.comp != bj.comp) continue;
        if (!track_syzygies && bi.m.coprime_with(bj.m)) continue;
        Pair pr;
        pr.i = i;
        pr.j = j;
        pr.comp = bi.comp;
        pr.lcm = bi.m.lcm(bj.m, ch());
        PExponent si = pexp_add(sugar[i], pr.lcm.div(bi.m, ch()).degree(ch()), ch());
        PExponent sj = pexp_add(sugar[j], pr.lcm.div(bj.m, ch()).degree(ch()), ch());
        pr.sugar = pexp_cmp(si, sj, ch()) >= 0 ? si : sj;
        queue.push_back(std::move(pr));
      }
    };

    auto pair_less = [&](const Pair& a, const Pair& b) {
      int c = pexp_cmp(a.sugar, b.sugar, ch());
      if (c != 0) return c < 0;
      c = ord_.cmp(a.lcm, b.lcm, ch());
      if (c != 0) return c < 0;
      if (a.comp != b.comp) return a.comp < b.comp;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    };

    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i].empty()) {
        // A zero input is itself a syzygy generator.
        if (track_syzygies && syzygies)
          syzygies->push_back(MPoly{{static_cast<int>(i), {}, 1}});
        continue;
      }
      res.basis.push_back(inputs[i]);
      if (track_syzygies)
        res.reps.push_back(MPoly{{static_cast<int>(i), {}, 1}});
      sugar.push_back(degree_of(inputs[i]));
      push_pairs(res.basis.size() - 1);
    }

    std::uint64_t processed = 0;
    while (!queue.empty()) {
      if (++processed > budget_)
        throw ResourceExceeded("pair budget exceeded in Buchberger loop (" +
                               std::to_string(budget_) + " pairs)");
      std::size_t best = 0;
      for (std::size_t k = 1; k < queue.size(); ++k)
        if (pair_less(queue[k], queue[best])) best = k;
      Pair pr = std::move(queue[best]);
      queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(best));

      const MPoly& fi = res.basis[pr.i];
      const MPoly& fj = res.basis[pr.j];
      PerfMonomial mi = pr.lcm.div(fi.front().m, ch());
      PerfMonomial mj = pr.lcm.div(fj.front().m, ch());
      std::int64_t ci = fp_inv(fi.front().c, p());
      std::int64_t cj = fp_normalize(-fp_inv(fj.front().c, p()), p());
      MPoly s = add(mul_term(fi, ci, mi), mul_term(fj, cj, mj));
      MPoly rep;
      if (track_syzygies)
        rep = add(mul_term(res.reps[pr.i], ci, mi),
                  mul_term(res.reps[pr.j], cj, mj));

      std::vector<MPoly> quotients;
      MPoly r = normal_form(s, res.basis, track_syzygies ? &quotients : nullptr);
      if (track_syzygies)
        for (std::size_t k = 0; k < res.basis.size(); ++k)
          if (!quotients[k].empty())
            rep = add(rep, scale(scalar_mul(quotients[k], res.reps[k]),
                                 fp_normalize(-1, p())));

      if (r.empty()) {
        if (track_syzygies && syzygies && !rep.empty())
          syzygies->push_back(std::move(rep));
        continue;
      }
      std::int64_t inv = fp_inv(r.front().c, p());
      res.basis.push_back(scale(r, inv));
      if (track_syzygies) res.reps.push_back(scale(rep, inv));
      sugar.push_back(pr.sugar);
      push_pairs(res.basis.size() - 1);
    }
    return res;
  }

  // Minimal, fully auto-reduced basis with monic leads, sorted ascending by
  // leading term.  (Plain mode only; tracking mode must keep redundancy.)
  std::vector<MPoly> reduced_basis(std::vector<MPoly> basis) const {
    std::sort(basis.begin(), basis.end(), [&](const MPoly& a, const MPoly& b) {
      return cmp_term(a.front(), b.front()) < 0;
    });
    std::vector<MPoly> kept;
    for (auto& g : basis) {
      bool redundant = false;
      for (const auto& h : kept)
        if (h.front().comp == g.front().comp &&
            g.front().m.divisible_by(h.front().m, ch())) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
      std::vector<MPoly> others;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      MPoly r = normal_form(kept[i], others);
      if (!r.empty()) r = scale(r, fp_inv(r.front().c, p()));
      kept[i] = std::move(r);
    }
    std::vector<MPoly> out;
    for (auto& g : kept)
      if (!g.empty()) out.push_back(std::move(g));
    std::sort(out.begin(), out.end(), [&](const MPoly& a, const MPoly& b) {
      return cmp_term(a.front(), b.front()) < 0;
    });
    return out;
  }

 private:
  PolyRingPtr ring_;
  MonomialOrder ord_;
  std::uint64_t budget_;
};

}  // namespace perfchar
