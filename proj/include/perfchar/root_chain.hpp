#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "perfchar/homology.hpp"

namespace perfchar {

// Truncation of the two-step free resolution of R-perfection/(x-roots): Y is
// the 1 x N row of the p-power roots of x, X the N x (N-1) bidiagonal matrix
// whose column k is the unit vector e_k minus x^((p-1)/p^(k+1)) e_{k+1}.
// Y * X = 0 column by column (the two terms telescope).
struct RootChainTruncation {
  LevelRing ring;
  PerfPoly root;
  unsigned trunc = 0;
  PolyMatrix X, Y;
};

inline RootChainTruncation root_chain(const RingPresentation& base,
                                      const PerfPoly& x, unsigned N) {
  if (N == 0) throw Error("root chain needs a positive truncation");
  if (x.level() != 0)
    throw Error("root chain seed must be a level-0 element");
  LevelRing ring{base, N == 1 ? 0 : N - 1};
  ring.check_element(x);
  std::int64_t p = base.ring->ch.p;
  PolyMatrix Y = PolyMatrix::make(base.ring, 1, static_cast<int>(N));
  for (unsigned k = 0; k < N; ++k)
    Y.at(0, static_cast<int>(k)) = x.pth_root(k);
  PolyMatrix X = PolyMatrix::make(base.ring, static_cast<int>(N),
                                  static_cast<int>(N) - 1);
  PerfPoly xp1 = x.pow(static_cast<unsigned long>(p - 1));
  for (unsigned k = 0; k + 1 < N; ++k) {
    X.at(static_cast<int>(k), static_cast<int>(k)) =
        PerfPoly::constant(base.ring, 1);
    X.at(static_cast<int>(k) + 1, static_cast<int>(k)) =
        xp1.pth_root(k + 1).scaled(-1);
  }
  return {std::move(ring), x, N, std::move(X), std::move(Y)};
}

inline FreeComplex root_chain_complex(const RootChainTruncation& T) {
  return {T.ring,
          {1, static_cast<int>(T.trunc), static_cast<int>(T.trunc) - 1},
          {T.Y, T.X}};
}

enum class WitnessStatus { Recovered, NotInKernel, SupportEscaped };

struct WitnessResult {
  WitnessStatus status = WitnessStatus::Recovered;
  VecPoly preimage;               // filled when Recovered
  std::size_t failure_index = 0;  // row where the recursion leaves the window
};

// Back-substitution preimage for a kernel tuple of Y: b_0 = a_0 and
// b_k = a_k + x^((p-1)/p^k) b_{k-1}; the tuple is recovered when the final
// row closes up to the ring relations, otherwise its support escapes the
// truncation window.
inline WitnessResult root_chain_witness(const RootChainTruncation& T,
                                        const VecPoly& a,
                                        std::uint64_t budget = kDefaultPairBudget) {
  if (a.size() != T.trunc)
    throw MismatchError("witness tuple length differs from the truncation");
  const LevelRing& ring = T.ring;
  for (const auto& c : a) ring.check_element(c);
  unsigned n = ring.level;
  GBEngine eng(ring.vars(), MonomialOrder::degrevlex(ring.vars()->nvars()),
               budget);
  std::vector<MPoly> relbasis;
  if (!ring.base.relations.empty()) {
    std::vector<MPoly> rin;
    for (const auto& r : ring.relations_rescaled())
      rin.push_back(eng.from_poly(r));
    relbasis = eng.compute(rin).basis;
  }
  auto reduce = [&](const PerfPoly& f) {
    if (relbasis.empty()) return f;
    return eng.to_poly(eng.normal_form(eng.from_poly(f.rescale(n)), relbasis))
        .pth_root(n);
  };

  PerfPoly dot = PerfPoly::zero(ring.vars());
  for (unsigned k = 0; k < T.trunc; ++k)
    dot = dot + T.Y.at(0, static_cast<int>(k)) * a[k];
  if (!reduce(dot).is_zero()) return {WitnessStatus::NotInKernel, {}, 0};

  std::int64_t p = ring.ch().p;
  PerfPoly xp1 = T.root.pow(static_cast<unsigned long>(p - 1));
  VecPoly b;
  for (unsigned k = 0; k + 1 < T.trunc; ++k) {
    PerfPoly bk = a[k];
    if (k > 0) bk = bk + xp1.pth_root(k) * b.back();
    b.push_back(reduce(bk));
  }
  PerfPoly residual = a[T.trunc - 1];
  if (T.trunc >= 2) residual = residual + xp1.pth_root(T.trunc - 1) * b.back();
  if (!reduce(residual).is_zero())
    return {WitnessStatus::SupportEscaped, {}, T.trunc - 1};
  return {WitnessStatus::Recovered, std::move(b), 0};
}

// Evidence report for the projective-dimension bound 2m of a quotient by m
// perfected hypersurface relations: the total tensor complex of the m
// truncated two-step resolutions has length 2m with d*d = 0; its degree-1
// kernel generators are checked against the image, and for pairs the
// degree-1 homology obstruction is probed directly by sampling intersection
// elements of the first two root ideals against their product colimit.
struct PdimReport {
  std::size_t m = 0;
  int length = 0;
  int bound = 0;
  unsigned window = 0;
  bool d2_ok = true;
  std::size_t kernel_gens = 0;
  std::size_t kernel_in_image = 0;
  std::size_t kernel_escaped = 0;
  std::size_t tor1_samples = 0;
  std::size_t tor1_found = 0;
  int tor1_max_slack = 0;
};

inline PdimReport perfection_pdim_bound(const RingPresentation& base,
                                        const std::vector<PerfPoly>& fs,
                                        unsigned N = 4, int samples = 8,
                                        std::uint64_t budget = kDefaultPairBudget) {
  PdimReport rep;
  rep.m = fs.size();
  rep.bound = 2 * static_cast<int>(fs.size());
  rep.window = N;
  if (fs.empty()) return rep;

  std::vector<FreeComplex> qs;
  for (const auto& f : fs) qs.push_back(root_chain_complex(root_chain(base, f, N)));
  FreeComplex total = tensor_total_complex(qs);
  rep.length = total.length();
  rep.d2_ok = complex_check(total, budget);

  auto ker = detail::module_kernel(total.d[0].columns(), total.ranks[0],
                                   total.ring, {}, budget);
  rep.kernel_gens = ker.size();
  std::vector<VecPoly> image;
  if (total.length() >= 2) image = total.d[1].columns();
  GBEngine eng(total.ring.vars(),
               MonomialOrder::degrevlex(total.ring.vars()->nvars()), budget);
  auto basis = detail::submodule_basis(eng, total.ring, image, total.ranks[1], {});
  for (const auto& k : ker) {
    if (detail::in_submodule(eng, basis, k, total.ring.level))
      ++rep.kernel_in_image;
    else
      ++rep.kernel_escaped;
  }

  if (fs.size() >= 2) {
    ColimitIdeal ci{base, {fs[0]}};
    ColimitIdeal cj{base, {fs[1]}};
    IdealHandle i0 = level_ideal(ci, 0);
    IdealHandle j0 = level_ideal(cj, 0);
    unsigned lvl = std::max(i0.ring.level, j0.ring.level);
    LevelRing common{base, lvl};
    auto inter = intersection(IdealHandle{common, i0.gens},
                              IdealHandle{common, j0.gens}, budget);
    std::vector<PerfPoly> cands = inter.gens;
    for (const auto& g : inter.gens)
      for (int v = 0; v < base.ring->nvars(); ++v) {
        PerfPoly xv = PerfPoly::variable(base.ring, v);
        cands.push_back(g * xv);
        cands.push_back(g * (xv + PerfPoly::constant(base.ring, 1)));
      }
    for (const auto& f : cands) {
      if (rep.tor1_samples >= static_cast<std::size_t>(samples)) break;
      if (f.is_zero()) continue;
      auto r = colimit_membership(f, ci, cj, {}, budget);
      ++rep.tor1_samples;
      if (r.found) {
        ++rep.tor1_found;
        rep.tor1_max_slack =
            std::max(rep.tor1_max_slack, static_cast<int>(r.level));
      }
    }
  }
  return rep;
}

}  // namespace perfchar
