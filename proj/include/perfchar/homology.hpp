#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perfchar/complexes.hpp"

namespace perfchar {

// Cyclic module ring/(modulus) over a level ring.
struct CyclicModule {
  LevelRing ring;
  std::vector<PerfPoly> modulus;
};

// Quotient of a free module R^rank by the submodule generated by
// `relations` (plus, implicitly, the ring relations in every component).
struct PresentedModule {
  LevelRing ring;
  int rank = 0;
  std::vector<VecPoly> relations;
};

namespace detail {

// Vectors that are zero in the quotient: relation multiples of every unit
// vector, and multiples by the extra ideal when homology is taken against a
// further quotient.
inline void append_kills(const GBEngine& eng, const LevelRing& ring,
                         const std::vector<PerfPoly>& extra, int rank,
                         std::vector<MPoly>& inputs) {
  for (const auto& r : ring.relations_rescaled())
    for (int c = 0; c < rank; ++c) inputs.push_back(eng.from_poly(r, c));
  for (const auto& g : extra) {
    ring.check_element(g);
    PerfPoly gr = g.rescale(ring.level);
    if (gr.is_zero()) continue;
    for (int c = 0; c < rank; ++c) inputs.push_back(eng.from_poly(gr, c));
  }
}

// Generators of { v : sum_k v_k * images_k = 0 in R^rank/(relations+extra) },
// one coordinate per image, in fractional form.
inline std::vector<VecPoly> module_kernel(const std::vector<VecPoly>& images,
                                          int rank, const LevelRing& ring,
                                          const std::vector<PerfPoly>& extra,
                                          std::uint64_t budget) {
  if (rank == 0) {
    // Map to the zero module: everything is in the kernel.
    std::vector<VecPoly> out;
    for (std::size_t i = 0; i < images.size(); ++i) {
      VecPoly v(images.size(), PerfPoly::zero(ring.vars()));
      v[i] = PerfPoly::constant(ring.vars(), 1);
      out.push_back(std::move(v));
    }
    return out;
  }
  if (images.empty()) return {};
  unsigned n = ring.level;
  GBEngine eng(ring.vars(), MonomialOrder::degrevlex(ring.vars()->nvars()),
               budget);
  std::vector<MPoly> inputs;
  for (const auto& v : images) {
    if (static_cast<int>(v.size()) != rank)
      throw MismatchError("module kernel: image has wrong rank");
    VecPoly scaled;
    for (const auto& c : v) {
      ring.check_element(c);
      scaled.push_back(c.rescale(n));
    }
    inputs.push_back(eng.from_vec(scaled));
  }
  append_kills(eng, ring, extra, rank, inputs);

  std::vector<MPoly> raw;
  eng.compute(inputs, /*track=*/true, &raw);
  std::sort(raw.begin(), raw.end(), [&](const MPoly& a, const MPoly& b) {
    if (a.empty() || b.empty()) return b.empty() && !a.empty();
    return eng.cmp_term(a.front(), b.front()) < 0;
  });
  std::vector<VecPoly> out;
  for (const auto& s : raw) {
    VecPoly full = eng.to_vec(s, static_cast<int>(inputs.size()));
    VecPoly head;
    bool nonzero = false;
    for (std::size_t i = 0; i < images.size(); ++i) {
      head.push_back(full[i].pth_root(n));
      if (!head.back().is_zero()) nonzero = true;
    }
    if (!nonzero) continue;
    bool dup = false;
    for (const auto& seen : out)
      if (seen == head) dup = true;
    if (!dup) out.push_back(std::move(head));
  }
  return out;
}

// Groebner basis (engine coordinates) of the submodule generated by `gens`
// together with the kill vectors, for membership queries in R^rank modulo
// relations + extra.
inline std::vector<MPoly> submodule_basis(const GBEngine& eng,
                                          const LevelRing& ring,
                                          const std::vector<VecPoly>& gens,
                                          int rank,
                                          const std::vector<PerfPoly>& extra) {
  unsigned n = ring.level;
  std::vector<MPoly> inputs;
  for (const auto& v : gens) {
    VecPoly scaled;
    for (const auto& c : v) scaled.push_back(c.rescale(n));
    inputs.push_back(eng.from_vec(scaled));
  }
  append_kills(eng, ring, extra, rank, inputs);
  return eng.compute(inputs).basis;
}

inline bool in_submodule(const GBEngine& eng, const std::vector<MPoly>& basis,
                         const VecPoly& v, unsigned level) {
  VecPoly scaled;
  for (const auto& c : v) scaled.push_back(c.rescale(level));
  return eng.normal_form(eng.from_vec(scaled), basis).empty();
}

// Standard-monomial count under a set of leading monomials with integer
// exponents; nullopt when the staircase is infinite.
inline std::optional<Int> staircase_count(const std::vector<PerfMonomial>& leads,
                                          int nvars, const PrimeChar& ch) {
  for (const auto& lm : leads)
    if (lm.is_one()) return Int(0);
  std::vector<unsigned long> bound(static_cast<std::size_t>(nvars));
  for (int v = 0; v < nvars; ++v) {
    std::optional<Int> best;
    for (const auto& lm : leads) {
      bool pure = true;
      for (const auto& e : lm.entries())
        if (e.first != v) pure = false;
      if (!pure) continue;
      Int e = lm.exponent(v).num;
      if (!best || e < *best) best = e;
    }
    if (!best) return std::nullopt;
    if (*best > 10000000) throw ResourceExceeded("staircase bound too large");
    bound[static_cast<std::size_t>(v)] = best->convert_to<unsigned long>();
  }
  Int box = 1;
  for (auto b : bound) box *= b;
  if (box > 10000000) throw ResourceExceeded("staircase box too large");
  Int count = 0;
  std::vector<unsigned long> e(static_cast<std::size_t>(nvars), 0);
  for (;;) {
    std::vector<PerfMonomial::Entry> es;
    for (int v = 0; v < nvars; ++v)
      if (e[static_cast<std::size_t>(v)] != 0)
        es.push_back({v, pexp_int(Int(e[static_cast<std::size_t>(v)]))});
    PerfMonomial cand = PerfMonomial::from_entries(std::move(es));
    bool standard = true;
    for (const auto& lm : leads)
      if (cand.divisible_by(lm, ch)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    int v = 0;
    while (v < nvars) {
      if (++e[static_cast<std::size_t>(v)] < bound[static_cast<std::size_t>(v)]) break;
      e[static_cast<std::size_t>(v)] = 0;
      ++v;
    }
    if (v == nvars) break;
  }
  return count;
}

inline std::vector<VecPoly> unit_vectors(const LevelRing& ring, int rank) {
  std::vector<VecPoly> out;
  for (int i = 0; i < rank; ++i) {
    VecPoly v(static_cast<std::size_t>(rank), PerfPoly::zero(ring.vars()));
    v[static_cast<std::size_t>(i)] = PerfPoly::constant(ring.vars(), 1);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

// Homology of C tensored with ring/(extra) at homological index i, presented
// on the kernel generators.
inline PresentedModule homology_at(const FreeComplex& C, int i,
                                   const std::vector<PerfPoly>& extra = {},
                                   std::uint64_t budget = kDefaultPairBudget) {
  if (i < 0 || i > C.length()) return {C.ring, 0, {}};
  int a = C.ranks[static_cast<std::size_t>(i)];
  if (a == 0) return {C.ring, 0, {}};
  std::vector<VecPoly> kernel =
      (i == 0) ? detail::unit_vectors(C.ring, a)
               : detail::module_kernel(C.d[static_cast<std::size_t>(i - 1)].columns(),
                                       C.ranks[static_cast<std::size_t>(i - 1)],
                                       C.ring, extra, budget);
  if (kernel.empty()) return {C.ring, 0, {}};
  std::size_t s = kernel.size();
  std::vector<VecPoly> spanners = kernel;
  if (i < C.length())
    for (auto& col : C.d[static_cast<std::size_t>(i)].columns())
      spanners.push_back(std::move(col));
  auto syz = detail::module_kernel(spanners, a, C.ring, extra, budget);
  std::vector<VecPoly> rels;
  for (const auto& v : syz) {
    VecPoly head(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s));
    bool nonzero = false;
    for (const auto& c : head)
      if (!c.is_zero()) nonzero = true;
    if (!nonzero) continue;
    bool dup = false;
    for (const auto& seen : rels)
      if (seen == head) dup = true;
    if (!dup) rels.push_back(std::move(head));
  }
  return {C.ring, static_cast<int>(s), std::move(rels)};
}

// Cheaper vanishing test: every kernel generator lies in the image.
inline bool homology_is_zero(const FreeComplex& C, int i,
                             const std::vector<PerfPoly>& extra = {},
                             std::uint64_t budget = kDefaultPairBudget) {
  if (i < 0 || i > C.length()) return true;
  int a = C.ranks[static_cast<std::size_t>(i)];
  if (a == 0) return true;
  std::vector<VecPoly> kernel =
      (i == 0) ? detail::unit_vectors(C.ring, a)
               : detail::module_kernel(C.d[static_cast<std::size_t>(i - 1)].columns(),
                                       C.ranks[static_cast<std::size_t>(i - 1)],
                                       C.ring, extra, budget);
  if (kernel.empty()) return true;
  std::vector<VecPoly> image;
  if (i < C.length()) image = C.d[static_cast<std::size_t>(i)].columns();
  GBEngine eng(C.ring.vars(), MonomialOrder::degrevlex(C.ring.vars()->nvars()),
               budget);
  auto basis = detail::submodule_basis(eng, C.ring, image, a, extra);
  for (const auto& k : kernel)
    if (!detail::in_submodule(eng, basis, k, C.ring.level)) return false;
  return true;
}

// F_p-dimension of a presented module; nullopt when infinite.
inline std::optional<Int> fp_dimension(const PresentedModule& M,
                                       std::uint64_t budget = kDefaultPairBudget) {
  if (M.rank == 0) return Int(0);
  GBEngine eng(M.ring.vars(), MonomialOrder::degrevlex(M.ring.vars()->nvars()),
               budget);
  auto basis = detail::submodule_basis(eng, M.ring, M.relations, M.rank, {});
  int nv = M.ring.vars()->nvars();
  Int total = 0;
  for (int comp = 0; comp < M.rank; ++comp) {
    std::vector<PerfMonomial> leads;
    for (const auto& g : basis)
      if (g.front().comp == comp) leads.push_back(g.front().m);
    auto cnt = detail::staircase_count(leads, nv, M.ring.ch());
    if (!cnt) return std::nullopt;
    total += *cnt;
  }
  return total;
}

inline bool module_is_zero(const PresentedModule& M,
                           std::uint64_t budget = kDefaultPairBudget) {
  if (M.rank == 0) return true;
  GBEngine eng(M.ring.vars(), MonomialOrder::degrevlex(M.ring.vars()->nvars()),
               budget);
  auto basis = detail::submodule_basis(eng, M.ring, M.relations, M.rank, {});
  for (const auto& e : detail::unit_vectors(M.ring, M.rank))
    if (!detail::in_submodule(eng, basis, e, M.ring.level)) return false;
  return true;
}

namespace detail {

// Canonical columns for the next resolution step: the reduced module basis
// of the kernel generators, with columns that vanish in the quotient pruned
// so resolutions of modules with finite projective dimension terminate.
inline std::vector<VecPoly> resolution_columns(const std::vector<VecPoly>& gens,
                                               int rank, const LevelRing& ring,
                                               std::uint64_t budget) {
  if (gens.empty()) return {};
  unsigned n = ring.level;
  GBEngine eng(ring.vars(), MonomialOrder::degrevlex(ring.vars()->nvars()),
               budget);
  std::vector<MPoly> inputs;
  for (const auto& v : gens) {
    VecPoly scaled;
    for (const auto& c : v) scaled.push_back(c.rescale(n));
    inputs.push_back(eng.from_vec(scaled));
  }
  append_kills(eng, ring, {}, rank, inputs);
  auto basis = eng.reduced_basis(eng.compute(inputs).basis);

  // Scalar basis of the relation ideal for the pruning test.
  std::vector<MPoly> relbasis;
  if (!ring.base.relations.empty()) {
    std::vector<MPoly> rin;
    for (const auto& r : ring.relations_rescaled()) rin.push_back(eng.from_poly(r));
    relbasis = eng.compute(rin).basis;
  }
  std::vector<VecPoly> out;
  for (const auto& g : basis) {
    VecPoly v = eng.to_vec(g, rank);
    bool vanishes = true;
    for (const auto& c : v) {
      if (c.is_zero()) continue;
      if (relbasis.empty() || !eng.normal_form(eng.from_poly(c), relbasis).empty()) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) continue;
    VecPoly frac;
    for (const auto& c : v) frac.push_back(c.pth_root(n));
    out.push_back(std::move(frac));
  }
  return out;
}

}  // namespace detail

// Free resolution of a cyclic module by iterated syzygies, exact in degrees
// 1..cap with H_0 the module; deterministic.
inline FreeComplex free_resolution(const CyclicModule& M, int cap,
                                   std::uint64_t budget = kDefaultPairBudget) {
  FreeComplex C{M.ring, {1}, {}};
  for (const auto& g : M.modulus) M.ring.check_element(g);
  if (cap <= 0 || M.modulus.empty()) return C;
  PolyMatrix d1 = PolyMatrix::make(M.ring.vars(), 1, static_cast<int>(M.modulus.size()));
  for (std::size_t c = 0; c < M.modulus.size(); ++c) d1.at(0, static_cast<int>(c)) = M.modulus[c];
  C.ranks.push_back(d1.cols);
  C.d.push_back(std::move(d1));
  for (int k = 2; k <= cap; ++k) {
    auto ker = detail::module_kernel(C.d.back().columns(),
                                     C.ranks[static_cast<std::size_t>(k - 2)],
                                     M.ring, {}, budget);
    auto cols = detail::resolution_columns(ker, C.ranks[static_cast<std::size_t>(k - 1)],
                                           M.ring, budget);
    if (cols.empty()) break;
    PolyMatrix dk = PolyMatrix::make(M.ring.vars(),
                                     C.ranks[static_cast<std::size_t>(k - 1)],
                                     static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (int r = 0; r < dk.rows; ++r)
        dk.at(r, static_cast<int>(c)) = cols[c][static_cast<std::size_t>(r)];
    C.ranks.push_back(dk.cols);
    C.d.push_back(std::move(dk));
  }
  return C;
}

struct TorResult {
  int index = 0;
  PresentedModule presentation;
  std::optional<Int> dimension;
  unsigned level = 0;
};

inline TorResult tor(const CyclicModule& M, const CyclicModule& N, int i,
                     std::uint64_t budget = kDefaultPairBudget) {
  if (!(M.ring == N.ring)) throw MismatchError("tor: modules over different rings");
  FreeComplex F = free_resolution(M, i + 1, budget);
  PresentedModule H = homology_at(F, i, N.modulus, budget);
  auto dim = fp_dimension(H, budget);
  return {i, std::move(H), std::move(dim), M.ring.level};
}

struct ExtResult {
  int index = 0;
  PresentedModule presentation;
  std::optional<Int> dimension;
  unsigned level = 0;
};

inline ExtResult ext(const CyclicModule& M, const CyclicModule& N, int i,
                     std::uint64_t budget = kDefaultPairBudget) {
  if (!(M.ring == N.ring)) throw MismatchError("ext: modules over different rings");
  FreeComplex F = free_resolution(M, i + 1, budget);
  int r = F.length();
  if (i > r) return {i, {M.ring, 0, {}}, Int(0), M.ring.level};
  FreeComplex D = dual_complex(F);
  PresentedModule H = homology_at(D, r - i, N.modulus, budget);
  auto dim = fp_dimension(H, budget);
  return {i, std::move(H), std::move(dim), M.ring.level};
}

// Grade of an ideal (or sequence) on a module.  `value` is the least index
// with nonvanishing cohomology; `infinite` marks an exact all-vanish verdict
// (the sequence generates the unit ideal on the module); neither set means
// the scan was inconclusive within `window`.
struct GradeResult {
  std::optional<int> value;
  bool infinite = false;
  int window = 0;
  std::string method;
};

// Least i with H^i(Hom(K(seq), M)) nonzero; exact, since the Koszul complex
// is finite.
inline GradeResult koszul_grade(const std::vector<PerfPoly>& seq,
                                const CyclicModule& M,
                                std::uint64_t budget = kDefaultPairBudget) {
  FreeComplex K = koszul_complex(seq, M.ring);
  FreeComplex D = dual_complex(K);
  int r = static_cast<int>(seq.size());
  for (int i = 0; i <= r; ++i)
    if (!homology_is_zero(D, r - i, M.modulus, budget))
      return {i, false, r, "koszul"};
  return {std::nullopt, true, r, "koszul"};
}

// Cech cohomology probed through the power-window colimit: a class at power
// t = 1 survives to the window end iff its image there misses the image
// submodule.  The verdict is "nonvanishing within the window"; a clean scan
// is inconclusive, never a vanishing claim.
inline GradeResult cech_grade(const std::vector<PerfPoly>& seq,
                              const CyclicModule& M, int power_window = 3,
                              std::uint64_t budget = kDefaultPairBudget) {
  int r = static_cast<int>(seq.size());
  int T = power_window;
  if (r == 0 || T < 2) return {std::nullopt, false, T, "cech"};
  std::vector<PerfPoly> seqT;
  for (const auto& f : seq) seqT.push_back(f.pow(static_cast<unsigned long>(T)));
  FreeComplex K1 = koszul_complex(seq, M.ring);
  FreeComplex KT = koszul_complex(seqT, M.ring);
  auto subsets = koszul_subsets(static_cast<std::size_t>(r));
  for (int i = 0; i <= r; ++i) {
    int rank_i = K1.ranks[static_cast<std::size_t>(i)];
    std::vector<VecPoly> kernel;
    if (i == r) {
      kernel = detail::unit_vectors(M.ring, rank_i);
    } else {
      PolyMatrix delta = K1.d[static_cast<std::size_t>(i)].transpose();
      kernel = detail::module_kernel(delta.columns(), delta.rows, M.ring,
                                     M.modulus, budget);
    }
    if (kernel.empty()) continue;
    // Transition map to power T: multiply the S-component by
    // (prod_{j in S} f_j)^(T-1).
    std::vector<PerfPoly> mult;
    for (std::uint32_t S : subsets[static_cast<std::size_t>(i)]) {
      PerfPoly m = PerfPoly::constant(M.ring.vars(), 1);
      for (int j = 0; j < r; ++j)
        if (S & (1u << j)) m = m * seq[static_cast<std::size_t>(j)];
      mult.push_back(m.pow(static_cast<unsigned long>(T - 1)));
    }
    std::vector<VecPoly> image;
    if (i >= 1)
      image = KT.d[static_cast<std::size_t>(i - 1)].transpose().columns();
    GBEngine eng(M.ring.vars(), MonomialOrder::degrevlex(M.ring.vars()->nvars()),
                 budget);
    auto basis = detail::submodule_basis(eng, M.ring, image, rank_i, M.modulus);
    for (const auto& k : kernel) {
      VecPoly moved;
      for (std::size_t s = 0; s < k.size(); ++s) moved.push_back(k[s] * mult[s]);
      if (!detail::in_submodule(eng, basis, moved, M.ring.level))
        return {i, false, T, "cech"};
    }
  }
  return {std::nullopt, false, T, "cech"};
}

// Least i with Ext^i(ring/I, M) nonzero, scanned through a resolution of
// bounded length.  Exact when the resolution terminates inside the window.
inline GradeResult ext_grade(const IdealHandle& I, const CyclicModule& M,
                             int window = 4,
                             std::uint64_t budget = kDefaultPairBudget) {
  if (!(I.ring == M.ring))
    throw MismatchError("ext_grade: ideal and module over different rings");
  FreeComplex F = free_resolution({I.ring, I.gens}, window + 1, budget);
  int r = F.length();
  bool complete = r < window + 1;
  FreeComplex D = dual_complex(F);
  int upper = complete ? r : window;
  for (int i = 0; i <= upper; ++i)
    if (!homology_is_zero(D, r - i, M.modulus, budget))
      return {i, false, window, "ext"};
  if (complete) return {std::nullopt, true, window, "ext"};
  return {std::nullopt, false, window, "ext"};
}

}  // namespace perfchar
