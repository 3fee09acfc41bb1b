#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "perfchar/parse.hpp"
#include "perfchar/poly.hpp"

// Shared test helpers: a fixed-seed RNG so failures reproduce, small random
// polynomial generators, and a dense F_p Gaussian elimination used as an
// independent linear-algebra oracle.

namespace ptest {

using perfchar::Int;
using perfchar::PerfPoly;
using perfchar::PExponent;
using perfchar::PolyRingPtr;

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eedbeef) {
  return std::mt19937_64(seed);
}

inline int rnd(std::mt19937_64& rng, int lo, int hi) {
  return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random polynomial with <= max_terms terms, exponents num <= max_num at
// levels <= max_level.
inline PerfPoly random_poly(std::mt19937_64& rng, const PolyRingPtr& ring,
                            int max_terms, int max_num, int max_level) {
  std::vector<perfchar::Term> ts;
  int nterms = rnd(rng, 1, max_terms);
  for (int t = 0; t < nterms; ++t) {
    perfchar::PerfMonomial m;
    std::vector<perfchar::PerfMonomial::Entry> es;
    for (int v = 0; v < ring->nvars(); ++v) {
      if (rnd(rng, 0, 1) == 0) continue;
      int num = rnd(rng, 0, max_num);
      int lev = rnd(rng, 0, max_level);
      PExponent e = perfchar::pexp_normalized(Int(num), static_cast<unsigned>(lev),
                                              ring->ch);
      if (!e.is_zero()) es.push_back({v, e});
    }
    std::int64_t c = rnd(rng, 0, static_cast<int>(ring->ch.p) - 1);
    ts.push_back({c, perfchar::PerfMonomial::from_entries(es)});
  }
  return PerfPoly::from_terms(ring, std::move(ts));
}

// Nonzero variant.
inline PerfPoly random_nonzero_poly(std::mt19937_64& rng,
                                    const PolyRingPtr& ring, int max_terms,
                                    int max_num, int max_level) {
  for (;;) {
    PerfPoly f = random_poly(rng, ring, max_terms, max_num, max_level);
    if (!f.is_zero()) return f;
  }
}

// Dense F_p linear algebra: row-reduce `rows` in place, return rank.
inline int fp_row_reduce(std::vector<std::vector<std::int64_t>>& rows,
                         std::int64_t p) {
  if (rows.empty()) return 0;
  std::size_t ncols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    std::int64_t inv = perfchar::fp_inv(rows[r][c], p);
    for (std::size_t j = 0; j < ncols; ++j)
      rows[r][j] = perfchar::fp_mul(perfchar::fp_normalize(rows[r][j], p), inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      std::int64_t f = perfchar::fp_normalize(rows[i][c], p);
      if (f == 0) continue;
      for (std::size_t j = 0; j < ncols; ++j)
        rows[i][j] = perfchar::fp_sub(perfchar::fp_normalize(rows[i][j], p),
                                      perfchar::fp_mul(f, rows[r][j], p), p);
    }
    ++r;
  }
  return static_cast<int>(r);
}

// Is `target` in the F_p row span of `rows`?
inline bool fp_in_span(const std::vector<std::vector<std::int64_t>>& rows,
                       const std::vector<std::int64_t>& target,
                       std::int64_t p) {
  auto a = rows;
  int rank = fp_row_reduce(a, p);
  a.push_back(target);
  int rank2 = fp_row_reduce(a, p);
  return rank2 == rank;
}

}  // namespace ptest
