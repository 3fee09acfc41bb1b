#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perfchar/homology.hpp"
#include "perfchar/ideal_ops.hpp"

namespace perfchar {

// Exponent e with q = p^e; rejects anything that is not a p-power.
inline unsigned p_power_exponent(Int q, std::int64_t p) {
  if (q < 1) throw NotPPower(q.str() + " is not a power of " + std::to_string(p));
  unsigned e = 0;
  while (q > 1) {
    if (q % p != 0)
      throw NotPPower(q.str() + " is not a power of " + std::to_string(p));
    q /= p;
    ++e;
  }
  return e;
}

// Frobenius bracket power: the ideal generated by g^q for each generator.
inline IdealHandle bracket_power(const IdealHandle& I, const Int& q) {
  unsigned e = p_power_exponent(q, I.ring.ch().p);
  std::vector<PerfPoly> gens;
  gens.reserve(I.gens.size());
  for (const auto& g : I.gens) gens.push_back(g.frobenius(e));
  return make_ideal(I.ring, std::move(gens));
}

// Frobenius pullback of a cyclic module: ring/I becomes ring/I^{[p^n]}.
inline CyclicModule peskine_szpiro(const CyclicModule& M, unsigned n) {
  std::vector<PerfPoly> mods;
  mods.reserve(M.modulus.size());
  for (const auto& g : M.modulus) mods.push_back(g.frobenius(n));
  return {M.ring, std::move(mods)};
}

struct HKRow {
  unsigned n = 0;
  Int q;        // p^n
  Int length;   // colength of the bracket power in the quotient ring
  Rat ratio;    // length / q^d
};

struct HKRecord {
  LevelRing ring;
  std::vector<PerfPoly> ideal;
  int d = 0;  // Krull dimension of the ambient quotient ring
  std::vector<HKRow> rows;
};

inline HKRecord hk_sequence(const IdealHandle& I, unsigned n_max,
                            std::optional<int> dim_override = {},
                            std::uint64_t budget = kDefaultPairBudget) {
  HKRecord rec{I.ring, I.gens, 0, {}};
  rec.d = dim_override ? *dim_override
                       : krull_dimension(make_ideal(I.ring, {}), budget);
  std::int64_t p = I.ring.ch().p;
  Int q = 1;
  for (unsigned n = 0; n <= n_max; ++n) {
    auto len = colength(bracket_power(I, q), budget);
    if (!len)
      throw InfiniteColength("bracket power at n = " + std::to_string(n) +
                             " has infinite colength");
    Int qd = 1;
    for (int k = 0; k < rec.d; ++k) qd *= q;
    rec.rows.push_back({n, q, *len, Rat(*len) / Rat(qd)});
    q *= p;
  }
  return rec;
}

namespace detail {

// Exact rational Gaussian elimination; false when the matrix is singular.
inline bool rat_solve(std::vector<std::vector<Rat>> A, std::vector<Rat> rhs,
                      std::vector<Rat>& out) {
  std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) return false;
    std::swap(A[c], A[piv]);
    std::swap(rhs[c], rhs[piv]);
    Rat inv = Rat(1) / A[c][c];
    for (auto& x : A[c]) x *= inv;
    rhs[c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rat f = A[r][c];
      for (std::size_t j = 0; j < n; ++j) A[r][j] -= f * A[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  out = std::move(rhs);
  return true;
}

}  // namespace detail

// Candidate for the leading colength coefficient, obtained by solving
// length_n = a_d q^d + ... + a_0 exactly on the trailing rows and verifying
// the rest.  Any nonzero residual withdraws the candidate.
struct EHKEstimate {
  bool conclusive = false;
  std::optional<Rat> candidate;      // coefficient of q^d when conclusive
  std::vector<Rat> coefficients;     // a_d ... a_0 when a solve succeeded
  std::vector<Rat> residuals;        // verification rows, in record order
};

inline EHKEstimate e_hk_estimate(const HKRecord& rec) {
  std::size_t m = rec.rows.size();
  if (m < 3) throw InsufficientRows("need at least 3 rows, have " +
                                    std::to_string(m));
  std::size_t k = static_cast<std::size_t>(rec.d) + 1;
  std::size_t solve_span = (m + 1) / 2;
  EHKEstimate est;
  if (solve_span < k) return est;  // not enough trailing rows to determine

  // Solve from the last k rows; every earlier row verifies.
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> rhs;
  for (std::size_t i = m - k; i < m; ++i) {
    std::vector<Rat> row;
    Int qpow = 1;
    for (int j = 0; j <= rec.d; ++j) {
      row.push_back(Rat(qpow));
      qpow *= rec.rows[i].q;
    }
    std::reverse(row.begin(), row.end());  // a_d first
    A.push_back(std::move(row));
    rhs.push_back(Rat(rec.rows[i].length));
  }
  if (!detail::rat_solve(std::move(A), std::move(rhs), est.coefficients))
    return est;

  bool clean = true;
  for (std::size_t i = 0; i < m - k; ++i) {
    Rat fit = 0;
    Int qpow = 1;
    for (int j = 0; j <= rec.d; ++j) {
      fit += est.coefficients[static_cast<std::size_t>(rec.d - j)] * Rat(qpow);
      qpow *= rec.rows[i].q;
    }
    Rat res = Rat(rec.rows[i].length) - fit;
    if (res != 0) clean = false;
    est.residuals.push_back(std::move(res));
  }
  if (clean) {
    est.conclusive = true;
    est.candidate = est.coefficients.front();
  }
  return est;
}

// Exact fit of length_n = sum_i b_i p^{i n} from the first D+1 data points,
// with the remaining points held out for verification.
struct SeibertFit {
  std::vector<Rat> b;           // b_0 ... b_D
  std::vector<Rat> residuals;   // held-out rows, in order
  bool exact = false;           // all residuals vanish
  Rat next_prediction;          // fitted value at the row after the data
};

inline SeibertFit seibert_fit(const std::vector<Rat>& values, int D,
                              std::int64_t p, unsigned first_index = 0) {
  if (static_cast<int>(values.size()) < D + 2)
    throw InsufficientRows("need at least D + 2 points for a held-out row");
  auto node = [&](unsigned n) {
    Int x = 1;
    for (unsigned k = 0; k < n; ++k) x *= p;
    return x;
  };
  auto fitted = [&](const std::vector<Rat>& b, unsigned n) {
    Rat acc = 0;
    Int xpow = 1;
    Int x = node(n);
    for (const auto& bi : b) {
      acc += bi * Rat(xpow);
      xpow *= x;
    }
    return acc;
  };
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> rhs;
  for (int r = 0; r <= D; ++r) {
    std::vector<Rat> row;
    Int x = node(first_index + static_cast<unsigned>(r));
    Int xpow = 1;
    for (int i = 0; i <= D; ++i) {
      row.push_back(Rat(xpow));
      xpow *= x;
    }
    A.push_back(std::move(row));
    rhs.push_back(values[static_cast<std::size_t>(r)]);
  }
  SeibertFit fit;
  if (!detail::rat_solve(std::move(A), std::move(rhs), fit.b))
    throw SingularSystem("Seibert nodes collide");
  fit.exact = true;
  for (std::size_t r = static_cast<std::size_t>(D) + 1; r < values.size(); ++r) {
    Rat res = values[r] - fitted(fit.b, first_index + static_cast<unsigned>(r));
    if (res != 0) fit.exact = false;
    fit.residuals.push_back(std::move(res));
  }
  fit.next_prediction =
      fitted(fit.b, first_index + static_cast<unsigned>(values.size()));
  return fit;
}

}  // namespace perfchar
