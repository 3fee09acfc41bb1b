#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "perfchar/ideal_ops.hpp"

namespace perfchar {

// Rectangular matrix of ring elements, row-major; rows index the target free
// module, columns the source.
struct PolyMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<PerfPoly> entries;

  static PolyMatrix make(const PolyRingPtr& ring, int rows, int cols) {
    if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
    PolyMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                     PerfPoly::zero(ring));
    return m;
  }

  const PerfPoly& at(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw Error("matrix index out of range");
    return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                   static_cast<std::size_t>(c)];
  }
  PerfPoly& at(int r, int c) {
    return const_cast<PerfPoly&>(static_cast<const PolyMatrix&>(*this).at(r, c));
  }

  PolyMatrix transpose() const {
    if (entries.empty()) {
      PolyMatrix t;
      t.rows = cols;
      t.cols = rows;
      return t;
    }
    PolyMatrix t = make(entries.front().ring(), cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  PolyMatrix mul(const PolyMatrix& o) const {
    if (cols != o.rows) throw MismatchError("matrix product shape mismatch");
    PolyMatrix out = make(entries.empty() ? o.entries.front().ring()
                                          : entries.front().ring(),
                          rows, o.cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < o.cols; ++c) {
        PerfPoly acc = out.at(r, c);
        for (int k = 0; k < cols; ++k) acc = acc + at(r, k) * o.at(k, c);
        out.at(r, c) = std::move(acc);
      }
    return out;
  }

  VecPoly column(int c) const {
    VecPoly v;
    v.reserve(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) v.push_back(at(r, c));
    return v;
  }

  std::vector<VecPoly> columns() const {
    std::vector<VecPoly> out;
    out.reserve(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) out.push_back(column(c));
    return out;
  }

  VecPoly apply(const VecPoly& v) const {
    if (static_cast<int>(v.size()) != cols)
      throw MismatchError("matrix-vector shape mismatch");
    VecPoly out;
    out.reserve(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
      PerfPoly acc = rows > 0 && cols > 0
                         ? PerfPoly::zero(entries.front().ring())
                         : PerfPoly();
      for (int c = 0; c < cols; ++c) acc = acc + at(r, c) * v[c];
      out.push_back(std::move(acc));
    }
    return out;
  }

  bool operator==(const PolyMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }
};

// A bounded complex F_N -> ... -> F_1 -> F_0 of free modules over a level
// ring.  d[i] is the differential F_{i+1} -> F_i.
struct FreeComplex {
  LevelRing ring;
  std::vector<int> ranks;
  std::vector<PolyMatrix> d;

  int length() const { return static_cast<int>(ranks.size()) - 1; }
};

inline bool complex_shapes_ok(const FreeComplex& C) {
  if (C.ranks.empty()) return false;
  if (C.d.size() + 1 != C.ranks.size()) return false;
  for (std::size_t i = 0; i < C.d.size(); ++i)
    if (C.d[i].rows != C.ranks[i] || C.d[i].cols != C.ranks[i + 1]) return false;
  return true;
}

// d composed with d vanishes in the quotient: every entry of d_i * d_{i+1}
// lies in the relation ideal.
inline bool complex_check(const FreeComplex& C,
                          std::uint64_t budget = kDefaultPairBudget) {
  if (!complex_shapes_ok(C)) return false;
  bool free_ring = C.ring.base.relations.empty();
  IdealHandle zero = make_ideal(C.ring, {});
  for (std::size_t i = 0; i + 1 < C.d.size(); ++i) {
    PolyMatrix prod = C.d[i].mul(C.d[i + 1]);
    for (const auto& e : prod.entries) {
      if (free_ring ? !e.is_zero() : !membership(e, zero, false, budget).member)
        return false;
    }
  }
  return true;
}

// Subsets of {0..r-1} as bitmasks, grouped by cardinality, ascending within
// each group.  This fixes the Koszul bases once and for all.
inline std::vector<std::vector<std::uint32_t>> koszul_subsets(std::size_t r) {
  if (r > 20) throw ResourceExceeded("Koszul sequence too long");
  std::vector<std::vector<std::uint32_t>> by_size(r + 1);
  for (std::uint32_t m = 0; m < (1u << r); ++m)
    by_size[static_cast<std::size_t>(__builtin_popcount(m))].push_back(m);
  return by_size;
}

// Exterior-algebra Koszul complex on a sequence: rank of degree k is
// binomial(r, k); the differential takes the basis vector of S to the
// alternating sum over j in S of f_j times the basis vector of S minus j.
inline FreeComplex koszul_complex(const std::vector<PerfPoly>& seq,
                                  const LevelRing& ring) {
  for (const auto& f : seq) ring.check_element(f);
  std::size_t r = seq.size();
  auto subsets = koszul_subsets(r);
  FreeComplex C{ring, {}, {}};
  for (std::size_t k = 0; k <= r; ++k)
    C.ranks.push_back(static_cast<int>(subsets[k].size()));
  auto index_in = [&](std::size_t k, std::uint32_t mask) {
    const auto& v = subsets[k];
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), mask) -
                            v.begin());
  };
  for (std::size_t k = 1; k <= r; ++k) {
    PolyMatrix dk = PolyMatrix::make(ring.vars(), C.ranks[k - 1], C.ranks[k]);
    for (std::size_t col = 0; col < subsets[k].size(); ++col) {
      std::uint32_t S = subsets[k][col];
      int sign = 1;
      for (std::size_t j = 0; j < r; ++j) {
        if (!(S & (1u << j))) continue;
        int row = index_in(k - 1, S & ~(1u << j));
        dk.at(row, static_cast<int>(col)) = seq[j].scaled(sign);
        sign = -sign;
      }
    }
    C.d.push_back(std::move(dk));
  }
  return C;
}

// Hom(-, R) of a complex, reindexed as a chain complex: the degree-j module
// is the dual of F_{r-j} and the differentials are the transposes in reverse
// order, so H_j(dual) is the j-th cohomology from the top.
inline FreeComplex dual_complex(const FreeComplex& C) {
  int r = C.length();
  FreeComplex D{C.ring, {}, {}};
  for (int j = 0; j <= r; ++j) D.ranks.push_back(C.ranks[static_cast<std::size_t>(r - j)]);
  for (int j = 0; j < r; ++j)
    D.d.push_back(C.d[static_cast<std::size_t>(r - 1 - j)].transpose());
  return D;
}

// Total complex of a tensor product of two complexes.  Degree n is the sum
// of blocks A_i (x) B_j with i + j = n, ordered by decreasing left degree;
// the differential acts as d_A (x) 1 plus (-1)^i 1 (x) d_B on the block with
// left degree i.
inline FreeComplex tensor_total_complex(const FreeComplex& A,
                                        const FreeComplex& B) {
  if (!(A.ring == B.ring))
    throw MismatchError("tensor: complexes over different rings");
  int la = A.length(), lb = B.length();
  int L = la + lb;
  // blocks[n]: (left degree, offset) pairs, left degree descending.
  std::vector<std::vector<std::pair<int, int>>> blocks(static_cast<std::size_t>(L) + 1);
  FreeComplex T{A.ring, {}, {}};
  for (int n = 0; n <= L; ++n) {
    int off = 0;
    for (int i = std::min(n, la); i >= 0 && n - i <= lb; --i) {
      blocks[static_cast<std::size_t>(n)].push_back({i, off});
      off += A.ranks[static_cast<std::size_t>(i)] *
             B.ranks[static_cast<std::size_t>(n - i)];
    }
    T.ranks.push_back(off);
  }
  auto offset_of = [&](int n, int i) {
    for (const auto& [bi, off] : blocks[static_cast<std::size_t>(n)])
      if (bi == i) return off;
    throw Error("tensor block lookup failed");
  };
  for (int n = 1; n <= L; ++n) {
    PolyMatrix dn = PolyMatrix::make(A.ring.vars(), T.ranks[static_cast<std::size_t>(n - 1)],
                                     T.ranks[static_cast<std::size_t>(n)]);
    for (const auto& [i, src] : blocks[static_cast<std::size_t>(n)]) {
      int j = n - i;
      int ra = A.ranks[static_cast<std::size_t>(i)];
      int rb = B.ranks[static_cast<std::size_t>(j)];
      if (i >= 1) {
        int tgt = offset_of(n - 1, i - 1);
        const PolyMatrix& da = A.d[static_cast<std::size_t>(i - 1)];
        for (int ar = 0; ar < da.rows; ++ar)
          for (int ac = 0; ac < ra; ++ac) {
            if (da.at(ar, ac).is_zero()) continue;
            for (int b = 0; b < rb; ++b)
              dn.at(tgt + ar * rb + b, src + ac * rb + b) = da.at(ar, ac);
          }
      }
      if (j >= 1) {
        int tgt = offset_of(n - 1, i);
        int sign = (i % 2 == 0) ? 1 : -1;
        const PolyMatrix& db = B.d[static_cast<std::size_t>(j - 1)];
        int rb1 = B.ranks[static_cast<std::size_t>(j - 1)];
        for (int a = 0; a < ra; ++a)
          for (int br = 0; br < db.rows; ++br)
            for (int bc = 0; bc < rb; ++bc) {
              if (db.at(br, bc).is_zero()) continue;
              dn.at(tgt + a * rb1 + br, src + a * rb + bc) =
                  db.at(br, bc).scaled(sign);
            }
      }
    }
    T.d.push_back(std::move(dn));
  }
  return T;
}

inline FreeComplex tensor_total_complex(const std::vector<FreeComplex>& list) {
  if (list.empty()) throw Error("tensor of an empty list of complexes");
  FreeComplex acc = list.front();
  for (std::size_t i = 1; i < list.size(); ++i)
    acc = tensor_total_complex(acc, list[i]);
  return acc;
}

}  // namespace perfchar
