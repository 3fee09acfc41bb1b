#pragma once

#include <string>

#include "perfchar/bigint.hpp"
#include "perfchar/errors.hpp"
#include "perfchar/prime.hpp"

namespace perfchar {

// Nonnegative element of Z[1/p]: num / p^level.  Kept normalized so that
// level == 0 or p does not divide num; zero is stored as (0, 0).  The prime
// is not stored here, so every operation that renormalizes takes it as an
// argument.
struct PExponent {
  Int num = 0;
  unsigned level = 0;

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return level == 0; }

  bool operator==(const PExponent& o) const {
    return num == o.num && level == o.level;
  }
  bool operator!=(const PExponent& o) const { return !(*this == o); }
};

inline PExponent pexp_normalized(Int num, unsigned level, const PrimeChar& ch) {
  if (num < 0) throw Error("negative exponent");
  if (num == 0) return {};
  while (level > 0 && num % ch.p == 0) {
    num /= ch.p;
    --level;
  }
  return {std::move(num), level};
}

inline PExponent pexp_int(Int n) {
  if (n < 0) throw Error("negative exponent");
  return {std::move(n), 0};
}

inline PExponent pexp_add(const PExponent& a, const PExponent& b,
                          const PrimeChar& ch) {
  unsigned l = a.level > b.level ? a.level : b.level;
  Int n = a.num * pow_p(ch.p, l - a.level) + b.num * pow_p(ch.p, l - b.level);
  return pexp_normalized(std::move(n), l, ch);
}

// Requires a >= b; used for monomial division on integer exponents and for
// exact fractional differences.
inline PExponent pexp_sub(const PExponent& a, const PExponent& b,
                          const PrimeChar& ch) {
  unsigned l = a.level > b.level ? a.level : b.level;
  Int n = a.num * pow_p(ch.p, l - a.level) - b.num * pow_p(ch.p, l - b.level);
  if (n < 0) throw Error("exponent subtraction went negative");
  return pexp_normalized(std::move(n), l, ch);
}

inline int pexp_cmp(const PExponent& a, const PExponent& b,
                    const PrimeChar& ch) {
  unsigned l = a.level > b.level ? a.level : b.level;
  Int lhs = a.num * pow_p(ch.p, l - a.level);
  Int rhs = b.num * pow_p(ch.p, l - b.level);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

// Multiply by p^k (Frobenius direction).
inline PExponent pexp_scale_pk(const PExponent& a, unsigned k,
                               const PrimeChar& ch) {
  if (a.num == 0) return {};
  if (k >= a.level) return {a.num * pow_p(ch.p, k - a.level), 0};
  return {a.num, a.level - k};
}

// Divide by p^k (p-th root direction).
inline PExponent pexp_root_pk(const PExponent& a, unsigned k,
                              const PrimeChar& ch) {
  return pexp_normalized(a.num, a.level + k, ch);
}

inline Rat pexp_to_rat(const PExponent& a, const PrimeChar& ch) {
  return Rat(a.num, pow_p(ch.p, a.level));
}

inline std::string pexp_str(const PExponent& a, const PrimeChar& ch) {
  if (a.level == 0) return a.num.str();
  return "(" + a.num.str() + "/" + pow_p(ch.p, a.level).str() + ")";
}

}  // namespace perfchar
