#pragma once

#include <cstdint>

#include "perfchar/errors.hpp"

namespace perfchar {

// A validated prime characteristic.  Desk-scale primes only; validation is
// deterministic trial division.
struct PrimeChar {
  std::int64_t p = 0;

  PrimeChar() = default;
  explicit PrimeChar(std::int64_t prime) : p(prime) {
    if (prime < 2) throw Error("characteristic must be a prime >= 2");
    for (std::int64_t d = 2; d * d <= prime; ++d)
      if (prime % d == 0)
        throw Error("characteristic " + std::to_string(prime) +
                    " is not prime");
  }

  bool operator==(const PrimeChar& o) const { return p == o.p; }
  bool operator!=(const PrimeChar& o) const { return p != o.p; }
};

inline std::int64_t fp_normalize(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

inline std::int64_t fp_add(std::int64_t a, std::int64_t b, std::int64_t p) {
  return (a + b) % p;
}

inline std::int64_t fp_sub(std::int64_t a, std::int64_t b, std::int64_t p) {
  return fp_normalize(a - b, p);
}

inline std::int64_t fp_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return (a * b) % p;
}

inline std::int64_t fp_pow(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  a = fp_normalize(a, p);
  while (e > 0) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::int64_t fp_inv(std::int64_t a, std::int64_t p) {
  a = fp_normalize(a, p);
  if (a == 0) throw Error("division by zero in F_p");
  return fp_pow(a, p - 2, p);
}

// Residue with its characteristic attached.  Handy for generic code; the
// polynomial layer stores bare residues and one PrimeChar per polynomial.
struct FpElem {
  std::int64_t v = 0;
  PrimeChar ch;

  FpElem() = default;
  FpElem(std::int64_t value, PrimeChar c) : v(fp_normalize(value, c.p)), ch(c) {}

  FpElem operator+(const FpElem& o) const { return {fp_add(v, o.v, ch.p), ch}; }
  FpElem operator-(const FpElem& o) const { return {fp_sub(v, o.v, ch.p), ch}; }
  FpElem operator*(const FpElem& o) const { return {fp_mul(v, o.v, ch.p), ch}; }
  FpElem inv() const { return {fp_inv(v, ch.p), ch}; }
  bool operator==(const FpElem& o) const { return v == o.v && ch == o.ch; }
  bool operator!=(const FpElem& o) const { return !(*this == o); }
};

}  // namespace perfchar
