#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace perfchar {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int& base, unsigned long exp) {
  Int r = 1;
  Int b = base;
  unsigned long e = exp;
  while (e > 0) {
    if (e & 1UL) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Int pow_p(std::int64_t p, unsigned long k) { return int_pow(Int(p), k); }

}  // namespace perfchar
