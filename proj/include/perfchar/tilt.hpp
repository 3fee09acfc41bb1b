#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perfchar/witt.hpp"

namespace perfchar {

// Length-L window of the inverse limit of A/pA along Frobenius: sequences
// (r_0, ..., r_{L-1}) with r_{i+1}^p = r_i.  The reduction A/pA is always an
// F_p-algebra here, so Frobenius is additive and both operations are
// coordinatewise.  Two flavours of A are supported: Z/p^L (reduction F_p,
// zero variables) and a characteristic-p perfection truncation (reduction is
// the ring itself).
struct TiltRing {
  std::int64_t p = 0;
  int length = 0;
  PerfCoeffRing coeff;  // A/pA with normal forms
  bool perfect = true;  // no extra modulus: head lifts are inverse to heads
};

inline TiltRing tilt(const RingPresentation& base, unsigned level, int length,
                     std::vector<PerfPoly> modulus = {}) {
  if (length < 1) throw Error("tilt length must be positive");
  bool perfect = modulus.empty();
  return TiltRing{base.ring->ch.p, length,
                  PerfCoeffRing(LevelRing{base, level}, std::move(modulus)),
                  perfect};
}

inline TiltRing tilt_of_zmod(std::int64_t p, int length) {
  if (length < 1) throw Error("tilt length must be positive");
  return TiltRing{p, length,
                  PerfCoeffRing(LevelRing{
                      make_presentation(PrimeChar(p), {}, {}), 0}),
                  true};
}

struct FontaineElement {
  std::vector<PerfPoly> coords;  // r_0 first
};

// Full-tuple construction; every compatibility r_{i+1}^p = r_i is checked
// exactly (modulo the reduction's relations).
inline FontaineElement fontaine_element(const TiltRing& T,
                                        std::vector<PerfPoly> coords) {
  if (static_cast<int>(coords.size()) != T.length)
    throw MismatchError("expected " + std::to_string(T.length) +
                        " coordinates");
  for (auto& c : coords) c = T.coeff.normalize(c);
  for (int i = 0; i + 1 < T.length; ++i) {
    auto powed = T.coeff.pow(coords[static_cast<std::size_t>(i) + 1],
                             static_cast<unsigned long>(T.p));
    if (!(powed == coords[static_cast<std::size_t>(i)]))
      throw RelationViolated("coordinate compatibility failed",
                             static_cast<std::size_t>(i) + 1);
  }
  return FontaineElement{std::move(coords)};
}

// Head-only construction, available when the reduction has p-th roots for
// the requested depth; the rest of the tuple is forced.
inline FontaineElement fontaine_lift(const TiltRing& T, const PerfPoly& r0) {
  std::vector<PerfPoly> coords;
  coords.reserve(static_cast<std::size_t>(T.length));
  for (int i = 0; i < T.length; ++i)
    coords.push_back(T.coeff.normalize(r0.pth_root(static_cast<unsigned>(i))));
  return fontaine_element(T, std::move(coords));
}

inline const PerfPoly& fontaine_head(const FontaineElement& a) {
  return a.coords.front();
}

namespace detail {

inline void tilt_compat(const TiltRing& T, const FontaineElement& a) {
  if (static_cast<int>(a.coords.size()) != T.length)
    throw MismatchError("element does not belong to this tilt window");
}

}  // namespace detail

inline FontaineElement tilt_add(const TiltRing& T, const FontaineElement& a,
                                const FontaineElement& b) {
  detail::tilt_compat(T, a);
  detail::tilt_compat(T, b);
  std::vector<PerfPoly> coords;
  for (int i = 0; i < T.length; ++i)
    coords.push_back(T.coeff.add(a.coords[static_cast<std::size_t>(i)],
                                 b.coords[static_cast<std::size_t>(i)]));
  return FontaineElement{std::move(coords)};
}

inline FontaineElement tilt_mul(const TiltRing& T, const FontaineElement& a,
                                const FontaineElement& b) {
  detail::tilt_compat(T, a);
  detail::tilt_compat(T, b);
  std::vector<PerfPoly> coords;
  for (int i = 0; i < T.length; ++i)
    coords.push_back(T.coeff.mul(a.coords[static_cast<std::size_t>(i)],
                                 b.coords[static_cast<std::size_t>(i)]));
  return FontaineElement{std::move(coords)};
}

inline FontaineElement tilt_pow(const TiltRing& T, const FontaineElement& a,
                                Int e) {
  detail::tilt_compat(T, a);
  if (e < 0) throw Error("negative exponent");
  std::vector<PerfPoly> coords;
  for (int i = 0; i < T.length; ++i)
    coords.push_back(
        T.coeff.normalize(a.coords[static_cast<std::size_t>(i)].pow(e)));
  return FontaineElement{std::move(coords)};
}

inline bool tilt_is_zero(const TiltRing& T, const FontaineElement& a) {
  detail::tilt_compat(T, a);
  for (const auto& c : a.coords)
    if (!T.coeff.is_zero(c)) return false;
  return true;
}

inline bool tilt_equal(const TiltRing& T, const FontaineElement& a,
                       const FontaineElement& b) {
  detail::tilt_compat(T, a);
  detail::tilt_compat(T, b);
  for (int i = 0; i < T.length; ++i)
    if (!T.coeff.equal(a.coords[static_cast<std::size_t>(i)],
                       b.coords[static_cast<std::size_t>(i)]))
      return false;
  return true;
}

}  // namespace perfchar
