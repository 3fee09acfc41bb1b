#pragma once

#include <string>
#include <vector>

#include "perfchar/parse.hpp"
#include "perfchar/poly.hpp"

namespace perfchar {

// Finitely presented F_p-algebra R = F_p[vars]/(relations).  The relation
// ideal is assumed radical (every registered presentation is reduced); this
// matters because truncations of the perfect closure below identify p-th
// roots of relations with zero.
struct RingPresentation {
  PolyRingPtr ring;
  std::vector<PerfPoly> relations;

  bool operator==(const RingPresentation& o) const {
    return *ring == *o.ring && relations == o.relations;
  }
};

inline RingPresentation make_presentation(
    PrimeChar p, std::vector<std::string> vars,
    const std::vector<std::string>& relation_texts) {
  RingPresentation pres;
  pres.ring = make_poly_ring(p, std::move(vars));
  for (const auto& t : relation_texts) {
    PerfPoly f = parse_poly(t, pres.ring);
    if (f.level() != 0) throw Error("relations must have integer exponents");
    pres.relations.push_back(f);
  }
  return pres;
}

// Level-n truncation of the perfect closure of a reduced presentation:
// the subring of elements whose p^n-th power lies in R.  It is spanned by
// the root variables u_i = x_i^{1/p^n} and, since Frobenius identifies the
// truncation with R itself, it carries the *same* relation polynomials read
// in the u's.  Elements are polynomials of level <= n in the original
// coordinates; `rescale(f, level)` converts to the integer-exponent u-world
// where Groebner machinery runs.
struct LevelRing {
  RingPresentation base;
  unsigned level = 0;

  const PolyRingPtr& vars() const { return base.ring; }
  const PrimeChar& ch() const { return base.ring->ch; }

  // Relations in the u-world (integer exponents).
  const std::vector<PerfPoly>& relations_rescaled() const {
    return base.relations;
  }

  // The same generators written in the fractional coordinates.
  std::vector<PerfPoly> relations_fractional() const {
    std::vector<PerfPoly> out;
    out.reserve(base.relations.size());
    for (const auto& r : base.relations) out.push_back(r.pth_root(level));
    return out;
  }

  void check_element(const PerfPoly& f) const {
    if (!(*f.ring() == *base.ring))
      throw MismatchError("element does not live over this presentation");
    if (f.level() > level)
      throw LevelTooLow("element has level " + std::to_string(f.level()) +
                        " > ring level " + std::to_string(level));
  }

  bool operator==(const LevelRing& o) const {
    return base == o.base && level == o.level;
  }
};

// Finitely generated ideal in a level ring, generators in fractional
// coordinates.
struct IdealHandle {
  LevelRing ring;
  std::vector<PerfPoly> gens;
};

inline IdealHandle make_ideal(LevelRing ring, std::vector<PerfPoly> gens) {
  for (const auto& g : gens) ring.check_element(g);
  return {std::move(ring), std::move(gens)};
}

// Colimit ideal sum_i (roots_i^infty) in the perfect closure: the union over
// m of the ideals generated by all p^m-th roots of the given elements.
// Radical by construction (closed under p-th roots up to the level window).
struct ColimitIdeal {
  RingPresentation ring;
  std::vector<PerfPoly> roots;
};

// Its level-m truncation (alpha_i^{1/p^m} for all i), living at whatever
// ring level accommodates the roots.
inline IdealHandle level_ideal(const ColimitIdeal& c, unsigned m) {
  unsigned max_root_level = 0;
  for (const auto& r : c.roots)
    if (r.level() > max_root_level) max_root_level = r.level();
  LevelRing lr{c.ring, m + max_root_level};
  std::vector<PerfPoly> gens;
  gens.reserve(c.roots.size());
  for (const auto& r : c.roots) gens.push_back(r.pth_root(m));
  return {std::move(lr), std::move(gens)};
}

}  // namespace perfchar
