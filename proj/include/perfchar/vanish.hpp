#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "perfchar/ideal_ops.hpp"

namespace perfchar {

struct VanishSample {
  PerfPoly element;
  unsigned source_level = 0;  // truncation index the sample was drawn from
  bool found = false;
  unsigned found_level = 0;   // filtration index where the product caught it
  int slack = 0;              // found_level - source_level
};

struct VanishReport {
  std::size_t samples = 0;
  std::size_t found = 0;
  int max_slack = 0;
  unsigned window = 0;  // filtration levels probed past each sample
  std::vector<VanishSample> details;
};

// Probes the intersection-vs-product comparison for two colimit ideals:
// elements of intersection(I_n, J_n) are sampled at small truncation indices
// and hunted through the level filtration of the product colimit.  For each
// sample the report records whether the product catches it and how many
// levels up the filtration it had to climb.
inline VanishReport vanish_check(const ColimitIdeal& I, const ColimitIdeal& J,
                                 int samples = 20, unsigned window = 6,
                                 std::uint64_t budget = kDefaultPairBudget) {
  if (!(I.ring == J.ring))
    throw MismatchError("vanish check needs a common presentation");
  VanishReport rep;
  rep.window = window;
  const PolyRingPtr& vars = I.ring.ring;
  for (unsigned n = 0; n <= 2 && rep.samples < static_cast<std::size_t>(samples);
       ++n) {
    std::size_t quota = static_cast<std::size_t>(samples) / 3;
    if (n < static_cast<unsigned>(samples) % 3) ++quota;
    IdealHandle in = level_ideal(I, n);
    IdealHandle jn = level_ideal(J, n);
    unsigned lvl = std::max(in.ring.level, jn.ring.level);
    LevelRing common{I.ring, lvl};
    auto inter = intersection(IdealHandle{common, in.gens},
                              IdealHandle{common, jn.gens}, budget);
    std::vector<PerfPoly> multipliers;
    PerfPoly one = PerfPoly::constant(vars, 1);
    for (int v = 0; v < vars->nvars(); ++v) {
      PerfPoly xv = PerfPoly::variable(vars, v);
      multipliers.push_back(xv);
      multipliers.push_back(xv + one);
      multipliers.push_back(xv * xv);
      for (int w = v + 1; w < vars->nvars(); ++w) {
        PerfPoly xw = PerfPoly::variable(vars, w);
        multipliers.push_back(xv * xw);
        multipliers.push_back(xv + xw + one);
      }
    }
    std::vector<PerfPoly> cands = inter.gens;
    for (const auto& g : inter.gens)
      for (const auto& m : multipliers) cands.push_back(g * m);
    std::size_t taken = 0;
    for (const auto& f : cands) {
      if (taken >= quota || rep.samples >= static_cast<std::size_t>(samples))
        break;
      if (f.is_zero()) continue;
      auto r = colimit_membership(f, I, J, f.level() + window, budget);
      VanishSample s;
      s.element = f;
      s.source_level = n;
      s.found = r.found;
      if (r.found) {
        s.found_level = r.level;
        s.slack = static_cast<int>(r.level) - static_cast<int>(n);
        ++rep.found;
        rep.max_slack = std::max(rep.max_slack, s.slack);
      }
      rep.details.push_back(std::move(s));
      ++rep.samples;
      ++taken;
    }
  }
  return rep;
}

}  // namespace perfchar
