#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perfchar/groebner.hpp"
#include "perfchar/ring.hpp"

namespace perfchar {

// Ideal-level operations over level rings.  Inputs and outputs use the
// fractional coordinates of the level ring; internally everything is
// rescaled to the integer-exponent world, run through GBEngine, and scaled
// back.  Quotient semantics come from adjoining the presentation's
// relations to every generator list.

// --- ring plumbing ---------------------------------------------------

inline PerfPoly transplant(const PerfPoly& f, const PolyRingPtr& target) {
  if (f.ring()->ch != target->ch)
    throw MismatchError("transplant across characteristics");
  for (std::size_t i = 0; i < f.ring()->vars.size(); ++i)
    if (i >= target->vars.size() || f.ring()->vars[i] != target->vars[i])
      throw MismatchError("transplant: variable lists are not nested");
  return PerfPoly::from_terms(target, std::vector<Term>(f.terms()));
}

// Inverse of transplant for polynomials supported on the prefix.
inline PerfPoly restrict_to(const PerfPoly& f, const PolyRingPtr& target) {
  for (const auto& t : f.terms())
    for (const auto& e : t.m.entries())
      if (e.first >= target->nvars())
        throw Error("restrict_to: polynomial uses a removed variable");
  return PerfPoly::from_terms(target, std::vector<Term>(f.terms()));
}

inline PolyRingPtr extend_ring(const PolyRingPtr& r,
                               const std::vector<std::string>& extra) {
  std::vector<std::string> vars = r->vars;
  vars.insert(vars.end(), extra.begin(), extra.end());
  return make_poly_ring(r->ch, std::move(vars));
}

// --- Groebner bases --------------------------------------------------

struct GBResult {
  LevelRing ring;
  MonomialOrder order;
  std::vector<PerfPoly> basis;  // fractional coordinates, monic, sorted
};

namespace detail {

inline std::vector<MPoly> ideal_inputs(const GBEngine& eng,
                                       const IdealHandle& I) {
  std::vector<MPoly> inputs;
  inputs.reserve(I.gens.size() + I.ring.base.relations.size());
  for (const auto& g : I.gens)
    inputs.push_back(eng.from_poly(g.rescale(I.ring.level)));
  for (const auto& r : I.ring.relations_rescaled())
    inputs.push_back(eng.from_poly(r));
  return inputs;
}

}  // namespace detail

inline GBResult groebner(const IdealHandle& I,
                         std::optional<MonomialOrder> order = {},
                         std::uint64_t budget = kDefaultPairBudget) {
  for (const auto& g : I.gens) I.ring.check_element(g);
  MonomialOrder ord =
      order ? *order : MonomialOrder::degrevlex(I.ring.vars()->nvars());
  GBEngine eng(I.ring.vars(), ord, budget);
  auto res = eng.compute(detail::ideal_inputs(eng, I));
  auto red = eng.reduced_basis(std::move(res.basis));
  GBResult out{I.ring, std::move(ord), {}};
  out.basis.reserve(red.size());
  for (const auto& b : red)
    out.basis.push_back(eng.to_poly(b).pth_root(I.ring.level));
  return out;
}

// --- membership with certificates -------------------------------------

struct MembershipCertificate {
  bool member = false;
  std::vector<PerfPoly> gen_coeffs;  // aligned with the ideal's generators
  std::vector<PerfPoly> rel_coeffs;  // aligned with the presentation relations
  PerfPoly normal_form;              // remainder when not a member
};

inline MembershipCertificate membership(const PerfPoly& f, const IdealHandle& I,
                                        bool want_certificate = true,
                                        std::uint64_t budget = kDefaultPairBudget) {
  I.ring.check_element(f);
  unsigned n = I.ring.level;
  GBEngine eng(I.ring.vars(), MonomialOrder::degrevlex(I.ring.vars()->nvars()),
               budget);
  auto inputs = detail::ideal_inputs(eng, I);
  MembershipCertificate out;
  if (!want_certificate) {
    auto res = eng.compute(inputs);
    auto red = eng.reduced_basis(std::move(res.basis));
    MPoly nf = eng.normal_form(eng.from_poly(f.rescale(n)), red);
    out.member = nf.empty();
    out.normal_form = eng.to_poly(nf).pth_root(n);
    return out;
  }
  auto res = eng.compute(inputs, /*track=*/true);
  std::vector<MPoly> quotients;
  MPoly nf = eng.normal_form(eng.from_poly(f.rescale(n)), res.basis, &quotients);
  out.member = nf.empty();
  out.normal_form = eng.to_poly(nf).pth_root(n);
  if (!out.member) return out;
  MPoly combo;
  for (std::size_t k = 0; k < res.basis.size(); ++k)
    if (!quotients[k].empty())
      combo = eng.add(combo, eng.scalar_mul(quotients[k], res.reps[k]));
  VecPoly coords = eng.to_vec(combo, static_cast<int>(inputs.size()));
  for (std::size_t i = 0; i < I.gens.size(); ++i)
    out.gen_coeffs.push_back(coords[i].pth_root(n));
  for (std::size_t j = I.gens.size(); j < coords.size(); ++j)
    out.rel_coeffs.push_back(coords[j].pth_root(n));
  return out;
}

// Exact identity check in the free ring: f = sum c_i g_i + sum d_j r_j.
inline bool verify_membership(const PerfPoly& f, const IdealHandle& I,
                              const MembershipCertificate& cert) {
  if (!cert.member) return false;
  if (cert.gen_coeffs.size() != I.gens.size()) return false;
  auto rels = I.ring.relations_fractional();
  if (cert.rel_coeffs.size() != rels.size()) return false;
  PerfPoly acc = PerfPoly::zero(f.ring());
  for (std::size_t i = 0; i < I.gens.size(); ++i)
    acc = acc + cert.gen_coeffs[i] * I.gens[i];
  for (std::size_t j = 0; j < rels.size(); ++j)
    acc = acc + cert.rel_coeffs[j] * rels[j];
  return acc == f;
}

// --- ideal arithmetic --------------------------------------------------

inline IdealHandle intersection(const IdealHandle& I, const IdealHandle& J,
                                std::uint64_t budget = kDefaultPairBudget) {
  if (!(I.ring == J.ring))
    throw MismatchError("intersection: ideals live over different rings");
  unsigned n = I.ring.level;
  PolyRingPtr base = I.ring.vars();
  PolyRingPtr ext = extend_ring(base, {"#t"});
  int tid = base->nvars();
  PerfPoly t = PerfPoly::variable(ext, tid);
  PerfPoly one = PerfPoly::constant(ext, 1);
  std::vector<int> orig;
  for (int i = 0; i < base->nvars(); ++i) orig.push_back(i);
  MonomialOrder ord = MonomialOrder::elimination({tid}, orig);
  GBEngine eng(ext, ord, budget);
  std::vector<MPoly> inputs;
  for (const auto& g : I.gens)
    inputs.push_back(eng.from_poly(t * transplant(g.rescale(n), ext)));
  for (const auto& h : J.gens)
    inputs.push_back(eng.from_poly((one - t) * transplant(h.rescale(n), ext)));
  for (const auto& r : I.ring.relations_rescaled())
    inputs.push_back(eng.from_poly(transplant(r, ext)));
  auto red = eng.reduced_basis(eng.compute(inputs).basis);
  std::vector<PerfPoly> gens;
  for (const auto& b : red) {
    PerfPoly g = eng.to_poly(b);
    bool uses_t = false;
    for (const auto& term : g.terms())
      if (!term.m.exponent(tid).is_zero()) uses_t = true;
    if (!uses_t) gens.push_back(restrict_to(g, base).pth_root(n));
  }
  return {I.ring, std::move(gens)};
}

inline IdealHandle product(const IdealHandle& I, const IdealHandle& J) {
  if (!(I.ring == J.ring))
    throw MismatchError("product: ideals live over different rings");
  std::vector<PerfPoly> gens;
  for (const auto& g : I.gens)
    for (const auto& h : J.gens) {
      PerfPoly prod = g * h;
      if (prod.is_zero()) continue;
      bool dup = false;
      for (const auto& k : gens)
        if (k == prod) dup = true;
      if (!dup) gens.push_back(std::move(prod));
    }
  return {I.ring, std::move(gens)};
}

// Syzygies of a list of module elements (vectors of common length) over the
// quotient ring; scalar generators are the rank-1 case.  Output vectors have
// one coordinate per input generator.  Computed over the free ring with
// relation multiples of every unit vector adjoined, then projected back to
// the generator coordinates.
inline std::vector<VecPoly> syzygies_module(const std::vector<VecPoly>& gens,
                                            int rank, const LevelRing& ring,
                                            std::uint64_t budget = kDefaultPairBudget) {
  unsigned n = ring.level;
  GBEngine eng(ring.vars(), MonomialOrder::degrevlex(ring.vars()->nvars()),
               budget);
  std::vector<MPoly> inputs;
  for (const auto& v : gens) {
    if (static_cast<int>(v.size()) != rank)
      throw MismatchError("syzygies: generator has wrong rank");
    VecPoly scaled;
    for (const auto& c : v) {
      ring.check_element(c);
      scaled.push_back(c.rescale(n));
    }
    inputs.push_back(eng.from_vec(scaled));
  }
  for (const auto& r : ring.relations_rescaled())
    for (int c = 0; c < rank; ++c) inputs.push_back(eng.from_poly(r, c));

  std::vector<MPoly> raw;
  eng.compute(inputs, /*track=*/true, &raw);

  // Keep the generator coordinates; unrescale; drop zero vectors and exact
  // duplicates.  Sorting by the leading input-coordinate term keeps the
  // output deterministic regardless of discovery order.
  std::sort(raw.begin(), raw.end(), [&](const MPoly& a, const MPoly& b) {
    if (a.empty() || b.empty()) return b.empty() && !a.empty();
    return eng.cmp_term(a.front(), b.front()) < 0;
  });
  std::vector<VecPoly> out;
  for (const auto& s : raw) {
    VecPoly full = eng.to_vec(s, static_cast<int>(inputs.size()));
    VecPoly head;
    bool nonzero = false;
    for (std::size_t i = 0; i < gens.size(); ++i) {
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

// Scalar convenience wrapper.
inline std::vector<VecPoly> syzygies(const std::vector<PerfPoly>& gens,
                                     const LevelRing& ring,
                                     std::uint64_t budget = kDefaultPairBudget) {
  std::vector<VecPoly> wrapped;
  wrapped.reserve(gens.size());
  for (const auto& g : gens) wrapped.push_back(VecPoly{g});
  return syzygies_module(wrapped, 1, ring, budget);
}

// I : f  via syzygies of (f, gens, relations): the f-coordinates of the
// syzygy module are exactly the colon ideal.
inline IdealHandle colon(const IdealHandle& I, const PerfPoly& f,
                         std::uint64_t budget = kDefaultPairBudget) {
  I.ring.check_element(f);
  std::vector<PerfPoly> list;
  list.push_back(f);
  for (const auto& g : I.gens) list.push_back(g);
  auto syz = syzygies(list, I.ring, budget);
  std::vector<PerfPoly> gens;
  for (const auto& v : syz) {
    if (v[0].is_zero()) continue;
    bool dup = false;
    for (const auto& seen : gens)
      if (seen == v[0]) dup = true;
    if (!dup) gens.push_back(v[0]);
  }
  return {I.ring, std::move(gens)};
}

// --- staircase counting ------------------------------------------------

// F_p-dimension of ring/I; nullopt means infinite.  Counts standard
// monomials under the leading terms of a reduced basis.
inline std::optional<Int> colength(const IdealHandle& I,
                                   std::uint64_t budget = kDefaultPairBudget) {
  GBResult gb = groebner(I, {}, budget);
  unsigned n = I.ring.level;
  std::vector<PerfMonomial> leads;
  const PrimeChar& ch = I.ring.ch();
  MonomialOrder ord = MonomialOrder::degrevlex(I.ring.vars()->nvars());
  for (const auto& b : gb.basis) {
    PerfPoly u = b.rescale(n);
    if (u.is_zero()) continue;
    PerfMonomial lm = u.leading_term(ord).m;
    if (lm.is_one()) return Int(0);  // ideal is the whole ring
    leads.push_back(std::move(lm));
  }
  int nv = I.ring.vars()->nvars();
  std::vector<unsigned long> bound(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    std::optional<Int> best;
    for (const auto& lm : leads) {
      bool pure = true;
      for (const auto& e : lm.entries())
        if (e.first != v) pure = false;
      if (!pure) continue;
      Int e = lm.exponent(v).num;  // integer exponents in the u-world
      if (!best || e < *best) best = e;
    }
    if (!best) return std::nullopt;  // no pure power: staircase is infinite
    if (*best > 10000000)
      throw ResourceExceeded("staircase bound too large");
    bound[static_cast<std::size_t>(v)] = best->convert_to<unsigned long>();
  }
  Int box = 1;
  for (auto b : bound) box *= b;
  if (box > 10000000) throw ResourceExceeded("staircase box too large");

  Int count = 0;
  std::vector<unsigned long> e(static_cast<std::size_t>(nv), 0);
  for (;;) {
    std::vector<PerfMonomial::Entry> es;
    for (int v = 0; v < nv; ++v)
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
    while (v < nv) {
      if (++e[static_cast<std::size_t>(v)] < bound[static_cast<std::size_t>(v)]) break;
      e[static_cast<std::size_t>(v)] = 0;
      ++v;
    }
    if (v == nv) break;
  }
  return count;
}

// Krull dimension of ring/I via the largest variable subset that meets no
// leading-term support.  Returns -1 for the zero ring.
inline int krull_dimension(const IdealHandle& I,
                           std::uint64_t budget = kDefaultPairBudget) {
  GBResult gb = groebner(I, {}, budget);
  unsigned n = I.ring.level;
  MonomialOrder ord = MonomialOrder::degrevlex(I.ring.vars()->nvars());
  std::vector<std::vector<int>> supports;
  for (const auto& b : gb.basis) {
    PerfPoly u = b.rescale(n);
    if (u.is_zero()) continue;
    PerfMonomial lm = u.leading_term(ord).m;
    if (lm.is_one()) return -1;
    std::vector<int> sup;
    for (const auto& e : lm.entries()) sup.push_back(e.first);
    supports.push_back(std::move(sup));
  }
  int nv = I.ring.vars()->nvars();
  if (nv > 20) throw ResourceExceeded("too many variables for dimension scan");
  int best = 0;
  for (unsigned long mask = 0; mask < (1UL << nv); ++mask) {
    bool independent = true;
    for (const auto& sup : supports) {
      bool contained = true;
      for (int v : sup)
        if (!(mask & (1UL << v))) contained = false;
      if (contained) {
        independent = false;
        break;
      }
    }
    if (independent) {
      int size = __builtin_popcountl(mask);
      if (size > best) best = size;
    }
  }
  return best;
}

// --- subalgebra membership ----------------------------------------------

// Is f in the F_p-subalgebra generated by `gens` inside ring?  Tag variables
// #T_i are confined to the low block of an elimination order; f is a member
// exactly when its normal form uses only tags.
inline bool subalgebra_membership(const PerfPoly& f,
                                  const std::vector<PerfPoly>& gens,
                                  const LevelRing& ring,
                                  std::uint64_t budget = kDefaultPairBudget) {
  ring.check_element(f);
  unsigned n = ring.level;
  PolyRingPtr base = ring.vars();
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < gens.size(); ++i)
    tags.push_back("#T" + std::to_string(i));
  PolyRingPtr ext = extend_ring(base, tags);
  std::vector<int> orig, tagidx;
  for (int i = 0; i < base->nvars(); ++i) orig.push_back(i);
  for (std::size_t i = 0; i < gens.size(); ++i)
    tagidx.push_back(base->nvars() + static_cast<int>(i));
  MonomialOrder ord = MonomialOrder::elimination(orig, tagidx);
  GBEngine eng(ext, ord, budget);
  std::vector<MPoly> inputs;
  for (const auto& r : ring.relations_rescaled())
    inputs.push_back(eng.from_poly(transplant(r, ext)));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    ring.check_element(gens[i]);
    PerfPoly tag = PerfPoly::variable(ext, tagidx[i]);
    inputs.push_back(eng.from_poly(tag - transplant(gens[i].rescale(n), ext)));
  }
  auto red = eng.reduced_basis(eng.compute(inputs).basis);
  MPoly nf = eng.normal_form(eng.from_poly(transplant(f.rescale(n), ext)), red);
  for (const auto& t : nf)
    for (const auto& e : t.m.entries())
      if (e.first < base->nvars()) return false;
  return true;
}

// --- radical membership ---------------------------------------------------

struct RadicalResult {
  bool decided = false;  // exact verdict available
  bool member = false;
  std::optional<unsigned> power;  // m with f^{p^m} in I, when found
};

// Power search: f^{p^m} = frobenius(f, m) over F_p, so each probe is cheap.
// The extra-variable method (1 - z f adjoined, test 1 in the ideal) decides
// exactly in both directions.
inline RadicalResult radical_membership(const PerfPoly& f, const IdealHandle& I,
                                        unsigned max_power = 6,
                                        bool use_extra_variable = false,
                                        std::uint64_t budget = kDefaultPairBudget) {
  RadicalResult out;
  if (!use_extra_variable) {
    for (unsigned m = 0; m <= max_power; ++m) {
      if (membership(f.frobenius(m), I, /*want_certificate=*/false, budget).member) {
        out.decided = true;
        out.member = true;
        out.power = m;
        return out;
      }
    }
    return out;  // inconclusive
  }
  unsigned n = I.ring.level;
  PolyRingPtr base = I.ring.vars();
  PolyRingPtr ext = extend_ring(base, {"#z"});
  PerfPoly z = PerfPoly::variable(ext, base->nvars());
  PerfPoly one = PerfPoly::constant(ext, 1);
  GBEngine eng(ext, MonomialOrder::degrevlex(ext->nvars()), budget);
  std::vector<MPoly> inputs;
  for (const auto& g : I.gens)
    inputs.push_back(eng.from_poly(transplant(g.rescale(n), ext)));
  for (const auto& r : I.ring.relations_rescaled())
    inputs.push_back(eng.from_poly(transplant(r, ext)));
  inputs.push_back(eng.from_poly(one - z * transplant(f.rescale(n), ext)));
  auto red = eng.reduced_basis(eng.compute(inputs).basis);
  MPoly nf = eng.normal_form(eng.from_poly(one), red);
  out.decided = true;
  out.member = nf.empty();
  return out;
}

// --- regular sequences -----------------------------------------------------

struct RegularSeqResult {
  bool regular = false;
  // When not regular: the index whose colon escapes the prior ideal, or
  // seq.size() when the full ideal is improper.
  std::size_t failing_index = 0;
};

inline RegularSeqResult is_regular_sequence(const std::vector<PerfPoly>& seq,
                                            const LevelRing& ring,
                                            std::uint64_t budget = kDefaultPairBudget) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    IdealHandle prior{ring, std::vector<PerfPoly>(seq.begin(),
                                                  seq.begin() + static_cast<std::ptrdiff_t>(i))};
    IdealHandle quot = colon(prior, seq[i], budget);
    for (const auto& c : quot.gens)
      if (!membership(c, prior, /*want_certificate=*/false, budget).member)
        return {false, i};
  }
  IdealHandle full{ring, seq};
  if (membership(PerfPoly::constant(ring.vars(), 1), full,
                 /*want_certificate=*/false, budget)
          .member)
    return {false, seq.size()};
  return {true, static_cast<std::size_t>(-1)};
}

// --- colimit ideals ---------------------------------------------------------

// Level-m truncation of the product of two colimit ideals, with both root
// families rescaled into a common level ring.
inline IdealHandle product_level_ideal(const ColimitIdeal& a,
                                       const ColimitIdeal& b, unsigned m) {
  if (!(a.ring == b.ring))
    throw MismatchError("colimit ideals over different presentations");
  unsigned max_root = 0;
  for (const auto& r : a.roots)
    if (r.level() > max_root) max_root = r.level();
  for (const auto& r : b.roots)
    if (r.level() > max_root) max_root = r.level();
  LevelRing lr{a.ring, m + max_root};
  IdealHandle ia{lr, {}}, ib{lr, {}};
  for (const auto& r : a.roots) ia.gens.push_back(r.pth_root(m));
  for (const auto& r : b.roots) ib.gens.push_back(r.pth_root(m));
  return product(ia, ib);
}

struct ColimitMembership {
  bool found = false;
  unsigned level = 0;       // level at which membership was established
  unsigned window_end = 0;  // last level probed
  IdealHandle ideal;        // the truncation that contains f (when found)
  MembershipCertificate cert;
};

// Search f through the level filtration of C (or of C * C2 when a second
// ideal is given), starting at the level of f.  Certificates come from the
// membership call and re-verify by ring arithmetic.
inline ColimitMembership colimit_membership(
    const PerfPoly& f, const ColimitIdeal& C,
    const std::optional<ColimitIdeal>& C2 = {},
    std::optional<unsigned> max_level = {},
    std::uint64_t budget = kDefaultPairBudget) {
  unsigned start = f.level();
  unsigned end = max_level ? *max_level : start + 6;
  if (end < start) end = start;
  ColimitMembership out;
  out.window_end = end;
  for (unsigned m = start; m <= end; ++m) {
    IdealHandle idl = C2 ? product_level_ideal(C, *C2, m) : level_ideal(C, m);
    if (idl.ring.level < f.level()) idl.ring.level = f.level();
    MembershipCertificate cert = membership(f, idl, true, budget);
    if (cert.member) {
      out.found = true;
      out.level = m;
      out.ideal = std::move(idl);
      out.cert = std::move(cert);
      return out;
    }
  }
  return out;
}

}  // namespace perfchar
