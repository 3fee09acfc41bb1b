#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "perfchar/monomial.hpp"

namespace perfchar {

// Variable context shared by polynomials.  Two contexts are interchangeable
// when characteristic and variable lists agree (compared by value, so
// distinct shared_ptrs to equal rings mix freely).
struct PolyRing {
  PrimeChar ch;
  std::vector<std::string> vars;

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    return -1;
  }
  int nvars() const { return static_cast<int>(vars.size()); }

  bool operator==(const PolyRing& o) const {
    return ch == o.ch && vars == o.vars;
  }
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

inline PolyRingPtr make_poly_ring(PrimeChar ch, std::vector<std::string> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error("duplicate variable " + vars[i]);
  return std::make_shared<PolyRing>(PolyRing{ch, std::move(vars)});
}

struct Term {
  std::int64_t c = 0;  // in [1, p-1] inside a normalized polynomial
  PerfMonomial m;
};

// Sparse polynomial over F_p with exponents in Z[1/p] >= 0.  Terms are kept
// sorted descending under the ring's degrevlex order, with nonzero
// coefficients, so equality is plain structural equality.
class PerfPoly {
 public:
  PerfPoly() = default;

  static PerfPoly zero(PolyRingPtr ring) { return PerfPoly(std::move(ring)); }

  static PerfPoly constant(PolyRingPtr ring, const Int& c) {
    PerfPoly f(std::move(ring));
    Int r = c % f.ring_->ch.p;
    if (r < 0) r += f.ring_->ch.p;
    std::int64_t v = static_cast<std::int64_t>(r);
    if (v != 0) f.terms_.push_back({v, {}});
    return f;
  }

  static PerfPoly variable(PolyRingPtr ring, int idx,
                           PExponent e = pexp_int(1)) {
    PerfPoly f(std::move(ring));
    if (idx < 0 || idx >= f.ring_->nvars()) throw Error("variable index out of range");
    f.terms_.push_back({1, PerfMonomial::variable(idx, std::move(e))});
    return f;
  }

  static PerfPoly monomial(PolyRingPtr ring, std::int64_t c, PerfMonomial m) {
    PerfPoly f(std::move(ring));
    c = fp_normalize(c, f.ring_->ch.p);
    if (c != 0) f.terms_.push_back({c, std::move(m)});
    return f;
  }

  static PerfPoly from_terms(PolyRingPtr ring, std::vector<Term> terms) {
    PerfPoly f(std::move(ring));
    f.terms_ = std::move(terms);
    f.canonicalize();
    return f;
  }

  const PolyRingPtr& ring() const { return ring_; }
  const PrimeChar& ch() const { return ring_->ch; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
  }

  PerfPoly operator+(const PerfPoly& o) const {
    check_compatible(o);
    std::vector<Term> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(ring_, std::move(ts));
  }

  PerfPoly operator-() const {
    PerfPoly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.c = fp_normalize(-t.c, ch().p);
    return r;
  }

  PerfPoly operator-(const PerfPoly& o) const { return *this + (-o); }

  PerfPoly operator*(const PerfPoly& o) const {
    check_compatible(o);
    std::vector<Term> ts;
    ts.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_)
        ts.push_back({fp_mul(a.c, b.c, ch().p), a.m.mul(b.m, ch())});
    return from_terms(ring_, std::move(ts));
  }

  PerfPoly scaled(std::int64_t c) const {
    c = fp_normalize(c, ch().p);
    PerfPoly r(ring_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.c = fp_mul(t.c, c, ch().p);
    return r;
  }

  PerfPoly mul_term(std::int64_t c, const PerfMonomial& m) const {
    c = fp_normalize(c, ch().p);
    PerfPoly r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
      r.terms_.push_back({fp_mul(t.c, c, ch().p), t.m.mul(m, ch())});
    r.canonicalize();
    return r;
  }

  PerfPoly pow(const Int& e) const {
    if (e < 0) throw Error("negative power");
    PerfPoly r = constant(ring_, 1);
    PerfPoly b = *this;
    Int k = e;
    while (k > 0) {
      if (k % 2 == 1) r = r * b;
      b = b * b;
      k /= 2;
    }
    return r;
  }

  // x |-> x^{p^k}: scales every exponent by p^k.  Coefficients are fixed by
  // Frobenius over the prime field.
  PerfPoly frobenius(unsigned k) const {
    PerfPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.c, t.m.scale_pk(k, ch())});
    r.canonicalize();
    return r;
  }

  // Total p^k-th root; exact because the coefficient field is perfect.
  PerfPoly pth_root(unsigned k) const {
    PerfPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.c, t.m.root_pk(k, ch())});
    r.canonicalize();
    return r;
  }

  // Least n such that all exponents lie in (1/p^n) Z.
  unsigned level() const {
    unsigned l = 0;
    for (const auto& t : terms_) {
      unsigned tl = t.m.level();
      if (tl > l) l = tl;
    }
    return l;
  }

  // View at truncation level n: exponents multiplied by p^n, so the result
  // has integer exponents in the level-n root variables.
  PerfPoly rescale(unsigned n) const {
    if (level() > n)
      throw LevelTooLow("rescale to level " + std::to_string(n) +
                        " but polynomial has level " + std::to_string(level()));
    return frobenius(n);
  }

  // Evaluate at images[i] substituted for variable i; requires integer
  // exponents.  Images must share one ring.
  PerfPoly substitute(const std::vector<PerfPoly>& images) const {
    if (static_cast<std::size_t>(ring_->nvars()) != images.size())
      throw MismatchError("substitute: expected one image per variable");
    if (level() != 0) throw Error("substitute requires integer exponents");
    PolyRingPtr target =
        images.empty() ? ring_ : images.front().ring();
    for (const auto& g : images)
      if (!(*g.ring() == *target))
        throw MismatchError("substitute: images live in different rings");
    if (target->ch != ring_->ch)
      throw MismatchError("substitute: characteristic mismatch");
    PerfPoly acc = zero(target);
    for (const auto& t : terms_) {
      PerfPoly prod = constant(target, t.c);
      for (const auto& e : t.m.entries()) {
        if (e.second.num > 100000)
          throw ResourceExceeded("substitute: exponent too large");
        prod = prod * images[static_cast<std::size_t>(e.first)].pow(e.second.num);
      }
      acc = acc + prod;
    }
    return acc;
  }

  const Term& leading_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw Error("leading term of zero");
    const Term* best = &terms_[0];
    for (const auto& t : terms_)
      if (ord.cmp(t.m, best->m, ch()) > 0) best = &t;
    return *best;
  }

  bool operator==(const PerfPoly& o) const {
    if (!ring_ || !o.ring_) return (!ring_ && !o.ring_);
    if (!(*ring_ == *o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].c != o.terms_[i].c || terms_[i].m != o.terms_[i].m)
        return false;
    return true;
  }
  bool operator!=(const PerfPoly& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      if (!first) os << " + ";
      first = false;
      if (t.m.is_one()) {
        os << t.c;
        continue;
      }
      bool star = false;
      if (t.c != 1) {
        os << t.c;
        star = true;
      }
      for (const auto& e : t.m.entries()) {
        if (star) os << "*";
        os << ring_->vars[static_cast<std::size_t>(e.first)];
        if (!(e.second.num == 1 && e.second.level == 0))
          os << "^" << pexp_str(e.second, ch());
        star = true;
      }
    }
    return os.str();
  }

 private:
  explicit PerfPoly(PolyRingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw Error("null ring");
  }

  void check_compatible(const PerfPoly& o) const {
    if (!ring_ || !o.ring_) throw Error("uninitialized polynomial");
    if (ring_->ch != o.ring_->ch)
      throw MismatchError("characteristic mismatch: p=" +
                          std::to_string(ring_->ch.p) + " vs p=" +
                          std::to_string(o.ring_->ch.p));
    if (!(*ring_ == *o.ring_))
      throw MismatchError("variable set mismatch");
  }

  void canonicalize() {
    MonomialOrder ord = MonomialOrder::degrevlex(ring_->nvars());
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
      return ord.cmp(a.m, b.m, ch()) > 0;
    });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      std::int64_t c = fp_normalize(t.c, ch().p);
      if (c == 0) continue;
      if (!out.empty() && out.back().m == t.m) {
        out.back().c = fp_add(out.back().c, c, ch().p);
        if (out.back().c == 0) out.pop_back();
      } else {
        out.push_back({c, std::move(t.m)});
      }
    }
    terms_ = std::move(out);
  }

  PolyRingPtr ring_;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const PerfPoly& f) {
  return os << f.str();
}

// Extension of scalars along a homomorphism of perfect closures: the hom is
// given on the level-0 generators, and a level-n input is pushed down by
// Frobenius, mapped, and pulled back by the same root.
inline PerfPoly map_perfection(const std::vector<PerfPoly>& images,
                               const PerfPoly& f) {
  unsigned n = f.level();
  return f.frobenius(n).substitute(images).pth_root(n);
}

}  // namespace perfchar
