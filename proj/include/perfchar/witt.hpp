#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "perfchar/groebner.hpp"
#include "perfchar/ring.hpp"

namespace perfchar {

// Multivariate polynomial with arbitrary-precision integer coefficients in a
// fixed number of slots.  Only what the ghost-component construction needs:
// exact ring operations, powers, and division by an integer that must be
// exact.  Deterministic term order via the std::map key order.
struct IPoly {
  int nvars = 0;
  std::map<std::vector<unsigned>, Int> terms;

  static IPoly zero(int nv) { return {nv, {}}; }

  static IPoly constant(int nv, Int c) {
    IPoly f{nv, {}};
    if (c != 0) f.terms[std::vector<unsigned>(static_cast<std::size_t>(nv), 0)] =
        std::move(c);
    return f;
  }

  static IPoly variable(int nv, int idx) {
    IPoly f{nv, {}};
    std::vector<unsigned> e(static_cast<std::size_t>(nv), 0);
    e[static_cast<std::size_t>(idx)] = 1;
    f.terms[std::move(e)] = 1;
    return f;
  }

  bool is_zero() const { return terms.empty(); }

  IPoly operator+(const IPoly& o) const {
    IPoly out = *this;
    for (const auto& [e, c] : o.terms) {
      auto it = out.terms.find(e);
      if (it == out.terms.end()) {
        out.terms.emplace(e, c);
      } else {
        it->second += c;
        if (it->second == 0) out.terms.erase(it);
      }
    }
    return out;
  }

  IPoly operator-(const IPoly& o) const { return *this + o.scaled(-1); }

  IPoly scaled(const Int& k) const {
    if (k == 0) return zero(nvars);
    IPoly out{nvars, {}};
    for (const auto& [e, c] : terms) out.terms.emplace(e, c * k);
    return out;
  }

  IPoly operator*(const IPoly& o) const {
    IPoly out{nvars, {}};
    for (const auto& [ea, ca] : terms)
      for (const auto& [eb, cb] : o.terms) {
        std::vector<unsigned> e = ea;
        for (std::size_t v = 0; v < e.size(); ++v) e[v] += eb[v];
        auto it = out.terms.find(e);
        if (it == out.terms.end()) {
          out.terms.emplace(std::move(e), ca * cb);
        } else {
          it->second += ca * cb;
          if (it->second == 0) out.terms.erase(it);
        }
      }
    return out;
  }

  IPoly pow(unsigned long e) const {
    IPoly acc = constant(nvars, 1);
    IPoly base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // Division by an integer that is known to be exact; anything else is a
  // broken construction, not a user error.
  IPoly divided_exact(const Int& d) const {
    IPoly out{nvars, {}};
    for (const auto& [e, c] : terms) {
      if (c % d != 0)
        throw Error("internal: inexact division in Witt construction");
      out.terms.emplace(e, c / d);
    }
    return out;
  }

  bool operator==(const IPoly& o) const {
    return nvars == o.nvars && terms == o.terms;
  }
};

// w_i applied to a list of polynomials: sum_{j<=i} p^j z_j^(p^(i-j)).
inline IPoly ghost_of(std::int64_t p, int i, const std::vector<IPoly>& zs) {
  IPoly w = IPoly::zero(zs.front().nvars);
  Int pj = 1;
  unsigned long pe = 1;
  std::vector<unsigned long> powers(static_cast<std::size_t>(i) + 1);
  for (int j = i; j >= 0; --j) {
    powers[static_cast<std::size_t>(j)] = pe;
    pe *= static_cast<unsigned long>(p);
  }
  for (int j = 0; j <= i; ++j) {
    w = w + zs[static_cast<std::size_t>(j)]
                .pow(powers[static_cast<std::size_t>(j)])
                .scaled(pj);
    pj *= p;
  }
  return w;
}

// Universal addition/multiplication laws for length-n Witt vectors: S_i and
// P_i in Z[X_0..X_{n-1}, Y_0..Y_{n-1}], determined by the ghost identities
// w_i(S) = w_i(X) + w_i(Y) and w_i(P) = w_i(X) w_i(Y).
struct WittPolynomialCache {
  std::int64_t p = 0;
  int n = 0;
  std::vector<IPoly> S, P;
};

namespace detail {

inline void build_witt_polys(WittPolynomialCache& c) {
  int nv = 2 * c.n;
  std::vector<IPoly> X, Y;
  for (int j = 0; j < c.n; ++j) {
    X.push_back(IPoly::variable(nv, j));
    Y.push_back(IPoly::variable(nv, c.n + j));
  }
  c.S.clear();
  c.P.clear();
  Int pi = 1;
  for (int i = 0; i < c.n; ++i) {
    IPoly target_s = ghost_of(c.p, i, X) + ghost_of(c.p, i, Y);
    IPoly target_p = ghost_of(c.p, i, X) * ghost_of(c.p, i, Y);
    if (i > 0) {
      // subtract the lower ghost terms sum_{j<i} p^j S_j^(p^(i-j))
      Int pj = 1;
      for (int j = 0; j < i; ++j) {
        unsigned long e = 1;
        for (int k = 0; k < i - j; ++k) e *= static_cast<unsigned long>(c.p);
        target_s = target_s - c.S[static_cast<std::size_t>(j)].pow(e).scaled(pj);
        target_p = target_p - c.P[static_cast<std::size_t>(j)].pow(e).scaled(pj);
        pj *= c.p;
      }
    }
    c.S.push_back(target_s.divided_exact(pi));
    c.P.push_back(target_p.divided_exact(pi));
    pi *= c.p;
  }
}

inline bool verify_witt_polys(const WittPolynomialCache& c) {
  if (c.p < 2 || c.n < 1 || static_cast<int>(c.S.size()) != c.n ||
      static_cast<int>(c.P.size()) != c.n)
    return false;
  int nv = 2 * c.n;
  std::vector<IPoly> X, Y;
  for (int j = 0; j < c.n; ++j) {
    X.push_back(IPoly::variable(nv, j));
    Y.push_back(IPoly::variable(nv, c.n + j));
  }
  for (int i = 0; i < c.n; ++i) {
    for (const auto& f : c.S)
      if (f.nvars != nv) return false;
    if (!(ghost_of(c.p, i, c.S) == ghost_of(c.p, i, X) + ghost_of(c.p, i, Y)))
      return false;
    if (!(ghost_of(c.p, i, c.P) == ghost_of(c.p, i, X) * ghost_of(c.p, i, Y)))
      return false;
  }
  return true;
}

inline std::filesystem::path witt_cache_dir() {
  if (const char* env = std::getenv("PERFCHAR_CACHE_DIR"))
    return std::filesystem::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    return std::filesystem::path(xdg) / "perfchar";
  if (const char* home = std::getenv("HOME"))
    return std::filesystem::path(home) / ".cache" / "perfchar";
  return {};
}

inline void write_ipoly_block(std::ostream& os, const std::string& label,
                              const IPoly& f) {
  os << label << ' ' << f.terms.size() << '\n';
  for (const auto& [e, c] : f.terms) {
    os << c.str();
    for (unsigned x : e) os << ' ' << x;
    os << '\n';
  }
}

inline bool read_ipoly_block(std::istream& is, const std::string& label,
                             int nvars, IPoly& out) {
  std::string got;
  std::size_t nterms = 0;
  if (!(is >> got >> nterms) || got != label) return false;
  out = IPoly::zero(nvars);
  for (std::size_t t = 0; t < nterms; ++t) {
    std::string ctext;
    if (!(is >> ctext)) return false;
    std::vector<unsigned> e(static_cast<std::size_t>(nvars));
    for (auto& x : e)
      if (!(is >> x)) return false;
    out.terms.emplace(std::move(e), Int(ctext));
  }
  return true;
}

inline bool load_witt_cache(const std::filesystem::path& file,
                            WittPolynomialCache& c) {
  std::ifstream is(file);
  if (!is) return false;
  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != "perfchar-witt" || version != 1)
    return false;
  std::int64_t p = 0;
  int n = 0;
  if (!(is >> p >> n) || p != c.p || n != c.n) return false;
  int nv = 2 * n;
  c.S.assign(static_cast<std::size_t>(n), IPoly::zero(nv));
  c.P.assign(static_cast<std::size_t>(n), IPoly::zero(nv));
  for (int i = 0; i < n; ++i)
    if (!read_ipoly_block(is, "S" + std::to_string(i), nv,
                          c.S[static_cast<std::size_t>(i)]))
      return false;
  for (int i = 0; i < n; ++i)
    if (!read_ipoly_block(is, "P" + std::to_string(i), nv,
                          c.P[static_cast<std::size_t>(i)]))
      return false;
  return true;
}

inline void store_witt_cache(const std::filesystem::path& file,
                             const WittPolynomialCache& c) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return;
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) return;
    os << "perfchar-witt 1\n" << c.p << ' ' << c.n << '\n';
    for (int i = 0; i < c.n; ++i)
      write_ipoly_block(os, "S" + std::to_string(i),
                        c.S[static_cast<std::size_t>(i)]);
    for (int i = 0; i < c.n; ++i)
      write_ipoly_block(os, "P" + std::to_string(i),
                        c.P[static_cast<std::size_t>(i)]);
  }
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace detail

// Construction is cached in memory and on disk (PERFCHAR_CACHE_DIR); the
// cache is an optimization only — loaded polynomials are re-verified against
// the ghost identities and rebuilt on any mismatch.
inline std::shared_ptr<const WittPolynomialCache> witt_polys(std::int64_t p,
                                                             int n) {
  if (n < 1) throw Error("witt_polys needs n >= 1");
  if (n > 8) throw ResourceExceeded("Witt length too large");
  (void)PrimeChar(p);  // reject composite characteristics
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>,
                  std::shared_ptr<const WittPolynomialCache>>
      memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  auto cache = std::make_shared<WittPolynomialCache>();
  cache->p = p;
  cache->n = n;
  std::filesystem::path dir = detail::witt_cache_dir();
  std::filesystem::path file;
  if (!dir.empty())
    file = dir / ("witt_p" + std::to_string(p) + "_n" + std::to_string(n) +
                  ".txt");
  bool loaded = !file.empty() && detail::load_witt_cache(file, *cache) &&
                detail::verify_witt_polys(*cache);
  if (!loaded) {
    detail::build_witt_polys(*cache);
    if (!detail::verify_witt_polys(*cache))
      throw Error("internal: Witt polynomial construction failed its oracle");
    if (!file.empty()) detail::store_witt_cache(file, *cache);
  }
  memo.emplace(key, cache);
  return cache;
}

// --- coefficient rings -------------------------------------------------

// Prime field F_p.
struct FpCoeffRing {
  std::int64_t p;
  using Elem = std::int64_t;
  Elem from_int(const Int& c) const {
    Int r = c % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return fp_add(a, b, p); }
  Elem mul(Elem a, Elem b) const { return fp_mul(a, b, p); }
  Elem pow(Elem a, unsigned long e) const {
    Elem acc = 1, base = a;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }
  Elem frobenius(Elem a) const { return pow(a, static_cast<unsigned long>(p)); }
  Elem pth_root(Elem a) const { return a; }  // Frobenius is the identity
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
};

// Torsion-free integer lifts; the world where ghost components are faithful.
struct IntLiftRing {
  std::int64_t p;
  using Elem = Int;
  Elem from_int(const Int& c) const { return c; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem pow(Elem a, unsigned long e) const {
    Elem acc = 1;
    while (e > 0) {
      if (e & 1) acc *= a;
      a *= a;
      e >>= 1;
    }
    return acc;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
};

// A perfection truncation (level ring), possibly with relations and an
// extra quotient ideal of the truncation itself; elements are kept in
// normal form so equality is representative equality.  The modulus is what
// distinguishes, say, the truncation of F_2[x^(1/2^inf)]/(x) — where the
// class of x^(1/2) is a nonzero nilpotent — from the truncated perfection
// of F_2[x]/(x), which collapses to F_2.
struct PerfCoeffRing {
  LevelRing lr;
  std::vector<PerfPoly> modulus;
  std::shared_ptr<GBEngine> eng;
  std::shared_ptr<std::vector<MPoly>> relbasis;

  explicit PerfCoeffRing(LevelRing l, std::vector<PerfPoly> mod = {})
      : lr(std::move(l)), modulus(std::move(mod)) {
    for (const auto& m : modulus) lr.check_element(m);
    if (!lr.base.relations.empty() || !modulus.empty()) {
      eng = std::make_shared<GBEngine>(
          lr.vars(), MonomialOrder::degrevlex(lr.vars()->nvars()),
          kDefaultPairBudget);
      relbasis = std::make_shared<std::vector<MPoly>>();
      std::vector<MPoly> rin;
      for (const auto& r : lr.relations_rescaled())
        rin.push_back(eng->from_poly(r));
      for (const auto& m : modulus)
        rin.push_back(eng->from_poly(m.rescale(lr.level)));
      *relbasis = eng->compute(rin).basis;
    }
  }

  using Elem = PerfPoly;
  Elem normalize(const PerfPoly& f) const {
    lr.check_element(f);
    if (!eng || relbasis->empty()) return f;
    return eng
        ->to_poly(eng->normal_form(eng->from_poly(f.rescale(lr.level)),
                                   *relbasis))
        .pth_root(lr.level);
  }
  Elem from_int(const Int& c) const {
    Int r = c % lr.ch().p;
    if (r < 0) r += lr.ch().p;
    return PerfPoly::constant(lr.vars(), static_cast<std::int64_t>(r));
  }
  Elem zero() const { return PerfPoly::zero(lr.vars()); }
  Elem one() const { return from_int(1); }
  Elem add(const Elem& a, const Elem& b) const { return normalize(a + b); }
  Elem mul(const Elem& a, const Elem& b) const { return normalize(a * b); }
  Elem pow(const Elem& a, unsigned long e) const {
    return normalize(a.pow(static_cast<Int>(e)));
  }
  Elem frobenius(const Elem& a) const { return normalize(a.frobenius(1)); }
  Elem pth_root(const Elem& a) const { return normalize(a.pth_root(1)); }
  bool is_zero(const Elem& a) const { return normalize(a).is_zero(); }
  bool equal(const Elem& a, const Elem& b) const {
    return normalize(a) == normalize(b);
  }
};

// --- Witt vectors -------------------------------------------------------

template <class R>
struct WittVector {
  std::int64_t p = 0;
  int n = 0;
  std::vector<typename R::Elem> coords;
};

template <class R>
WittVector<R> witt_make(const R& ring, std::int64_t p, int n,
                        std::vector<typename R::Elem> coords) {
  if (static_cast<int>(coords.size()) != n)
    throw MismatchError("Witt vector length mismatch");
  WittVector<R> w{p, n, std::move(coords)};
  return w;
}

template <class R>
WittVector<R> witt_zero(const R& ring, std::int64_t p, int n) {
  return {p, n,
          std::vector<typename R::Elem>(static_cast<std::size_t>(n),
                                        ring.zero())};
}

template <class R>
typename R::Elem eval_ipoly(const IPoly& f, const R& ring,
                            const std::vector<typename R::Elem>& xs) {
  typename R::Elem acc = ring.zero();
  for (const auto& [e, c] : f.terms) {
    typename R::Elem t = ring.from_int(c);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0)
        t = ring.mul(t, ring.pow(xs[v], static_cast<unsigned long>(e[v])));
    acc = ring.add(acc, t);
  }
  return acc;
}

namespace detail {

template <class R>
void witt_compat(const WittVector<R>& a, const WittVector<R>& b) {
  if (a.p != b.p || a.n != b.n)
    throw MismatchError("Witt vectors of different shape");
}

template <class R>
WittVector<R> witt_eval_laws(const R& ring, const std::vector<IPoly>& laws,
                             const WittVector<R>& a, const WittVector<R>& b) {
  std::vector<typename R::Elem> xs = a.coords;
  xs.insert(xs.end(), b.coords.begin(), b.coords.end());
  WittVector<R> out{a.p, a.n, {}};
  out.coords.reserve(static_cast<std::size_t>(a.n));
  for (const auto& law : laws) out.coords.push_back(eval_ipoly(law, ring, xs));
  return out;
}

}  // namespace detail

template <class R>
WittVector<R> witt_add(const R& ring, const WittVector<R>& a,
                       const WittVector<R>& b) {
  detail::witt_compat(a, b);
  return detail::witt_eval_laws(ring, witt_polys(a.p, a.n)->S, a, b);
}

template <class R>
WittVector<R> witt_mul(const R& ring, const WittVector<R>& a,
                       const WittVector<R>& b) {
  detail::witt_compat(a, b);
  return detail::witt_eval_laws(ring, witt_polys(a.p, a.n)->P, a, b);
}

template <class R>
WittVector<R> teichmuller(const R& ring, std::int64_t p, int n,
                          const typename R::Elem& r) {
  WittVector<R> w = witt_zero(ring, p, n);
  w.coords[0] = r;
  return w;
}

template <class R>
WittVector<R> verschiebung(const R& ring, const WittVector<R>& a) {
  WittVector<R> w = witt_zero(ring, a.p, a.n);
  for (int i = 0; i + 1 < a.n; ++i)
    w.coords[static_cast<std::size_t>(i) + 1] =
        a.coords[static_cast<std::size_t>(i)];
  return w;
}

template <class R>
WittVector<R> witt_frobenius(const R& ring, const WittVector<R>& a) {
  WittVector<R> w = a;
  for (auto& c : w.coords) c = ring.frobenius(c);
  return w;
}

// k-fold sum by binary doubling; the independent route to p*a.
template <class R>
WittVector<R> witt_times_int(const R& ring, const WittVector<R>& a, Int k) {
  if (k < 0) throw Error("negative multiplicity");
  WittVector<R> acc = witt_zero(ring, a.p, a.n);
  WittVector<R> base = a;
  while (k > 0) {
    if (k % 2 != 0) acc = witt_add(ring, acc, base);
    base = witt_add(ring, base, base);
    k /= 2;
  }
  return acc;
}

template <class R>
bool witt_equal(const R& ring, const WittVector<R>& a, const WittVector<R>& b) {
  detail::witt_compat(a, b);
  for (int i = 0; i < a.n; ++i)
    if (!ring.equal(a.coords[static_cast<std::size_t>(i)],
                    b.coords[static_cast<std::size_t>(i)]))
      return false;
  return true;
}

// Ghost components w_i(a) = sum_{j<=i} p^j a_j^(p^(i-j)); faithful over
// torsion-free coefficient rings.
template <class R>
std::vector<typename R::Elem> ghost(const R& ring, const WittVector<R>& a) {
  std::vector<typename R::Elem> out;
  for (int i = 0; i < a.n; ++i) {
    typename R::Elem w = ring.zero();
    Int pj = 1;
    for (int j = 0; j <= i; ++j) {
      unsigned long e = 1;
      for (int k = 0; k < i - j; ++k) e *= static_cast<unsigned long>(a.p);
      w = ring.add(w, ring.mul(ring.from_int(pj),
                               ring.pow(a.coords[static_cast<std::size_t>(j)],
                                        e)));
      pj *= a.p;
    }
    out.push_back(std::move(w));
  }
  return out;
}

// --- the mod-p isomorphism evidence ------------------------------------

// Checks that a -> a_0 behaves like a ring map W_n(R)/pW_n(R) -> R on the
// given sample vectors: first coordinates of sums and products, p*a landing
// in the kernel, and the converse kernel direction via p-th roots.
struct WittModPReport {
  int samples = 0;
  bool additive = true;
  bool multiplicative = true;
  bool kernel_forward = true;   // coord 0 of p*a vanishes
  bool kernel_backward = true;  // coord-0-free vectors are p-multiples
  bool vf_identity = true;      // p*a = V(F(a)) throughout
  bool ok() const {
    return additive && multiplicative && kernel_forward && kernel_backward &&
           vf_identity;
  }
};

template <class R>
WittModPReport witt_mod_p_check(const R& ring, std::int64_t p, int n,
                                const std::vector<WittVector<R>>& samples) {
  WittModPReport rep;
  rep.samples = static_cast<int>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& a = samples[i];
    const auto& b = samples[(i + 1) % samples.size()];
    auto sum = witt_add(ring, a, b);
    if (!ring.equal(sum.coords[0], ring.add(a.coords[0], b.coords[0])))
      rep.additive = false;
    auto prod = witt_mul(ring, a, b);
    if (!ring.equal(prod.coords[0], ring.mul(a.coords[0], b.coords[0])))
      rep.multiplicative = false;

    auto pa = witt_times_int(ring, a, p);
    if (!ring.is_zero(pa.coords[0])) rep.kernel_forward = false;
    if (!witt_equal(ring, pa, verschiebung(ring, witt_frobenius(ring, a))))
      rep.vf_identity = false;

    // Backward: strip the head, take p-th roots of the tail, check that the
    // result multiplies back by p to the headless vector.
    WittVector<R> headless = a;
    headless.coords[0] = ring.zero();
    WittVector<R> root = witt_zero(ring, p, n);
    for (int j = 0; j + 1 < n; ++j)
      root.coords[static_cast<std::size_t>(j)] =
          ring.pth_root(a.coords[static_cast<std::size_t>(j) + 1]);
    if (!witt_equal(ring, witt_times_int(ring, root, p), headless))
      rep.kernel_backward = false;
  }
  return rep;
}

// Full-table isomorphism evidence for W_n(F_p) = Z/p^n: the map sends a
// vector to its top ghost component on integer lifts, reduced mod p^n.
struct WittTableReport {
  std::int64_t p = 0;
  int n = 0;
  Int modulus;       // p^n
  bool bijective = true;
  bool additive = true;
  bool multiplicative = true;
  bool ok() const { return bijective && additive && multiplicative; }
};

inline WittTableReport witt_isomorphism_table(std::int64_t p, int n) {
  WittTableReport rep;
  rep.p = p;
  rep.n = n;
  Int pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  rep.modulus = pn;
  if (pn > 4096) throw ResourceExceeded("Witt table too large");
  FpCoeffRing fp{p};
  IntLiftRing zz{p};

  std::size_t total = static_cast<std::size_t>(pn);
  auto vector_of = [&](std::size_t index) {
    std::vector<std::int64_t> coords(static_cast<std::size_t>(n));
    for (auto& c : coords) {
      c = static_cast<std::int64_t>(index % static_cast<std::size_t>(p));
      index /= static_cast<std::size_t>(p);
    }
    return witt_make(fp, p, n, std::move(coords));
  };
  auto phi = [&](const WittVector<FpCoeffRing>& a) {
    std::vector<Int> lifts;
    for (auto c : a.coords) lifts.emplace_back(c);
    auto g = ghost(zz, witt_make(zz, p, n, std::move(lifts)));
    Int v = g.back() % pn;
    if (v < 0) v += pn;
    return v;
  };

  std::vector<bool> hit(total, false);
  for (std::size_t i = 0; i < total; ++i) {
    Int v = phi(vector_of(i));
    auto idx = static_cast<std::size_t>(v);
    if (hit[idx]) rep.bijective = false;
    hit[idx] = true;
  }
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) {
      auto a = vector_of(i), b = vector_of(j);
      if (phi(witt_add(fp, a, b)) != (phi(a) + phi(b)) % pn)
        rep.additive = false;
      if (phi(witt_mul(fp, a, b)) != (phi(a) * phi(b)) % pn)
        rep.multiplicative = false;
    }
  return rep;
}

}  // namespace perfchar
