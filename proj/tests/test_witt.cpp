#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "perfchar/witt.hpp"
#include "test_util.hpp"

using namespace perfchar;

namespace {

// Variable layout inside the law polynomials: X_0..X_{n-1}, Y_0..Y_{n-1}.
IPoly X(int n, int i) { return IPoly::variable(2 * n, i); }
IPoly Y(int n, int i) { return IPoly::variable(2 * n, n + i); }

WittVector<FpCoeffRing> wf(const FpCoeffRing& R, int n,
                           std::vector<std::int64_t> coords) {
  return witt_make(R, R.p, n, std::move(coords));
}

WittVector<FpCoeffRing> random_witt(std::mt19937_64& rng,
                                    const FpCoeffRing& R, int n) {
  std::vector<std::int64_t> coords;
  for (int i = 0; i < n; ++i)
    coords.push_back(ptest::rnd(rng, 0, static_cast<int>(R.p) - 1));
  return wf(R, n, std::move(coords));
}

}  // namespace

TEST_CASE("the polynomial cache writes through the environment directory") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "perfchar-witt-cache-test";
  fs::remove_all(dir);
  setenv("PERFCHAR_CACHE_DIR", dir.c_str(), 1);

  // First request for this (p, n) in the process: builds and persists.
  auto c = witt_polys(5, 2);
  fs::path file = dir / "witt_p5_n2.txt";
  REQUIRE(fs::exists(file));

  WittPolynomialCache loaded;
  loaded.p = 5;
  loaded.n = 2;
  REQUIRE(detail::load_witt_cache(file, loaded));
  CHECK(detail::verify_witt_polys(loaded));
  CHECK(loaded.S == c->S);
  CHECK(loaded.P == c->P);

  // Deterministic serialization: a second store writes identical bytes.
  fs::path copy = dir / "copy.txt";
  detail::store_witt_cache(copy, *c);
  std::ifstream f1(file), f2(copy);
  std::string s1((std::istreambuf_iterator<char>(f1)),
                 std::istreambuf_iterator<char>()),
      s2((std::istreambuf_iterator<char>(f2)),
         std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  CHECK(!s1.empty());

  // Corrupted files are rejected, either at parse or at verification.
  {
    std::ofstream os(file);
    os << "perfchar-witt 1\n5 2\nS0 1\n7 0 0 0 1\n";
  }
  WittPolynomialCache bad;
  bad.p = 5;
  bad.n = 2;
  bool parsed = detail::load_witt_cache(file, bad);
  CHECK((!parsed || !detail::verify_witt_polys(bad)));

  fs::remove_all(dir);
  unsetenv("PERFCHAR_CACHE_DIR");
}

TEST_CASE("addition and multiplication laws: pinned values, ghost identities") {
  auto c2 = witt_polys(2, 2);
  CHECK(c2->S[0] == X(2, 0) + Y(2, 0));
  CHECK(c2->P[0] == X(2, 0) * Y(2, 0));
  CHECK(c2->S[1] == X(2, 1) + Y(2, 1) - X(2, 0) * Y(2, 0));
  CHECK(c2->P[1] == X(2, 0).pow(2) * Y(2, 1) + X(2, 1) * Y(2, 0).pow(2) +
                        (X(2, 1) * Y(2, 1)).scaled(2));

  // p = 3: the carry term of S_1 is the divided binomial expansion.
  auto c3 = witt_polys(3, 2);
  CHECK(c3->S[1] == X(2, 1) + Y(2, 1) - X(2, 0).pow(2) * Y(2, 0) -
                        X(2, 0) * Y(2, 0).pow(2));

  CHECK(detail::verify_witt_polys(*witt_polys(2, 4)));
  CHECK(detail::verify_witt_polys(*witt_polys(3, 3)));

  CHECK_THROWS_AS(witt_polys(4, 2), Error);  // 4 is not prime enough here
  CHECK_THROWS_AS(witt_polys(2, 0), Error);
}

TEST_CASE("ghost components are ring maps on integer lifts") {
  IntLiftRing zz{2};
  auto g10 = ghost(zz, witt_make(zz, 2, 2, {Int(1), Int(0)}));
  CHECK(g10 == std::vector<Int>{1, 1});
  auto g01 = ghost(zz, witt_make(zz, 2, 2, {Int(0), Int(1)}));
  CHECK(g01 == std::vector<Int>{0, 2});

  auto rng = ptest::make_rng(0x817c0ffe);
  for (std::int64_t p : {2, 3}) {
    IntLiftRing R{p};
    int n = p == 2 ? 4 : 3;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Int> ac, bc;
      for (int i = 0; i < n; ++i) {
        ac.emplace_back(ptest::rnd(rng, -9, 9));
        bc.emplace_back(ptest::rnd(rng, -9, 9));
      }
      auto a = witt_make(R, p, n, ac);
      auto b = witt_make(R, p, n, bc);
      auto gs = ghost(R, witt_add(R, a, b));
      auto gp = ghost(R, witt_mul(R, a, b));
      auto ga = ghost(R, a);
      auto gb = ghost(R, b);
      for (int i = 0; i < n; ++i) {
        CHECK(gs[i] == ga[i] + gb[i]);
        CHECK(gp[i] == ga[i] * gb[i]);
      }
    }
  }
}

TEST_CASE("W_2(F_2): the classical carry table") {
  FpCoeffRing R{2};
  auto one = wf(R, 2, {1, 0});
  auto v1 = wf(R, 2, {0, 1});

  CHECK(witt_equal(R, witt_add(R, one, one), v1));   // 1 + 1 carries
  CHECK(witt_equal(R, witt_mul(R, v1, v1), wf(R, 2, {0, 0})));

  auto zero = witt_zero(R, 2, 2);
  for (std::int64_t a0 : {0, 1})
    for (std::int64_t a1 : {0, 1}) {
      auto a = wf(R, 2, {a0, a1});
      CHECK(witt_equal(R, witt_add(R, a, zero), a));
      CHECK(witt_equal(R, witt_mul(R, a, one), a));
    }
}

TEST_CASE("teichmuller, verschiebung, frobenius") {
  auto rng = ptest::make_rng(0x7e1cb);
  for (std::int64_t p : {2, 3, 5}) {
    FpCoeffRing R{p};
    int n = p == 5 ? 2 : 3;
    // [a][b] = [ab] on every pair of field elements.
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) {
        auto prod = witt_mul(R, teichmuller(R, p, n, a), teichmuller(R, p, n, b));
        CHECK(witt_equal(R, prod, teichmuller(R, p, n, R.mul(a, b))));
      }
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_witt(rng, R, n);
      auto b = random_witt(rng, R, n);
      auto pa = witt_times_int(R, a, p);
      auto vf = verschiebung(R, witt_frobenius(R, a));
      auto fv = witt_frobenius(R, verschiebung(R, a));
      CHECK(witt_equal(R, pa, vf));
      CHECK(witt_equal(R, pa, fv));
      // Frobenius is a ring endomorphism.
      CHECK(witt_equal(R, witt_frobenius(R, witt_add(R, a, b)),
                       witt_add(R, witt_frobenius(R, a),
                                witt_frobenius(R, b))));
      CHECK(witt_equal(R, witt_frobenius(R, witt_mul(R, a, b)),
                       witt_mul(R, witt_frobenius(R, a),
                                witt_frobenius(R, b))));
    }
  }
}

TEST_CASE("ring axioms on random triples") {
  auto rng = ptest::make_rng(0xa71035);
  for (std::int64_t p : {2, 3}) {
    FpCoeffRing R{p};
    int n = 4;
    auto one = teichmuller(R, p, n, 1);
    for (int trial = 0; trial < 100; ++trial) {
      auto a = random_witt(rng, R, n);
      auto b = random_witt(rng, R, n);
      auto c = random_witt(rng, R, n);
      CHECK(witt_equal(R, witt_add(R, a, b), witt_add(R, b, a)));
      CHECK(witt_equal(R, witt_mul(R, a, b), witt_mul(R, b, a)));
      CHECK(witt_equal(R, witt_add(R, witt_add(R, a, b), c),
                       witt_add(R, a, witt_add(R, b, c))));
      CHECK(witt_equal(R, witt_mul(R, witt_mul(R, a, b), c),
                       witt_mul(R, a, witt_mul(R, b, c))));
      CHECK(witt_equal(R, witt_mul(R, a, witt_add(R, b, c)),
                       witt_add(R, witt_mul(R, a, b), witt_mul(R, a, c))));
      CHECK(witt_equal(R, witt_mul(R, a, one), a));
    }
  }
}

TEST_CASE("W_n(F_p) is Z/p^n: full tables through the ghost map") {
  auto t22 = witt_isomorphism_table(2, 2);
  CHECK(t22.ok());
  CHECK(t22.modulus == 4);
  auto t23 = witt_isomorphism_table(2, 3);
  CHECK(t23.ok());
  CHECK(t23.modulus == 8);
  auto t32 = witt_isomorphism_table(3, 2);
  CHECK(t32.ok());
  CHECK(t32.modulus == 9);
}

TEST_CASE("head projection is a mod-p isomorphism") {
  // Over prime fields: every vector, exhaustively.
  for (std::int64_t p : {2, 3}) {
    FpCoeffRing R{p};
    int n = p == 2 ? 3 : 2;
    std::vector<WittVector<FpCoeffRing>> samples;
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) total *= p;
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      std::vector<std::int64_t> coords;
      for (int i = 0; i < n; ++i) {
        coords.push_back(rest % p);
        rest /= p;
      }
      samples.push_back(wf(R, n, std::move(coords)));
    }
    auto rep = witt_mod_p_check(R, p, n, samples);
    CHECK(rep.ok());
    CHECK(rep.samples == static_cast<int>(total));
  }

  // Over a perfection truncation with a relation: coefficients that need
  // genuine p-th roots and normal forms.
  auto pres = make_presentation(PrimeChar(2), {"x", "y"}, {"x*y"});
  PerfCoeffRing R(LevelRing{pres, 3});
  auto el = [&](const std::string& s) {
    return R.normalize(parse_poly(s, R.lr.vars()));
  };
  std::vector<PerfPoly> palette = {el("0"), el("1"), el("x"), el("y+1"),
                                   el("x^(1/2)"), el("x^(1/4)+y")};
  std::vector<WittVector<PerfCoeffRing>> samples;
  for (std::size_t i = 0; i < palette.size(); ++i)
    samples.push_back(witt_make(
        R, 2, 3,
        {palette[i], palette[(i + 1) % palette.size()],
         palette[(i + 3) % palette.size()]}));
  auto rep = witt_mod_p_check(R, 2, 3, samples);
  CHECK(rep.ok());

  // Spot check the quotient really acts: x * y collapses to zero up front.
  auto prod = witt_mul(R, teichmuller(R, 2, 3, el("x")),
                       teichmuller(R, 2, 3, el("y")));
  CHECK(R.is_zero(prod.coords[0]));
}

TEST_CASE("shape mismatches are rejected") {
  FpCoeffRing R{2};
  CHECK_THROWS_AS(witt_make(R, 2, 3, {1, 0}), MismatchError);
  auto a = wf(R, 2, {1, 0});
  FpCoeffRing R3{3};
  auto b = witt_make(R3, 3, 2, {1, 0});
  CHECK_THROWS_AS(witt_add(R, a, b), MismatchError);
}
