#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "perfchar/hilbert_kunz.hpp"
#include "test_util.hpp"

using namespace perfchar;

namespace {

LevelRing LR(std::int64_t p, std::vector<std::string> vars,
             std::vector<std::string> rels, unsigned level = 0) {
  return LevelRing{make_presentation(PrimeChar(p), std::move(vars), rels),
                   level};
}

IdealHandle ideal(const LevelRing& lr, const std::vector<std::string>& gens) {
  std::vector<PerfPoly> gs;
  for (const auto& g : gens) gs.push_back(parse_poly(g, lr.vars()));
  return make_ideal(lr, gs);
}

PerfPoly P(const LevelRing& lr, const std::string& s) {
  return parse_poly(s, lr.vars());
}

}  // namespace

TEST_CASE("bracket powers: pinned values and composition") {
  auto lr = LR(2, {"x", "y"}, {});
  auto I = ideal(lr, {"x", "y"});

  auto I4 = bracket_power(I, 4);
  REQUIRE(I4.gens.size() == 2);
  CHECK(I4.gens[0] == P(lr, "x^4"));
  CHECK(I4.gens[1] == P(lr, "y^4"));

  // Freshman's dream: (x+y)^2 = x^2 + y^2 in characteristic 2.
  auto J2 = bracket_power(ideal(lr, {"x+y"}), 2);
  CHECK(J2.gens[0] == P(lr, "x^2+y^2"));

  CHECK(bracket_power(I, 1).gens == I.gens);

  CHECK_THROWS_AS(bracket_power(I, 3), NotPPower);
  CHECK_THROWS_AS(bracket_power(I, 6), NotPPower);
  CHECK_THROWS_AS(bracket_power(I, 0), NotPPower);

  auto rng = ptest::make_rng(0xb4acce7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PerfPoly> gens;
    int ng = ptest::rnd(rng, 1, 3);
    for (int i = 0; i < ng; ++i)
      gens.push_back(ptest::random_nonzero_poly(rng, lr.vars(), 3, 3, 0));
    auto K = make_ideal(lr, gens);
    Int q = 1 << ptest::rnd(rng, 0, 2);
    Int qq = 1 << ptest::rnd(rng, 0, 2);
    CHECK(bracket_power(bracket_power(K, q), qq).gens ==
          bracket_power(K, q * qq).gens);
  }
}

TEST_CASE("Frobenius pullback of cyclic modules") {
  auto lr = LR(2, {"x", "y"}, {});
  CyclicModule M{lr, {P(lr, "x"), P(lr, "y")}};
  auto F1 = peskine_szpiro(M, 1);
  CHECK(F1.modulus == std::vector<PerfPoly>{P(lr, "x^2"), P(lr, "y^2")});
  CHECK(peskine_szpiro(M, 0).modulus == M.modulus);

  auto quo = LR(3, {"x", "y"}, {"x*y"});
  CyclicModule Q{quo, {P(quo, "x"), P(quo, "y")}};
  CHECK(peskine_szpiro(Q, 1).modulus ==
        std::vector<PerfPoly>{P(quo, "x^3"), P(quo, "y^3")});
}

TEST_CASE("colength sequences: pinned closed forms") {
  // Maximal ideal of F_2[x,y]: the staircase is a q x q box.
  auto lr = LR(2, {"x", "y"}, {});
  auto rec = hk_sequence(ideal(lr, {"x", "y"}), 4);
  CHECK(rec.d == 2);
  REQUIRE(rec.rows.size() == 5);
  Int q = 1;
  for (const auto& row : rec.rows) {
    CHECK(row.q == q);
    CHECK(row.length == q * q);
    CHECK(row.ratio == Rat(1));
    q *= 2;
  }

  // F_3[x,y]/(xy): standard monomials 1, x..x^{q-1}, y..y^{q-1}.
  auto quo = LR(3, {"x", "y"}, {"x*y"});
  auto rec3 = hk_sequence(ideal(quo, {"x", "y"}), 4);
  CHECK(rec3.d == 1);
  q = 1;
  for (const auto& row : rec3.rows) {
    CHECK(row.length == 2 * q - 1);
    CHECK(row.ratio == Rat(2 * q - 1, q));
    q *= 3;
  }

  // Non-maximal ideal in one variable: colength of (x^{2q}) is 2q.
  auto line = LR(2, {"x"}, {});
  auto rec1 = hk_sequence(ideal(line, {"x^2"}), 4);
  CHECK(rec1.d == 1);
  q = 1;
  for (const auto& row : rec1.rows) {
    CHECK(row.length == 2 * q);
    CHECK(row.ratio == Rat(2));
    q *= 2;
  }

  CHECK_THROWS_AS(hk_sequence(ideal(lr, {"x"}), 2), InfiniteColength);

  // Caller-supplied dimension override changes only the normalization.
  auto forced = hk_sequence(ideal(line, {"x^2"}), 2, 2);
  CHECK(forced.d == 2);
  CHECK(forced.rows[2].ratio == Rat(8, 16));
}

TEST_CASE("colength sequences: box-ideal oracle and monotonicity") {
  auto lr = LR(2, {"x", "y"}, {});
  auto rng = ptest::make_rng(0xb0c5);
  for (int trial = 0; trial < 10; ++trial) {
    int a = ptest::rnd(rng, 1, 3);
    int b = ptest::rnd(rng, 1, 3);
    auto I = make_ideal(
        lr, {P(lr, "x").pow(static_cast<unsigned long>(a)),
             P(lr, "y").pow(static_cast<unsigned long>(b))});
    auto rec = hk_sequence(I, 3);
    Int q = 1;
    Int prev = 0;
    for (const auto& row : rec.rows) {
      CHECK(row.length == Int(a) * Int(b) * q * q);  // box staircase
      CHECK(row.length >= prev);
      prev = row.length;
      q *= 2;
    }
  }
}

TEST_CASE("multiplicity estimates: exact candidates and refusals") {
  auto quo = LR(3, {"x", "y"}, {"x*y"});
  auto est3 = e_hk_estimate(hk_sequence(ideal(quo, {"x", "y"}), 4));
  REQUIRE(est3.conclusive);
  CHECK(*est3.candidate == Rat(2));
  REQUIRE(est3.coefficients.size() == 2);
  CHECK(est3.coefficients[0] == Rat(2));
  CHECK(est3.coefficients[1] == Rat(-1));
  for (const auto& r : est3.residuals) CHECK(r == 0);

  auto lr = LR(2, {"x", "y"}, {});
  auto est2 = e_hk_estimate(hk_sequence(ideal(lr, {"x", "y"}), 4));
  REQUIRE(est2.conclusive);
  CHECK(*est2.candidate == Rat(1));

  auto line = LR(2, {"x"}, {});
  auto estl = e_hk_estimate(hk_sequence(ideal(line, {"x^2"}), 4));
  REQUIRE(estl.conclusive);
  CHECK(*estl.candidate == Rat(2));

  CHECK_THROWS_AS(e_hk_estimate(hk_sequence(ideal(lr, {"x", "y"}), 1)),
                  InsufficientRows);

  // A corrupted early row must withdraw the candidate, not skew it.
  auto rec = hk_sequence(ideal(lr, {"x", "y"}), 4);
  rec.rows[0].length += 5;
  auto bad = e_hk_estimate(rec);
  CHECK(!bad.conclusive);
  CHECK(!bad.candidate.has_value());
  bool nonzero = false;
  for (const auto& r : bad.residuals)
    if (r != 0) nonzero = true;
  CHECK(nonzero);

  // Too few trailing rows to pin d+1 coefficients: no guess.
  rec = hk_sequence(ideal(lr, {"x", "y"}), 4);
  rec.d = 3;
  auto wide = e_hk_estimate(rec);
  CHECK(!wide.conclusive);
  CHECK(wide.coefficients.empty());
}

TEST_CASE("Seibert fits: pinned coefficient vectors") {
  // length = q^2: pure quadratic in q.
  std::vector<Rat> sq{1, 4, 16, 64, 256};
  auto fit = seibert_fit(sq, 2, 2);
  CHECK(fit.b == std::vector<Rat>{0, 0, 1});
  CHECK(fit.exact);
  for (const auto& r : fit.residuals) CHECK(r == 0);
  CHECK(fit.next_prediction == Rat(1024));

  // length = 2q - 1.
  std::vector<Rat> ln{1, 5, 17, 53, 161};
  auto fit3 = seibert_fit(ln, 1, 3);
  CHECK(fit3.b == std::vector<Rat>{-1, 2});
  CHECK(fit3.exact);
  CHECK(fit3.next_prediction == Rat(2 * 243 - 1));

  // A sequence that is not eventually polynomial in q leaves a residual.
  std::vector<Rat> odd{1, 4, 16, 64, 257};
  auto fodd = seibert_fit(odd, 2, 2);
  CHECK(!fodd.exact);
  CHECK(fodd.residuals.back() == Rat(1));

  CHECK_THROWS_AS(seibert_fit(std::vector<Rat>{1, 2}, 1, 2), InsufficientRows);
}

TEST_CASE("Seibert fit of the Euler characteristic data") {
  // chi_n = sum (-1)^i dim Tor_i(F^n(R/(x,y)), R/(x,y)) over F_2[x,y]: the
  // bracket-power Koszul differentials die mod (x,y), so the dimensions are
  // the Koszul ranks 1, 2, 1 and chi vanishes for every n >= 1.
  auto lr = LR(2, {"x", "y"}, {});
  CyclicModule N{lr, {P(lr, "x"), P(lr, "y")}};
  std::vector<Rat> chi;
  for (unsigned n = 1; n <= 3; ++n) {
    CyclicModule M = peskine_szpiro(N, n);
    Rat acc = 0;
    std::vector<Int> expected{1, 2, 1};
    for (int i = 0; i <= 2; ++i) {
      auto t = tor(M, N, i);
      REQUIRE(t.dimension.has_value());
      CHECK(*t.dimension == expected[static_cast<std::size_t>(i)]);
      acc += (i % 2 == 0 ? Rat(*t.dimension) : -Rat(*t.dimension));
    }
    CHECK(acc == 0);
    chi.push_back(acc);
  }
  auto fit = seibert_fit(chi, 1, 2, /*first_index=*/1);
  CHECK(fit.b == std::vector<Rat>{0, 0});
  CHECK(fit.exact);
  CHECK(fit.next_prediction == 0);
}
