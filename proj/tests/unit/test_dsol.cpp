#include <doctest.h>

#include "oracles.hpp"
#include "padsol/dsol.hpp"
#include "padsol/harness.hpp"
#include "padsol/instrument.hpp"

using namespace padsol;

TEST_CASE("plan and mu") {
  const SolvePlan big = plan(1, 417124, 5);
  CHECK(big.lambda == 9);
  CHECK(big.mu_lambda == 72);
  CHECK(1 + mu(417124, 5) == 72);
  CHECK(plan(3, 1, 5).lambda == 3);
  CHECK(plan(3, 0, 5).lambda == 3);
  CHECK(mu(0, 5) == 0);
  for (std::uint64_t p : {2, 3, 5, 7}) CHECK(mu(1, p) == 0);
  CHECK_THROWS_AS(plan(1, 10, 2), KappaTooSmall);
  CHECK_THROWS_AS(plan(0, 10, 5), KappaTooSmall);
  CHECK(plan(2, 10, 2).lambda == 5);
  for (std::size_t n = 0; n < 3000; n += 7) {
    for (std::uint64_t p : {2, 3, 5}) {
      const SolvePlan pl = plan(2, n, p);
      CHECK(pl.mu_lambda >= pl.lambda);
      // Independent recursive definition of mu.
      std::function<int(std::size_t)> rec = [&](std::size_t k) -> int {
        return k == 0 ? 0 : floor_log(k, p) + rec((k - 1 + 1) / 2);
      };
      CHECK(mu(n, p) == rec(n));
    }
  }
}

TEST_CASE("newton schedule") {
  CHECK(newton_schedule(0) == std::vector<std::size_t>{0});
  CHECK(newton_schedule(7) == std::vector<std::size_t>{0, 1, 3, 7});
  CHECK(newton_schedule(10) == std::vector<std::size_t>{0, 1, 2, 5, 10});
  for (std::size_t n = 1; n < 500; ++n) {
    const auto s = newton_schedule(n);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] + 1 <= 2 * (s[i - 1] + 1));
  }
}

TEST_CASE("newton_step examples") {
  const PadicContext c(5, 3);
  const RhsSpec one = RhsSpec::polynomial(exact_poly({1}));
  CHECK(newton_step(TruncSeries::one(c, 1), one, TruncSeries(c, 1), 1) == TruncSeries(c, {0, 1}));

  const RhsSpec sq = RhsSpec::polynomial(exact_poly({1, 2, 1}));
  CHECK(newton_step(TruncSeries::one(c, 3), sq, TruncSeries(c, {0, 1}), 3) == TruncSeries(c, {0, 1, 1, 1}));

  // y' = 1 + y: y = exp(t) - 1; one step from mod t^4 to mod t^8 at p = 11.
  const PadicContext c11(11, 8);
  const auto want = oracle::solve_ode(oracle::ints({1, 0, 0, 0, 0, 0, 0, 0}), oracle::q_poly_rhs(oracle::ints({1, 1})), 7);
  const TruncSeries u4 = oracle::reduce(oracle::QSeries(want.begin(), want.begin() + 4), c11);
  const TruncSeries step = newton_step(TruncSeries::one(c11, 7), RhsSpec::polynomial(exact_poly({1, 1})), u4, 7);
  CHECK(step == oracle::reduce(want, c11));
  for (std::size_t k = 1; k < 8; ++k) {
    mpz_class fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<unsigned long>(i);
    CHECK(want[k] == mpq_class(1, fact));
  }

  CHECK_THROWS_AS(newton_step(TruncSeries::one(c, 3), one, TruncSeries(c, {1, 1}), 2), PreconditionViolation);
  CHECK_THROWS_AS(newton_step(TruncSeries::one(c, 9), one, TruncSeries(c, {0, 1}), 4), PreconditionViolation);
  CHECK_THROWS_AS(newton_step(TruncSeries::one(c, 2), one, TruncSeries(c, {0, 1}), 3), PreconditionViolation);
}

TEST_CASE("dsol examples") {
  const PadicContext c(5, 3);
  const RhsSpec lin = RhsSpec::polynomial(exact_poly({1, 1}));
  for (std::size_t n : {1u, 4u, 9u, 30u}) {
    const TruncSeries g = invert(TruncSeries(c, {1, 1}).extended(n));
    const Solution s = dsol(g, lin, n);
    CHECK(s.series == TruncSeries::monomial(c, n + 1, 1));
  }
  const Solution geo = dsol(TruncSeries::one(c, 7), RhsSpec::polynomial(exact_poly({1, 2, 1})), 7);
  // Exact answer t/(1-t); guaranteed mod 5^(3 - floor(log_5 7)) = 5^2.
  CHECK(geo.guaranteed_precision == 2);
  CHECK(congruent(geo.series, TruncSeries(c, {0, 1, 1, 1, 1, 1, 1, 1}), 2, 8));

  const RhsSpec one = RhsSpec::polynomial(exact_poly({1}));
  const Solution a = dsol(TruncSeries::monomial(c, 5, 4, 5), one, 5);
  CHECK(a.series == TruncSeries::monomial(c, 6, 5));
  const Solution b = dsol(TruncSeries::monomial(c, 5, 4, 5 + 125), one, 5);
  CHECK(b.series == a.series);  // 130 = 5 mod 125: the solver cannot tell them apart
  // The true solution for 5 + 5^3 is (1 + 5^2) t^5, which agrees with t^5 only mod 5^2.
  const PadicContext hi(5, 6);
  const Solution exact = dsol(TruncSeries::monomial(hi, 5, 4, 130), one, 5);
  CHECK(exact.series == TruncSeries::monomial(hi, 6, 5, 26));
  CHECK(congruent(exact.series.reduced_to(c), a.series, 2, 6));
  CHECK_FALSE(congruent(exact.series.reduced_to(c), a.series, 3, 6));

  const Solution zero = dsol(TruncSeries(c, 0), lin, 0);
  CHECK(zero.series == TruncSeries(c, 1));
}

TEST_CASE("dsol reports non-integral solutions") {
  const PadicContext c(5, 3);
  try {
    dsol(TruncSeries::monomial(c, 6, 4), RhsSpec::polynomial(exact_poly({1})), 6);
    FAIL("expected NonIntegralCoefficient");
  } catch (const NonIntegralCoefficient& e) {
    CHECK(e.index() == 5);
  }
  CHECK_THROWS_AS(dsol(TruncSeries::one(c, 3), RhsSpec::polynomial(exact_poly({1})), 4), PreconditionViolation);
}

TEST_CASE("dsol with a plan") {
  const SolvePlan pl = plan(2, 30, 3);
  const PadicContext lo(3, 2), hi(3, 10);
  const RhsSpec h = RhsSpec::polynomial(exact_poly({1, 2, 1}));
  CHECK_THROWS_AS(dsol(pl, TruncSeries::one(lo, 30), h), PreconditionViolation);
  const Solution s = dsol(pl, TruncSeries::one(hi, 30), h);
  CHECK(s.series.context().lambda() == pl.lambda);
  CHECK(s.guaranteed_precision == 2);
}

TEST_CASE("oracle equivalence on random solutions") {
  oracle::Rng rng(31);
  const std::vector<RhsSpec> hs = {RhsSpec::polynomial(exact_poly({1, 1})), RhsSpec::polynomial(exact_poly({1, 2, 1})),
                                   RhsSpec::rational(exact_poly({1}), exact_poly({1, -1}))};
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    for (std::size_t n : {1u, 5u, 26u, 90u}) {
      const int kappa = p == 2 ? 2 : 1 + static_cast<int>(n % 3);
      const SolvePlan pl = plan(kappa, n, p);
      const PadicContext c = pl.context();
      for (const auto& h : hs) {
        const TruncSeries y = random_series(c, n + 1, rng, true);
        const TruncSeries g = mul(derivative(y), invert(compose_h(h, y).truncated(n)));
        const Solution s = dsol(g, h, n);
        CHECK(s.guaranteed_precision == kappa);
        CHECK(congruent(s.series, y, kappa, n + 1));
      }
    }
  }
  // sqrt-rational right-hand side, p odd.
  const RhsSpec sh = RhsSpec::sqrt_rational(exact_poly({1, 3}), exact_poly({1, 0, 1}));
  for (std::uint64_t p : {3, 5}) {
    const SolvePlan pl = plan(2, 60, p);
    const TruncSeries y = random_series(pl.context(), 61, rng, true);
    const TruncSeries g = mul(derivative(y), invert(compose_h(sh, y).truncated(60)));
    CHECK(congruent(dsol(pl, g, sh).series, y, 2, 61));
  }
}

TEST_CASE("divisions in dsol stay within the planned loss") {
  oracle::Rng rng(32);
  for (std::uint64_t p : {3, 5}) {
    for (std::size_t n : {10u, 77u, 300u}) {
      const SolvePlan pl = plan(2, n, p);
      const PadicContext c = pl.context();
      const RhsSpec h = RhsSpec::rational(exact_poly({1}), exact_poly({1, -1}));
      const TruncSeries y = random_series(c, n + 1, rng, true);
      const TruncSeries g = mul(derivative(y), invert(compose_h(h, y).truncated(n)));
      reset_op_counters();
      const Solution s = dsol(g, h, n);
      const OpCounters k = op_counters();
      CHECK(congruent(s.series, y, 2, n + 1));
      CHECK(k.max_divisor_valuation <= floor_log(n, p));
      CHECK(k.nonunit_divisions > 0);
      CHECK(k.series_ops > 0);
    }
  }
}
