#include <doctest.h>

#include "oracles.hpp"
#include "padsol/harness.hpp"

using namespace padsol;

namespace {

// g = y'/h(y) for a random integral y, so Y(g) = y is integral.
TruncSeries g_with_integral_solution(const PadicContext& c, const RhsSpec& h, std::size_t n, gmp_randclass& rng) {
  const TruncSeries y = random_series(c, n + 1, rng, true);
  return mul(derivative(y), invert(compose_h(h, y).truncated(n)));
}

}  // namespace

TEST_CASE("random_series") {
  oracle::Rng rng(41);
  const PadicContext c(3, 4);
  const TruncSeries s = random_series(c, 200, rng, true);
  CHECK(s.order() == 200);
  CHECK(s.rep(0) == 0);
  bool big = false;
  for (const auto& r : s.reps()) big = big || r >= 27;
  CHECK(big);
}

TEST_CASE("first differential examples") {
  const PadicContext c(5, 4);
  const RhsSpec lin = RhsSpec::polynomial(exact_poly({1, 1}));
  CHECK(check_first_differential(TruncSeries::one(c, 3), lin, TruncSeries(c, 3), 1));
  CHECK(check_first_differential(TruncSeries::one(c, 3), lin, TruncSeries::one(c, 3), 1));
  CHECK_THROWS_AS(check_first_differential(TruncSeries::one(c, 3), lin, TruncSeries::one(c, 3), 3),
                  PreconditionViolation);
  CHECK_THROWS_AS(check_first_differential(TruncSeries::one(PadicContext(2, 6), 3), lin,
                                           TruncSeries::one(PadicContext(2, 6), 3), 1),
                  PreconditionViolation);
  // integral(t^4) = t^5/5 is not 5-integral.
  CHECK_THROWS_AS(check_first_differential(TruncSeries::one(c, 5), RhsSpec::polynomial(exact_poly({1, 2, 1})),
                                           TruncSeries::monomial(c, 5, 4), 1),
                  PreconditionViolation);
}

TEST_CASE("first differential on random inputs") {
  oracle::Rng rng(42);
  const RhsSpec h = RhsSpec::polynomial(exact_poly({1, 2, 1}));
  for (std::uint64_t p : {3, 5, 7}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 3 + static_cast<std::size_t>(trial) * 4;
      const int j = 1 + trial % 2;
      const PadicContext c(p, 2 * j + floor_log(n, p));
      const TruncSeries g = g_with_integral_solution(c, h, n, rng);
      const TruncSeries w = derivative(random_series(c, n + 1, rng));
      CHECK(check_first_differential(g, h, w, j));
    }
  }
}

TEST_CASE("perturbation equivalence") {
  oracle::Rng rng(43);
  const RhsSpec sq = RhsSpec::polynomial(exact_poly({1, 2, 1}));
  const PadicContext c(5, 4);
  // integral(25 t^3) = 25 t^4 / 4 = 0 mod 25.
  const Solution a = dsol(TruncSeries::one(c, 10), sq, 10);
  const Solution b = dsol(TruncSeries::one(c, 10) + TruncSeries::monomial(c, 10, 3, 25), sq, 10);
  CHECK(congruent(a.series, b.series, 2, 11));

  // Converse witness for v = 25 t.
  const TruncSeries ybar = a.series + TruncSeries::monomial(c, 11, 1, 25);
  const TruncSeries gbar = mul(derivative(ybar), invert(compose_h(sq, ybar).truncated(10)));
  CHECK(congruent(antiderivative(gbar - TruncSeries::one(c, 10)), TruncSeries(c, 11), 2, 11));

  for (std::uint64_t p : {3, 5, 7}) {
    const int kappa = 2;
    const std::size_t n = 20;
    const PadicContext ctx(p, kappa + floor_log(n, p));
    const TruncSeries g = g_with_integral_solution(ctx, sq, n, rng);
    const PerturbationReport r = check_perturbation_equivalence(g, sq, kappa, 12, 7 + p);
    CHECK(r.forward_pass == 12);
    CHECK(r.converse_pass == 12);
    CHECK(r.all_passed());
    const PerturbationReport again = check_perturbation_equivalence(g, sq, kappa, 12, 7 + p);
    CHECK(again.forward_pass == r.forward_pass);
  }
}

TEST_CASE("sharpness of the planned loss") {
  for (auto [p, s, lambda] : {std::tuple<std::uint64_t, int, int>{5, 1, 3}, {3, 2, 5}, {7, 1, 4}, {2, 3, 6}}) {
    const SharpnessReport r = check_sharpness(p, s, lambda);
    CAPTURE(p);
    CHECK(r.expected_loss == s);
    CHECK(r.observed_loss == s);
    CHECK(r.sharp());
  }
}
