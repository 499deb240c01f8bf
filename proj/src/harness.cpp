#include "padsol/harness.hpp"

#include <algorithm>
#include <thread>

namespace padsol {

namespace {

// Seeds each trial independently so the outcome does not depend on how
// trials are spread over threads.
void seed_trial(gmp_randclass& rng, std::uint64_t seed, std::size_t trial) {
  mpz_class s = static_cast<unsigned long>(seed);
  s = s * 1000003 + static_cast<unsigned long>(trial);
  rng.seed(s);
}

template <class Trial>
void run_parallel(std::size_t trials, Trial&& trial) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(trials, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < trials; ++i) trial(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < trials; i += workers) trial(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

TruncSeries random_series(const PadicContext& ctx, std::size_t order, gmp_randclass& rng, bool zero_constant) {
  std::vector<mpz_class> c(order);
  for (std::size_t i = 0; i < order; ++i) {
    if (i == 0 && zero_constant) continue;
    c[i] = rng.get_z_range(ctx.modulus());
  }
  return TruncSeries(ctx, std::move(c));
}

bool check_first_differential(const TruncSeries& g, const RhsSpec& h, const TruncSeries& w, int j) {
  const auto& ctx = g.context();
  const std::size_t n = g.order();
  if (ctx.p() < 3) throw PreconditionViolation("first-differential check needs p >= 3");
  if (j < 1) throw PreconditionViolation("j must be >= 1");
  if (2 * j > ctx.lambda() - precision_loss(n, ctx.p())) {
    throw PreconditionViolation("2j exceeds the precision the solver guarantees");
  }
  if (w.order() < n) throw PreconditionViolation("w must be known mod t^n");

  TruncSeries int_w(ctx, 0);
  try {
    int_w = antiderivative(w.truncated(n));
  } catch (const NonIntegralCoefficient&) {
    throw PreconditionViolation("integral of w is not p-integral");
  }

  const mpz_class pj = ctx.power(j);
  const TruncSeries y = dsol(g, h, n).series;
  const TruncSeries y_shifted = dsol(g + w.truncated(n).scaled(pj), h, n).series;
  const TruncSeries lhs = y_shifted - y;
  const TruncSeries rhs = mul(compose_h(h, y), int_w).scaled(pj);
  return congruent(lhs, rhs, 2 * j, n + 1);
}

PerturbationReport check_perturbation_equivalence(const TruncSeries& g, const RhsSpec& h, int kappa,
                                                  std::size_t trials, std::uint64_t seed) {
  const auto& ctx = g.context();
  const std::size_t n = g.order();
  if (kappa < (ctx.p() == 2 ? 2 : 1)) throw KappaTooSmall("kappa too small for this prime");
  if (ctx.lambda() < kappa + precision_loss(n, ctx.p())) {
    throw PreconditionViolation("lambda below kappa + floor(log_p n)");
  }
  const TruncSeries y = dsol(g, h, n).series;
  const mpz_class pk = ctx.power(kappa);

  std::vector<char> forward_ok(trials, 0), converse_ok(trials, 0);
  run_parallel(trials, [&](std::size_t t) {
    gmp_randclass rng(gmp_randinit_mt);
    seed_trial(rng, seed, t);
    try {
      // integral(delta) = p^kappa * D by construction.
      const TruncSeries delta = derivative(random_series(ctx, n + 1, rng, true).scaled(pk));
      forward_ok[t] = congruent(dsol(g + delta, h, n).series, y, kappa, n + 1);
    } catch (const Error&) {
      forward_ok[t] = 0;
    }
    try {
      const TruncSeries v = random_series(ctx, n + 1, rng, true).scaled(pk);
      const TruncSeries y_bar = y + v;
      const TruncSeries g_bar = mul(derivative(y_bar), invert(compose_h(h, y_bar).truncated(n)));
      const TruncSeries drift = antiderivative(g_bar - g);
      const bool integral_ok = congruent(drift, TruncSeries(ctx, n + 1), kappa, n + 1);
      converse_ok[t] = integral_ok && congruent(dsol(g_bar, h, n).series, y_bar, kappa, n + 1);
    } catch (const Error&) {
      converse_ok[t] = 0;
    }
  });

  PerturbationReport r;
  for (std::size_t t = 0; t < trials; ++t) {
    (forward_ok[t] ? r.forward_pass : r.forward_fail)++;
    (converse_ok[t] ? r.converse_pass : r.converse_fail)++;
  }
  return r;
}

SharpnessReport check_sharpness(std::uint64_t p, int s, int lambda) {
  if (s < 0 || lambda <= s) throw PreconditionViolation("sharpness needs 0 <= s < lambda");
  const PadicContext probe(p, 1);
  const mpz_class b_big = probe.power(s);
  if (!b_big.fits_ulong_p()) throw PreconditionViolation("p^s too large");
  const std::size_t b = b_big.get_ui();
  const std::size_t n = b;

  SharpnessReport r;
  r.lambda = lambda;
  r.expected_loss = precision_loss(n, p);

  const RhsSpec one = RhsSpec::polynomial(exact_poly({1}));
  // Reference solutions at enough precision to be exact in the digits examined.
  const PadicContext hi(p, lambda + s + 1, Primality::trusted);
  const mpz_class a1 = b_big, a2 = b_big + hi.power(lambda);
  const TruncSeries y1 = dsol(TruncSeries::monomial(hi, n, b - 1, a1), one, n).series;
  const TruncSeries y2 = dsol(TruncSeries::monomial(hi, n, b - 1, a2), one, n).series;

  int agree = 0;
  while (agree < hi.lambda() - s && congruent(y1, y2, agree + 1, n + 1)) ++agree;
  r.observed_loss = lambda - agree;
  r.agree_below = congruent(y1, y2, lambda - s, n + 1);
  r.differ_above = !congruent(y1, y2, lambda - s + 1, n + 1);

  const PadicContext lo(p, lambda, Primality::trusted);
  const Solution s1 = dsol(TruncSeries::monomial(lo, n, b - 1, a1), one, n);
  const Solution s2 = dsol(TruncSeries::monomial(lo, n, b - 1, a2), one, n);
  r.solver_identical = s1.series == s2.series;
  r.solver_guarantee = s1.guaranteed_precision;
  return r;
}

}  // namespace padsol
