#pragma once

// Newton iteration for y' = g * h(y), y(0) = 0, in the fixed-precision model,
// and the precision planner that picks the working precision.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "padsol/pseries.hpp"

namespace padsol {

/// Precision budget for computing y mod (p^kappa, t^(n+1)).
///
/// `lambda` is the optimal working precision kappa + floor(log_p n);
/// `mu_lambda` is kappa + mu(n), the budget obtained by charging the loss of
/// every Newton step separately. Kept for comparison and benchmarking.
struct SolvePlan {
  std::uint64_t p;
  std::size_t n;
  int kappa;
  int lambda;
  int mu_lambda;

  PadicContext context() const { return PadicContext(p, lambda, Primality::trusted); }
  PadicContext legacy_context() const { return PadicContext(p, mu_lambda, Primality::trusted); }
};

/// Throws KappaTooSmall when kappa < 1, or kappa < 2 with p = 2.
SolvePlan plan(int kappa, std::size_t n, std::uint64_t p);

/// mu(0) = 0, mu(n) = floor(log_p n) + mu(ceil((n-1)/2)). O(log(n)^2).
int mu(std::size_t n, std::uint64_t p);

/// Digits lost by the solver: floor(log_p n), or 0 for n = 0.
int precision_loss(std::size_t n, std::uint64_t p);

/// The orders n, ceil((n-1)/2), ..., 0 visited by the solver, in increasing
/// order (the first entry is always 0).
std::vector<std::size_t> newton_schedule(std::size_t n);

/// One Newton update u - h(u) * integral(u'/h(u) - g), returned mod
/// t^(target_order+1). Requires u(0) = 0, g.order >= target_order and
/// target_order + 1 <= 2 * u.order.
TruncSeries newton_step(const TruncSeries& g, const RhsSpec& h, const TruncSeries& u, std::size_t target_order);

struct Solution {
  TruncSeries series;         // mod (p^lambda, t^(n+1))
  int guaranteed_precision;   // kappa such that series = Y(g) mod p^kappa; 0 if none
};

/// Solves y' = g * h(y), y(0) = 0 up to t^n at g's precision lambda.
/// If Y(g) is p-integral, the result agrees with it modulo
/// p^(lambda - floor(log_p n)). Throws NonIntegralCoefficient otherwise.
Solution dsol(const TruncSeries& g, const RhsSpec& h, std::size_t n);

/// Runs dsol at the plan's lambda; g is reduced (or lifted) to that precision.
Solution dsol(const SolvePlan& plan, const TruncSeries& g, const RhsSpec& h);

}  // namespace padsol
