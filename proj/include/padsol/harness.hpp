#pragma once

// Executable checks of the first-order precision behaviour of the solver.
// Each check runs the solver on perturbed inputs and compares against the
// linearised prediction; a `false`/failure count means the guarantee broke.

#include <cstddef>
#include <cstdint>

#include <gmpxx.h>

#include "padsol/dsol.hpp"

namespace padsol {

/// Series with coefficients uniform in [0, p^lambda); constant term forced
/// to 0 when `zero_constant`.
TruncSeries random_series(const PadicContext& ctx, std::size_t order, gmp_randclass& rng,
                          bool zero_constant = false);

/// With Y = dsol(g) and n = g.order():
///   dsol(g + p^j w) - dsol(g) == p^j * h(Y) * integral(w)  mod (p^2j, t^(n+1)).
/// Requires p >= 3, j >= 1, integral(w) p-integral and
/// 2j <= lambda - floor(log_p n) so both solver outputs are known mod p^2j.
bool check_first_differential(const TruncSeries& g, const RhsSpec& h, const TruncSeries& w, int j);

struct PerturbationReport {
  std::size_t forward_pass = 0;
  std::size_t forward_fail = 0;
  std::size_t converse_pass = 0;
  std::size_t converse_fail = 0;

  bool all_passed() const { return forward_fail == 0 && converse_fail == 0; }
};

/// Forward: random delta with integral(delta) = 0 mod p^kappa leaves
/// dsol(g + delta) unchanged mod (p^kappa, t^(n+1)).
/// Converse: for random v = 0 mod p^kappa, the witness
/// gbar = (Y + v)' / h(Y + v) satisfies integral(gbar - g) = 0 mod p^kappa and
/// dsol(gbar) = Y + v mod p^kappa.
/// Trials are spread over hardware threads; results do not depend on the
/// thread count.
PerturbationReport check_perturbation_equivalence(const TruncSeries& g, const RhsSpec& h, int kappa,
                                                  std::size_t trials, std::uint64_t seed);

struct SharpnessReport {
  int lambda = 0;
  int expected_loss = 0;          // s = floor(log_p n)
  int observed_loss = 0;          // lambda - digits on which the two true solutions agree
  bool agree_below = false;       // true solutions agree mod p^(lambda - s)
  bool differ_above = false;      // ... and differ mod p^(lambda - s + 1)
  bool solver_identical = false;  // the solver cannot tell the two inputs apart at lambda
  int solver_guarantee = 0;       // precision the solver reports at lambda

  bool sharp() const {
    return agree_below && differ_above && solver_identical && observed_loss == expected_loss &&
           solver_guarantee == lambda - expected_loss;
  }
};

/// y' = a t^(b-1) with a = p^s, b = p^s, n = b: the inputs a and a + p^lambda
/// coincide mod p^lambda yet their solutions differ in digit lambda - s.
SharpnessReport check_sharpness(std::uint64_t p, int s, int lambda);

}  // namespace padsol
