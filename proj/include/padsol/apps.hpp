#pragma once

// Applications of the solver: polynomials from their Newton sums, composed
// products over F_p, and the square-root equation y'^2 = g * h(y).

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "padsol/dsol.hpp"
#include "padsol/pseries.hpp"

namespace padsol {

/// Monic polynomial t^d + c_(d-1) t^(d-1) + ... + c_0 over Z/p^lambda
/// (lambda = 1 gives F_p). Only the non-leading coefficients are stored.
class MonicPoly {
 public:
  MonicPoly(PadicContext ctx, std::vector<mpz_class> lower);
  /// From the full little-endian coefficient list; the last entry must be 1.
  static MonicPoly from_coefficients(PadicContext ctx, std::vector<mpz_class> all);

  const PadicContext& context() const noexcept { return ctx_; }
  std::size_t degree() const noexcept { return lower_.size(); }
  const std::vector<mpz_class>& lower() const noexcept { return lower_; }
  /// c_0, ..., c_(d-1), 1.
  std::vector<mpz_class> coefficients() const;

  /// Canonical lift / reduction to another precision of the same prime.
  MonicPoly reduced_to(const PadicContext& ctx) const;

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

 private:
  PadicContext ctx_;
  std::vector<mpz_class> lower_;
};

/// H_f = sum_(k>=0) nu_(k+1) t^k, where nu_k is the k-th power sum of the
/// roots of f.
struct NewtonSeries {
  TruncSeries series;
  std::size_t degree;
};

/// H_f mod (p^lambda, t^n), computed as -rev(f)' / rev(f).
NewtonSeries newton_series(const MonicPoly& f, std::size_t n);

struct RecoveredPoly {
  MonicPoly poly;
  int guaranteed_precision;  // coefficients are exact mod p^this
};

/// Recovers f of degree d from H_f mod (p^lambda, t^d) by solving
/// z' = -H (1 + z) and reading off rev(f) = 1 + z. Coefficients are exact
/// modulo p^(lambda - floor(log_p d)).
RecoveredPoly recover_from_newton_series(const NewtonSeries& h, std::size_t d);

/// Coefficient-wise product.
TruncSeries hadamard(const TruncSeries& a, const TruncSeries& b);

/// The monic polynomial whose roots are all products alpha_i * beta_j, for
/// f, g monic over F_p with nonzero constant terms. Works by lifting to
/// Z/p^lambda with lambda = kappa + floor(log_p(de)), multiplying Newton
/// series coefficient-wise, and recovering mod p.
MonicPoly composed_product(const MonicPoly& f, const MonicPoly& g);

/// Working precision used by composed_product for degree product de.
int composed_product_precision(std::uint64_t p, std::size_t de);

/// Solves y'^2 = g * h(y), y(0) = 0, y'(0) = 1 as y' = sqrt(g) sqrt(h(y)).
/// Requires p != 2 and g(0) = h(0) = 1; g must be known mod t^n.
Solution solve_separated_square(const TruncSeries& g, const RhsSpec& h, std::size_t n);

/// sqrt(h) as a right-hand side usable by the solver.
RhsSpec sqrt_rhs(const RhsSpec& h);

// The isogeny-style test equation
//   y'^2 = (1 + m^2/4 y^2 + m^6 y^6) / (1 + t^2/4 + t^6).

/// g = 1 / (1 + t^2/4 + t^6) mod (p^lambda, t^order).
TruncSeries isogeny_g(const PadicContext& ctx, std::size_t order);
/// h(u) = 1 + m^2/4 u^2 + m^6 u^6.
RhsSpec isogeny_h(std::uint64_t m);

}  // namespace padsol
