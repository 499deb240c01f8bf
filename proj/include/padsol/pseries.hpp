#pragma once

// Truncated power series over Z/p^lambda.
//
// A TruncSeries of order n is known modulo t^n and always carries exactly n
// canonical coefficients. Operations return the tightest order their inputs
// justify; zero-padding only happens through the explicit `extended`.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "padsol/zpfixed.hpp"

namespace padsol {

class TruncSeries;

// Wraps coefficients already known to be canonical (no reduction pass).
TruncSeries detail_series_from_canonical(PadicContext ctx, std::vector<mpz_class> coeffs);

class TruncSeries {
 public:
  /// Zero series of the given order.
  TruncSeries(PadicContext ctx, std::size_t order);
  /// Coefficients are reduced into [0, p^lambda); order = coeffs.size().
  TruncSeries(PadicContext ctx, std::vector<mpz_class> coeffs);
  TruncSeries(PadicContext ctx, std::initializer_list<long> coeffs);

  static TruncSeries zero(PadicContext ctx, std::size_t order) { return TruncSeries(std::move(ctx), order); }
  static TruncSeries one(PadicContext ctx, std::size_t order);
  /// c * t^k truncated to `order`.
  static TruncSeries monomial(PadicContext ctx, std::size_t order, std::size_t k, const mpz_class& c = 1);

  const PadicContext& context() const noexcept { return ctx_; }
  std::size_t order() const noexcept { return coeffs_.size(); }
  const std::vector<mpz_class>& reps() const noexcept { return coeffs_; }
  const mpz_class& rep(std::size_t i) const { return coeffs_.at(i); }
  ZpElt coeff(std::size_t i) const { return ZpElt(ctx_, coeffs_.at(i)); }
  bool is_zero() const;

  /// Truncate to a smaller (or equal) order.
  TruncSeries truncated(std::size_t order) const;
  /// Treat the series as a polynomial and zero-pad it to a larger order.
  TruncSeries extended(std::size_t order) const;
  /// Same series (reduced) in another precision of the same prime.
  TruncSeries reduced_to(const PadicContext& ctx) const;

  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
  }

  TruncSeries scaled(const mpz_class& c) const;

 private:
  struct Canonical {};
  TruncSeries(PadicContext ctx, std::vector<mpz_class> coeffs, Canonical)
      : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {}
  friend TruncSeries detail_series_from_canonical(PadicContext, std::vector<mpz_class>);

  PadicContext ctx_;
  std::vector<mpz_class> coeffs_;
};

/// True when a and b agree coefficient-wise modulo p^kappa up to t^(order-1).
bool congruent(const TruncSeries& a, const TruncSeries& b, int kappa, std::size_t order);

// --- multiplication --------------------------------------------------------

/// Product truncated to min(f.order, g.order). Dispatches to schoolbook
/// below kKroneckerThreshold and to Kronecker substitution above.
TruncSeries mul(const TruncSeries& f, const TruncSeries& g);
TruncSeries mul_schoolbook(const TruncSeries& f, const TruncSeries& g);
/// Packs both operands into one integer (evaluation at 2^k), multiplies once
/// with GMP, and unpacks the slots.
TruncSeries mul_kronecker(const TruncSeries& f, const TruncSeries& g);

// --- calculus --------------------------------------------------------------

/// Order f.order - 1; requires f.order >= 1.
TruncSeries derivative(const TruncSeries& f);

/// Order f.order + 1, constant term 0, coefficient at t^i = fixed_div(a_(i-1), i).
/// Throws NonIntegralCoefficient(i) when v_p(a_(i-1)) < v_p(i).
TruncSeries antiderivative(const TruncSeries& f);

// --- Newton iterations -----------------------------------------------------

/// 1/f mod t^order; f(0) must be a unit (NonUnitConstantTerm otherwise).
TruncSeries invert(const TruncSeries& f);

/// Square root with constant term 1. EvenPrime when p = 2, BadConstantTerm
/// when f(0) != 1.
TruncSeries sqrt_unit(const TruncSeries& f);

// --- right-hand sides h(y) -------------------------------------------------

/// Polynomial with exact p-integral rational coefficients, little-endian.
/// Coefficients are mapped into Z/p^lambda on use, so one h serves every
/// precision.
using ExactPoly = std::vector<mpq_class>;

/// Contract for opaque composers: given f mod (p^lambda, t^n) with f(0) = 0,
/// return h(f) mod (p^lambda, t^n). The cost must at least double when n
/// doubles for the Newton cost bound to hold.
using Composer = std::function<TruncSeries(const TruncSeries&)>;

struct PolynomialRhs {
  ExactPoly coeffs;
};
struct RationalRhs {
  ExactPoly num;
  ExactPoly den;
};
struct SqrtRationalRhs {
  ExactPoly num;
  ExactPoly den;
};
struct OpaqueRhs {
  std::string name;
  Composer compose;
};

/// The function h in y' = g * h(y). Every variant satisfies h(0) = 1.
class RhsSpec {
 public:
  using Variant = std::variant<PolynomialRhs, RationalRhs, SqrtRationalRhs, OpaqueRhs>;

  static RhsSpec polynomial(ExactPoly coeffs);
  static RhsSpec rational(ExactPoly num, ExactPoly den);
  /// sqrt(P/Q) with P(0) = Q(0) = 1; unusable when p = 2.
  static RhsSpec sqrt_rational(ExactPoly num, ExactPoly den);
  static RhsSpec opaque(std::string name, Composer compose);

  const Variant& variant() const noexcept { return v_; }
  std::string describe() const;

 private:
  explicit RhsSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Integer-coefficient convenience: {1, 1} is 1 + u.
ExactPoly exact_poly(std::initializer_list<long> coeffs);

/// h(f) mod (p^lambda, t^f.order); requires f(0) = 0.
TruncSeries compose_h(const RhsSpec& h, const TruncSeries& f);

/// Horner evaluation P(f) for an exact polynomial P mapped into f's context.
TruncSeries eval_poly(const ExactPoly& poly, const TruncSeries& f);

/// Generic power-series composition by Horner on truncations, O(n * M(n)).
/// Used as an Opaque composer in tests; `h` supplies h's first n coefficients.
TruncSeries compose_naive(const TruncSeries& h, const TruncSeries& f);

}  // namespace padsol
