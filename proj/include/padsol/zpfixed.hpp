#pragma once

// Fixed-precision p-adic integers: the ring Z/p^lambda with canonical
// representatives in [0, p^lambda) and the three-case division rule.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>

#include <gmpxx.h>

#include "padsol/errors.hpp"

namespace padsol {

enum class Primality {
  checked,  // deterministic below 2^20, probabilistic (GMP) above
  trusted,  // caller vouches for p; no test performed
};

/// The coefficient ring Z/p^lambda.
///
/// Cheap to copy (shared immutable state). When p^lambda < 2^63 the context
/// exposes a word-sized modulus and the arithmetic helpers take a native
/// 64/128-bit path instead of going through GMP.
class PadicContext {
 public:
  PadicContext(std::uint64_t p, int lambda, Primality primality = Primality::checked);

  std::uint64_t p() const noexcept { return data_->p; }
  int lambda() const noexcept { return data_->lambda; }
  const mpz_class& modulus() const noexcept { return data_->modulus; }
  const mpz_class& prime() const noexcept { return data_->prime; }
  std::optional<std::uint64_t> word_modulus() const noexcept {
    if (data_->fits_word) return data_->word;
    return std::nullopt;
  }

  /// p^k as a big integer.
  mpz_class power(long k) const;

  /// Same prime, different precision.
  PadicContext with_lambda(int lambda) const;

  friend bool operator==(const PadicContext& a, const PadicContext& b) noexcept {
    return a.data_ == b.data_ || (a.p() == b.p() && a.lambda() == b.lambda());
  }

 private:
  struct Data {
    std::uint64_t p;
    int lambda;
    mpz_class prime;
    mpz_class modulus;
    std::uint64_t word;
    bool fits_word;
  };
  std::shared_ptr<const Data> data_;
};

/// A p-adic valuation: either a finite integer or +infinity ("zero at this
/// precision"). Infinity compares greater than every finite value.
class Valuation {
 public:
  enum class Kind { finite, plus_infinity };

  static Valuation finite(long v) noexcept { return Valuation(Kind::finite, v); }
  static Valuation plus_infinity() noexcept { return Valuation(Kind::plus_infinity, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  /// Throws std::logic_error on +infinity.
  long value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) noexcept {
    if (a.kind_ != b.kind_) return a.is_finite() ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.value_ <=> b.value_;
  }

 private:
  Valuation(Kind k, long v) noexcept : kind_(k), value_(v) {}
  Kind kind_;
  long value_;
};

/// An element of Z/p^lambda, always held by its canonical representative.
class ZpElt {
 public:
  /// Reduces any integer (negative allowed) into [0, p^lambda).
  ZpElt(PadicContext ctx, const mpz_class& value);
  ZpElt(PadicContext ctx, long value);

  /// Image of a p-integral rational; throws NonIntegralQuotient if p divides
  /// the reduced denominator.
  static ZpElt from_rational(PadicContext ctx, const mpq_class& q);

  const PadicContext& context() const noexcept { return ctx_; }
  const mpz_class& rep() const noexcept { return rep_; }

  bool is_zero() const noexcept { return rep_ == 0; }
  bool is_unit() const;

  /// Largest v <= lambda with p^v | rep, or +infinity when rep = 0.
  Valuation valuation() const;

  ZpElt operator-() const;
  friend ZpElt operator+(const ZpElt& a, const ZpElt& b);
  friend ZpElt operator-(const ZpElt& a, const ZpElt& b);
  friend ZpElt operator*(const ZpElt& a, const ZpElt& b);
  friend bool operator==(const ZpElt& a, const ZpElt& b) {
    return a.ctx_ == b.ctx_ && a.rep_ == b.rep_;
  }

 private:
  struct Canonical {};
  ZpElt(PadicContext ctx, mpz_class rep, Canonical) : ctx_(std::move(ctx)), rep_(std::move(rep)) {}
  friend ZpElt fixed_div(const ZpElt&, const ZpElt&);

  PadicContext ctx_;
  mpz_class rep_;
};

enum class RingOp { add, sub, mul };

ZpElt ring_op(const ZpElt& a, const ZpElt& b, RingOp op);

/// Division in the fixed-precision model.
///   v_p(b) = 0             -> a * b^-1 mod p^lambda
///   0 < v_p(b) <= v_p(a)   -> smallest c >= 0 with b*c = a (mod p^lambda)
///   v_p(a) < v_p(b)        -> NonIntegralQuotient
/// DivisionByZeroRep when b's representative is 0.
ZpElt fixed_div(const ZpElt& a, const ZpElt& b);

/// v_p(k!) by Legendre's formula.
long val_factorial(std::uint64_t k, std::uint64_t p);

/// floor(log_p n) for n >= 1, computed exactly in integers.
int floor_log(std::uint64_t n, std::uint64_t p);

/// v_p of a nonzero integer.
long integer_valuation(const mpz_class& x, std::uint64_t p);

bool is_probable_prime(std::uint64_t p);

namespace detail {

// Low-level helpers on canonical representatives. All outputs canonical.
void reduce(mpz_class& x, const PadicContext& ctx);
void add_mod(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx);
void sub_mod(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx);
void mul_mod(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx);
void neg_mod(mpz_class& r, const mpz_class& a, const PadicContext& ctx);
/// Inverse of a unit modulo p^lambda.
void inv_unit(mpz_class& r, const mpz_class& a, const PadicContext& ctx);
/// Valuation of a representative, capped to +infinity for 0.
Valuation rep_valuation(const mpz_class& rep, const PadicContext& ctx);
/// fixed_div on raw representatives.
void fixed_div_rep(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx);
/// fixed_div where the divisor is the exact integer `divisor` (not just its
/// image mod p^lambda). When v_p(divisor) >= lambda the image is 0; the
/// smallest admissible c is then 0 if a = 0, otherwise the quotient is not
/// integral.
void fixed_div_by_integer(mpz_class& r, const mpz_class& a, std::uint64_t divisor,
                          const PadicContext& ctx);

}  // namespace detail

}  // namespace padsol
