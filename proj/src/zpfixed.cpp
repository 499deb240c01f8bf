#include "padsol/zpfixed.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "padsol/instrument.hpp"

namespace padsol {

namespace {

thread_local OpCounters g_counters;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kDeterministicPrimeBound = u64{1} << 20;
constexpr u64 kWordLimit = u64{1} << 63;

bool trial_division_prime(u64 p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (u64 d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

mpz_class from_u64(u64 x) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
  return z;
}

u64 to_u64(const mpz_class& z) {
  // Callers guarantee 0 <= z < 2^64.
  return mpz_size(z.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(z.get_mpz_t(), 0);
}

void set_u64(mpz_class& z, u64 x) {
  if (x <= std::numeric_limits<unsigned long>::max()) {
    z = static_cast<unsigned long>(x);
  } else {
    z = from_u64(x);
  }
}

void count_division(long divisor_valuation) {
  if (divisor_valuation == 0) {
    ++g_counters.unit_divisions;
  } else {
    ++g_counters.nonunit_divisions;
    if (divisor_valuation > g_counters.max_divisor_valuation) {
      g_counters.max_divisor_valuation = divisor_valuation;
    }
  }
}

}  // namespace

OpCounters& op_counters() noexcept { return g_counters; }
void reset_op_counters() noexcept { g_counters = OpCounters{}; }

static_assert(sizeof(mp_limb_t) == 8 && GMP_NAIL_BITS == 0, "expects 64-bit GMP limbs");

bool is_probable_prime(u64 p) {
  if (p < kDeterministicPrimeBound) return trial_division_prime(p);
  return mpz_probab_prime_p(from_u64(p).get_mpz_t(), 30) != 0;
}

PadicContext::PadicContext(u64 p, int lambda, Primality primality) {
  if (p < 2) throw InvalidInput("p must be a prime >= 2");
  if (lambda < 1) throw InvalidInput("lambda must be >= 1");
  if (primality == Primality::checked && !is_probable_prime(p)) {
    throw InvalidInput(std::to_string(p) + " is not prime");
  }
  Data d{p, lambda, from_u64(p), 0, 0, false};
  mpz_pow_ui(d.modulus.get_mpz_t(), d.prime.get_mpz_t(), static_cast<unsigned long>(lambda));
  if (mpz_sizeinbase(d.modulus.get_mpz_t(), 2) <= 63) {
    d.word = to_u64(d.modulus);
    d.fits_word = d.word < kWordLimit;
  }
  data_ = std::make_shared<const Data>(std::move(d));
}

mpz_class PadicContext::power(long k) const {
  if (k < 0) throw std::invalid_argument("negative exponent");
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), data_->prime.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

PadicContext PadicContext::with_lambda(int lambda) const {
  return PadicContext(p(), lambda, Primality::trusted);
}

long Valuation::value() const {
  if (!is_finite()) throw std::logic_error("valuation is +infinity");
  return value_;
}

// ---------------------------------------------------------------------------
// detail

namespace detail {

void reduce(mpz_class& x, const PadicContext& ctx) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), ctx.modulus().get_mpz_t());
}

void add_mod(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx) {
  if (auto m = ctx.word_modulus()) {
    u64 s = to_u64(a) + to_u64(b);  // < 2^64 since m < 2^63
    if (s >= *m) s -= *m;
    set_u64(r, s);
    return;
  }
  mpz_add(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (mpz_cmp(r.get_mpz_t(), ctx.modulus().get_mpz_t()) >= 0) {
    mpz_sub(r.get_mpz_t(), r.get_mpz_t(), ctx.modulus().get_mpz_t());
  }
}

void sub_mod(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx) {
  if (auto m = ctx.word_modulus()) {
    u64 x = to_u64(a), y = to_u64(b);
    set_u64(r, x >= y ? x - y : x + (*m - y));
    return;
  }
  mpz_sub(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (mpz_sgn(r.get_mpz_t()) < 0) mpz_add(r.get_mpz_t(), r.get_mpz_t(), ctx.modulus().get_mpz_t());
}

void mul_mod(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx) {
  if (auto m = ctx.word_modulus()) {
    set_u64(r, static_cast<u64>(static_cast<u128>(to_u64(a)) * to_u64(b) % *m));
    return;
  }
  mpz_mul(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), ctx.modulus().get_mpz_t());
}

void neg_mod(mpz_class& r, const mpz_class& a, const PadicContext& ctx) {
  if (a == 0) {
    r = 0;
    return;
  }
  mpz_sub(r.get_mpz_t(), ctx.modulus().get_mpz_t(), a.get_mpz_t());
}

void inv_unit(mpz_class& r, const mpz_class& a, const PadicContext& ctx) {
  if (auto m = ctx.word_modulus()) {
    // Extended Euclid on signed 128-bit values.
    __int128 old_r = static_cast<__int128>(to_u64(a)), cur_r = static_cast<__int128>(*m);
    __int128 old_s = 1, cur_s = 0;
    while (cur_r != 0) {
      __int128 q = old_r / cur_r;
      __int128 t = old_r - q * cur_r;
      old_r = cur_r;
      cur_r = t;
      t = old_s - q * cur_s;
      old_s = cur_s;
      cur_s = t;
    }
    if (old_r != 1) throw NonUnitConstantTerm();
    __int128 s = old_s % static_cast<__int128>(*m);
    if (s < 0) s += static_cast<__int128>(*m);
    set_u64(r, static_cast<u64>(s));
    return;
  }
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), ctx.modulus().get_mpz_t()) == 0) {
    throw NonUnitConstantTerm();
  }
}

Valuation rep_valuation(const mpz_class& rep, const PadicContext& ctx) {
  if (rep == 0) return Valuation::plus_infinity();
  return Valuation::finite(integer_valuation(rep, ctx.p()));
}

void fixed_div_rep(mpz_class& r, const mpz_class& a, const mpz_class& b, const PadicContext& ctx) {
  if (b == 0) throw DivisionByZeroRep();
  const long vb = integer_valuation(b, ctx.p());
  count_division(vb);
  if (vb == 0) {
    mpz_class inv;
    inv_unit(inv, b, ctx);
    mul_mod(r, a, inv, ctx);
    return;
  }
  if (a == 0) {
    r = 0;
    return;
  }
  if (integer_valuation(a, ctx.p()) < vb) throw NonIntegralQuotient();
  // c = (a/p^v) * (b/p^v)^-1 mod p^(lambda - v), canonical in [0, p^(lambda-v)).
  const mpz_class pv = ctx.power(vb);
  const mpz_class reduced_mod = ctx.power(ctx.lambda() - vb);
  mpz_class a1, b1;
  mpz_divexact(a1.get_mpz_t(), a.get_mpz_t(), pv.get_mpz_t());
  mpz_divexact(b1.get_mpz_t(), b.get_mpz_t(), pv.get_mpz_t());
  mpz_invert(b1.get_mpz_t(), b1.get_mpz_t(), reduced_mod.get_mpz_t());
  mpz_mul(r.get_mpz_t(), a1.get_mpz_t(), b1.get_mpz_t());
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), reduced_mod.get_mpz_t());
}

void fixed_div_by_integer(mpz_class& r, const mpz_class& a, u64 divisor, const PadicContext& ctx) {
  if (divisor == 0) throw DivisionByZeroRep();
  const mpz_class exact = from_u64(divisor);
  const long v = integer_valuation(exact, ctx.p());
  if (v >= ctx.lambda()) {
    count_division(v);
    if (a != 0) throw NonIntegralQuotient();
    r = 0;
    return;
  }
  mpz_class b = exact;
  if (!ctx.word_modulus() || divisor >= *ctx.word_modulus()) reduce(b, ctx);
  fixed_div_rep(r, a, b, ctx);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ZpElt

ZpElt::ZpElt(PadicContext ctx, const mpz_class& value) : ctx_(std::move(ctx)), rep_(value) {
  detail::reduce(rep_, ctx_);
}

ZpElt::ZpElt(PadicContext ctx, long value) : ZpElt(std::move(ctx), mpz_class(value)) {}

ZpElt ZpElt::from_rational(PadicContext ctx, const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (integer_valuation(c.get_den(), ctx.p()) > 0) throw NonIntegralQuotient();
  mpz_class num = c.get_num();
  detail::reduce(num, ctx);
  mpz_class den = c.get_den();
  detail::reduce(den, ctx);
  mpz_class inv, r;
  detail::inv_unit(inv, den, ctx);
  detail::mul_mod(r, num, inv, ctx);
  return ZpElt(std::move(ctx), std::move(r), Canonical{});
}

bool ZpElt::is_unit() const { return mpz_divisible_p(rep_.get_mpz_t(), ctx_.prime().get_mpz_t()) == 0; }

Valuation ZpElt::valuation() const { return detail::rep_valuation(rep_, ctx_); }

ZpElt ZpElt::operator-() const {
  mpz_class r;
  detail::neg_mod(r, rep_, ctx_);
  return ZpElt(ctx_, std::move(r), Canonical{});
}

ZpElt operator+(const ZpElt& a, const ZpElt& b) { return ring_op(a, b, RingOp::add); }
ZpElt operator-(const ZpElt& a, const ZpElt& b) { return ring_op(a, b, RingOp::sub); }
ZpElt operator*(const ZpElt& a, const ZpElt& b) { return ring_op(a, b, RingOp::mul); }

ZpElt ring_op(const ZpElt& a, const ZpElt& b, RingOp op) {
  if (!(a.context() == b.context())) throw ContextMismatch();
  mpz_class r;
  switch (op) {
    case RingOp::add: detail::add_mod(r, a.rep(), b.rep(), a.context()); break;
    case RingOp::sub: detail::sub_mod(r, a.rep(), b.rep(), a.context()); break;
    case RingOp::mul: detail::mul_mod(r, a.rep(), b.rep(), a.context()); break;
  }
  return ZpElt(a.context(), r);
}

ZpElt fixed_div(const ZpElt& a, const ZpElt& b) {
  if (!(a.context() == b.context())) throw ContextMismatch();
  mpz_class r;
  detail::fixed_div_rep(r, a.rep(), b.rep(), a.context());
  return ZpElt(a.context(), std::move(r), ZpElt::Canonical{});
}

// ---------------------------------------------------------------------------
// integer helpers

long val_factorial(u64 k, u64 p) {
  long v = 0;
  while (k > 0) {
    k /= p;
    v += static_cast<long>(k);
  }
  return v;
}

int floor_log(u64 n, u64 p) {
  if (n == 0) throw std::invalid_argument("floor_log of 0");
  int e = 0;
  u128 pw = p;
  while (pw <= n) {
    ++e;
    pw *= p;
  }
  return e;
}

long integer_valuation(const mpz_class& x, u64 p) {
  if (x == 0) throw std::invalid_argument("valuation of 0");
  if (p == 2) return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
  if (mpz_fits_ulong_p(x.get_mpz_t()) && p <= std::numeric_limits<unsigned long>::max()) {
    unsigned long v = x.get_ui();
    long e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    return e;
  }
  mpz_class t = x;
  const mpz_class pz = from_u64(p);
  return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace padsol
