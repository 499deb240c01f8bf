#include "padsol/pseries.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "padsol/config.hpp"
#include "padsol/instrument.hpp"

namespace padsol {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void require_same_context(const TruncSeries& a, const TruncSeries& b) {
  if (!(a.context() == b.context())) throw ContextMismatch();
}

void count_series_op() { ++op_counters().series_ops; }

u64 low_limb(const mpz_class& z) {
  return mpz_size(z.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(z.get_mpz_t(), 0);
}

// OR `value` into the limb buffer starting at bit `offset`. The target bits
// must be zero.
void deposit(std::vector<mp_limb_t>& buf, std::size_t offset, const mpz_class& value) {
  const std::size_t nlimbs = mpz_size(value.get_mpz_t());
  const mp_limb_t* src = mpz_limbs_read(value.get_mpz_t());
  const std::size_t q = offset / 64, r = offset % 64;
  for (std::size_t j = 0; j < nlimbs; ++j) {
    buf[q + j] |= src[j] << r;
    if (r != 0) buf[q + j + 1] |= src[j] >> (64 - r);
  }
}

// Extract `width` bits starting at `offset` from a limb array of length `n`.
void extract(const mp_limb_t* limbs, std::size_t n, std::size_t offset, std::size_t width,
             std::vector<mp_limb_t>& out) {
  const std::size_t out_limbs = (width + 63) / 64;
  out.assign(out_limbs, 0);
  const std::size_t q = offset / 64, r = offset % 64;
  for (std::size_t k = 0; k < out_limbs; ++k) {
    const std::size_t i = q + k;
    mp_limb_t lo = i < n ? limbs[i] : 0;
    mp_limb_t hi = (i + 1) < n ? limbs[i + 1] : 0;
    out[k] = r == 0 ? lo : (lo >> r) | (hi << (64 - r));
  }
  const std::size_t top = width % 64;
  if (top != 0) out.back() &= (mp_limb_t{1} << top) - 1;
}

mpz_class pack(const std::vector<mpz_class>& coeffs, std::size_t count, std::size_t slot_bits) {
  std::vector<mp_limb_t> buf((count * slot_bits + 63) / 64 + 2, 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (coeffs[i] != 0) deposit(buf, i * slot_bits, coeffs[i]);
  }
  mpz_class z;
  mpz_import(z.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
  return z;
}

}  // namespace

TruncSeries detail_series_from_canonical(PadicContext ctx, std::vector<mpz_class> coeffs) {
  return TruncSeries(std::move(ctx), std::move(coeffs), TruncSeries::Canonical{});
}

// ---------------------------------------------------------------------------
// TruncSeries

TruncSeries::TruncSeries(PadicContext ctx, std::size_t order) : ctx_(std::move(ctx)), coeffs_(order) {}

TruncSeries::TruncSeries(PadicContext ctx, std::vector<mpz_class> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) detail::reduce(c, ctx_);
}

TruncSeries::TruncSeries(PadicContext ctx, std::initializer_list<long> coeffs) : ctx_(std::move(ctx)) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) {
    coeffs_.emplace_back(c);
    detail::reduce(coeffs_.back(), ctx_);
  }
}

TruncSeries TruncSeries::one(PadicContext ctx, std::size_t order) {
  return monomial(std::move(ctx), order, 0);
}

TruncSeries TruncSeries::monomial(PadicContext ctx, std::size_t order, std::size_t k, const mpz_class& c) {
  TruncSeries s(std::move(ctx), order);
  if (k < order) {
    s.coeffs_[k] = c;
    detail::reduce(s.coeffs_[k], s.ctx_);
  }
  return s;
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

TruncSeries TruncSeries::truncated(std::size_t order) const {
  if (order > coeffs_.size()) {
    throw PreconditionViolation("cannot truncate a series of order " + std::to_string(coeffs_.size()) +
                                " to larger order " + std::to_string(order));
  }
  return TruncSeries(ctx_, std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + order), Canonical{});
}

TruncSeries TruncSeries::extended(std::size_t order) const {
  if (order < coeffs_.size()) return truncated(order);
  std::vector<mpz_class> c(coeffs_);
  c.resize(order);
  return TruncSeries(ctx_, std::move(c), Canonical{});
}

TruncSeries TruncSeries::reduced_to(const PadicContext& ctx) const {
  if (ctx.p() != ctx_.p()) throw ContextMismatch();
  if (ctx.lambda() >= ctx_.lambda()) return TruncSeries(ctx, coeffs_, Canonical{});
  return TruncSeries(ctx, coeffs_);
}

TruncSeries TruncSeries::operator-() const {
  std::vector<mpz_class> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) detail::neg_mod(c[i], coeffs_[i], ctx_);
  return TruncSeries(ctx_, std::move(c), Canonical{});
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  require_same_context(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<mpz_class> c(n);
  for (std::size_t i = 0; i < n; ++i) detail::add_mod(c[i], a.coeffs_[i], b.coeffs_[i], a.ctx_);
  return TruncSeries(a.ctx_, std::move(c), TruncSeries::Canonical{});
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  require_same_context(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<mpz_class> c(n);
  for (std::size_t i = 0; i < n; ++i) detail::sub_mod(c[i], a.coeffs_[i], b.coeffs_[i], a.ctx_);
  return TruncSeries(a.ctx_, std::move(c), TruncSeries::Canonical{});
}

TruncSeries TruncSeries::scaled(const mpz_class& c) const {
  mpz_class k = c;
  detail::reduce(k, ctx_);
  std::vector<mpz_class> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) detail::mul_mod(out[i], coeffs_[i], k, ctx_);
  return TruncSeries(ctx_, std::move(out), Canonical{});
}

bool congruent(const TruncSeries& a, const TruncSeries& b, int kappa, std::size_t order) {
  if (a.context().p() != b.context().p()) throw ContextMismatch();
  if (order > a.order() || order > b.order()) {
    throw PreconditionViolation("congruence checked beyond the known order");
  }
  if (kappa <= 0) return true;
  const mpz_class m = a.context().power(kappa);
  for (std::size_t i = 0; i < order; ++i) {
    if (mpz_congruent_p(a.rep(i).get_mpz_t(), b.rep(i).get_mpz_t(), m.get_mpz_t()) == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// multiplication

TruncSeries mul_schoolbook(const TruncSeries& f, const TruncSeries& g) {
  require_same_context(f, g);
  count_series_op();
  const auto& ctx = f.context();
  const std::size_t n = std::min(f.order(), g.order());
  const auto& a = f.reps();
  const auto& b = g.reps();
  std::vector<mpz_class> c(n);
  if (auto m = ctx.word_modulus()) {
    for (std::size_t k = 0; k < n; ++k) {
      u128 acc = 0;
      for (std::size_t i = 0; i <= k; ++i) {
        acc += static_cast<u128>(low_limb(a[i])) * low_limb(b[k - i]) % *m;
      }
      const u64 r = static_cast<u64>(acc % *m);
      mpz_import(c[k].get_mpz_t(), 1, -1, sizeof(r), 0, 0, &r);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i <= k; ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
      detail::reduce(acc, ctx);
      c[k] = std::move(acc);
    }
  }
  return detail_series_from_canonical(ctx, std::move(c));
}

TruncSeries mul_kronecker(const TruncSeries& f, const TruncSeries& g) {
  require_same_context(f, g);
  count_series_op();
  const auto& ctx = f.context();
  const std::size_t n = std::min(f.order(), g.order());
  if (n == 0) return TruncSeries(ctx, 0);

  // Each product slot holds a sum of at most n terms below M^2.
  const std::size_t mod_bits = mpz_sizeinbase(ctx.modulus().get_mpz_t(), 2);
  const std::size_t slot_bits = 2 * mod_bits + std::bit_width(n);

  const mpz_class pf = pack(f.reps(), n, slot_bits);
  mpz_class prod;
  if (&f == &g) {
    mpz_mul(prod.get_mpz_t(), pf.get_mpz_t(), pf.get_mpz_t());
  } else {
    const mpz_class pg = pack(g.reps(), n, slot_bits);
    mpz_mul(prod.get_mpz_t(), pf.get_mpz_t(), pg.get_mpz_t());
  }

  const mp_limb_t* limbs = mpz_limbs_read(prod.get_mpz_t());
  const std::size_t nlimbs = mpz_size(prod.get_mpz_t());
  std::vector<mpz_class> c(n);
  std::vector<mp_limb_t> slot;
  const auto word = ctx.word_modulus();
  for (std::size_t i = 0; i < n; ++i) {
    extract(limbs, nlimbs, i * slot_bits, slot_bits, slot);
    if (word && slot.size() <= 2) {
      u128 v = slot[0];
      if (slot.size() == 2) v |= static_cast<u128>(slot[1]) << 64;
      const u64 r = static_cast<u64>(v % *word);
      mpz_import(c[i].get_mpz_t(), 1, -1, sizeof(r), 0, 0, &r);
    } else {
      mpz_import(c[i].get_mpz_t(), slot.size(), -1, sizeof(mp_limb_t), 0, 0, slot.data());
      detail::reduce(c[i], ctx);
    }
  }
  return detail_series_from_canonical(ctx, std::move(c));
}

TruncSeries mul(const TruncSeries& f, const TruncSeries& g) {
  if (std::min(f.order(), g.order()) < kKroneckerThreshold) return mul_schoolbook(f, g);
  return mul_kronecker(f, g);
}

// ---------------------------------------------------------------------------
// calculus

TruncSeries derivative(const TruncSeries& f) {
  if (f.order() == 0) throw PreconditionViolation("derivative of a series of order 0");
  count_series_op();
  const auto& ctx = f.context();
  std::vector<mpz_class> c(f.order() - 1);
  for (std::size_t i = 1; i < f.order(); ++i) {
    mpz_class k = static_cast<unsigned long>(i);
    detail::reduce(k, ctx);
    detail::mul_mod(c[i - 1], f.rep(i), k, ctx);
  }
  return detail_series_from_canonical(ctx, std::move(c));
}

TruncSeries antiderivative(const TruncSeries& f) {
  count_series_op();
  const auto& ctx = f.context();
  std::vector<mpz_class> c(f.order() + 1);
  for (std::size_t i = 1; i <= f.order(); ++i) {
    try {
      detail::fixed_div_by_integer(c[i], f.rep(i - 1), i, ctx);
    } catch (const NonIntegralQuotient&) {
      throw NonIntegralCoefficient(i);
    }
  }
  return detail_series_from_canonical(ctx, std::move(c));
}

// ---------------------------------------------------------------------------
// Newton iterations

TruncSeries invert(const TruncSeries& f) {
  const auto& ctx = f.context();
  const std::size_t n = f.order();
  if (n == 0) return TruncSeries(ctx, 0);
  if (mpz_divisible_p(f.rep(0).get_mpz_t(), ctx.prime().get_mpz_t()) != 0) throw NonUnitConstantTerm();
  count_series_op();

  std::vector<mpz_class> c0(1);
  detail::fixed_div_rep(c0[0], mpz_class(1), f.rep(0), ctx);
  TruncSeries g = detail_series_from_canonical(ctx, std::move(c0));
  // g <- g + g(1 - f g), doubling the correct order each round.
  for (std::size_t k = 1; k < n;) {
    const std::size_t k2 = std::min(2 * k, n);
    const TruncSeries gk = g.extended(k2);
    const TruncSeries residual = TruncSeries::one(ctx, k2) - mul(f.truncated(k2), gk);
    g = gk + mul(gk, residual);
    k = k2;
  }
  return g;
}

TruncSeries sqrt_unit(const TruncSeries& f) {
  const auto& ctx = f.context();
  if (ctx.p() == 2) throw EvenPrime();
  const std::size_t n = f.order();
  if (n == 0) return TruncSeries(ctx, 0);
  if (f.rep(0) != 1) throw BadConstantTerm();
  count_series_op();

  mpz_class half = ctx.modulus() + 1;
  mpz_divexact_ui(half.get_mpz_t(), half.get_mpz_t(), 2);  // modulus is odd
  TruncSeries s = TruncSeries::one(ctx, 1);
  // s <- (s + f/s) / 2; 2 is a unit so no precision is lost.
  for (std::size_t k = 1; k < n;) {
    const std::size_t k2 = std::min(2 * k, n);
    const TruncSeries sk = s.extended(k2);
    s = (sk + mul(f.truncated(k2), invert(sk))).scaled(half);
    k = k2;
  }
  return s;
}

}  // namespace padsol
