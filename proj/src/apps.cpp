#include "padsol/apps.hpp"

#include <algorithm>

namespace padsol {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// x^d f(1/x) = 1 + c_(d-1) x + ... + c_0 x^d, as a series of the given order.
TruncSeries reversed(const MonicPoly& f, std::size_t order) {
  const std::size_t d = f.degree();
  std::vector<mpz_class> c(order);
  for (std::size_t k = 0; k <= d && k < order; ++k) c[k] = k == 0 ? mpz_class(1) : f.lower()[d - k];
  return TruncSeries(f.context(), std::move(c));
}

}  // namespace

MonicPoly::MonicPoly(PadicContext ctx, std::vector<mpz_class> lower) : ctx_(std::move(ctx)), lower_(std::move(lower)) {
  for (auto& c : lower_) detail::reduce(c, ctx_);
}

MonicPoly MonicPoly::from_coefficients(PadicContext ctx, std::vector<mpz_class> all) {
  if (all.empty()) throw InvalidInput("polynomial has no coefficients");
  mpz_class lead = all.back();
  detail::reduce(lead, ctx);
  if (lead != 1) throw InvalidInput("polynomial is not monic");
  all.pop_back();
  return MonicPoly(std::move(ctx), std::move(all));
}

std::vector<mpz_class> MonicPoly::coefficients() const {
  std::vector<mpz_class> all(lower_);
  all.emplace_back(1);
  return all;
}

MonicPoly MonicPoly::reduced_to(const PadicContext& ctx) const {
  if (ctx.p() != ctx_.p()) throw ContextMismatch();
  return MonicPoly(ctx, lower_);
}

NewtonSeries newton_series(const MonicPoly& f, std::size_t n) {
  const TruncSeries rev = reversed(f, n + 1);
  return NewtonSeries{-mul(derivative(rev), invert(rev.truncated(n))), f.degree()};
}

RecoveredPoly recover_from_newton_series(const NewtonSeries& h, std::size_t d) {
  if (h.series.order() < d) {
    throw PreconditionViolation("Newton series known to " + std::to_string(h.series.order()) +
                                " terms, need " + std::to_string(d));
  }
  const auto& ctx = h.series.context();
  const Solution z = dsol(-h.series.truncated(d), RhsSpec::polynomial(exact_poly({1, 1})), d);
  std::vector<mpz_class> lower(d);
  for (std::size_t i = 0; i < d; ++i) lower[i] = z.series.rep(d - i);
  return RecoveredPoly{MonicPoly(ctx, std::move(lower)), z.guaranteed_precision};
}

TruncSeries hadamard(const TruncSeries& a, const TruncSeries& b) {
  if (!(a.context() == b.context())) throw ContextMismatch();
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<mpz_class> c(n);
  for (std::size_t i = 0; i < n; ++i) detail::mul_mod(c[i], a.rep(i), b.rep(i), a.context());
  return TruncSeries(a.context(), std::move(c));
}

int composed_product_precision(std::uint64_t p, std::size_t de) {
  return (p == 2 ? 2 : 1) + precision_loss(de, p);
}

MonicPoly composed_product(const MonicPoly& f, const MonicPoly& g) {
  const auto& fp = f.context();
  if (fp.lambda() != 1 || !(g.context() == fp)) throw InvalidInput("composed_product works over a common F_p");
  if (f.degree() == 0 || g.degree() == 0) throw InvalidInput("composed_product needs positive degrees");
  if (f.lower()[0] == 0 || g.lower()[0] == 0) {
    throw InvalidInput("composed_product needs nonzero constant terms (factor out t^k first)");
  }
  const std::size_t de = f.degree() * g.degree();
  const PadicContext lifted(fp.p(), composed_product_precision(fp.p(), de), Primality::trusted);

  const TruncSeries h = hadamard(newton_series(f.reduced_to(lifted), de).series,
                                 newton_series(g.reduced_to(lifted), de).series);
  const RecoveredPoly r = recover_from_newton_series(NewtonSeries{h, de}, de);
  return r.poly.reduced_to(fp);
}

RhsSpec sqrt_rhs(const RhsSpec& h) {
  return std::visit(
      overloaded{
          [](const PolynomialRhs& r) { return RhsSpec::sqrt_rational(r.coeffs, exact_poly({1})); },
          [](const RationalRhs& r) {
            // Normalise P(0) = Q(0) = 1; both are equal and nonzero.
            ExactPoly num = r.num, den = r.den;
            const mpq_class c = den[0];
            for (auto& x : num) x /= c;
            for (auto& x : den) x /= c;
            return RhsSpec::sqrt_rational(std::move(num), std::move(den));
          },
          [&h](const auto&) {
            return RhsSpec::opaque("sqrt(" + h.describe() + ")",
                                   [h](const TruncSeries& f) { return sqrt_unit(compose_h(h, f)); });
          },
      },
      h.variant());
}

Solution solve_separated_square(const TruncSeries& g, const RhsSpec& h, std::size_t n) {
  const auto& ctx = g.context();
  if (ctx.p() == 2) throw EvenPrime();
  if (g.order() < n) throw PreconditionViolation("g must be known mod t^n");
  if (n > 0 && g.rep(0) != 1) throw BadConstantTerm("g(0) must equal 1");
  return dsol(sqrt_unit(g.truncated(n)), sqrt_rhs(h), n);
}

TruncSeries isogeny_g(const PadicContext& ctx, std::size_t order) {
  if (ctx.p() == 2) throw EvenPrime();
  const mpz_class quarter = ZpElt::from_rational(ctx, mpq_class(1, 4)).rep();
  return invert(TruncSeries::one(ctx, order) + TruncSeries::monomial(ctx, order, 2, quarter) +
                TruncSeries::monomial(ctx, order, 6));
}

RhsSpec isogeny_h(std::uint64_t m) {
  mpz_class mm = static_cast<unsigned long>(m);
  mpz_class m2 = mm * mm;
  mpz_class m6 = m2 * m2 * m2;
  mpq_class quarter_m2(m2, 4);
  quarter_m2.canonicalize();
  return RhsSpec::polynomial(ExactPoly{1, 0, quarter_m2, 0, 0, 0, mpq_class(m6)});
}

}  // namespace padsol
