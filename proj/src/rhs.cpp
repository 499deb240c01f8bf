#include <sstream>

#include "padsol/instrument.hpp"
#include "padsol/pseries.hpp"

namespace padsol {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void append_poly(std::ostringstream& os, const ExactPoly& p) {
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
}

bool constant_is(const ExactPoly& p, long v) { return !p.empty() && p[0] == v; }

}  // namespace

ExactPoly exact_poly(std::initializer_list<long> coeffs) {
  ExactPoly p;
  p.reserve(coeffs.size());
  for (long c : coeffs) p.emplace_back(c);
  return p;
}

RhsSpec RhsSpec::polynomial(ExactPoly coeffs) {
  if (!constant_is(coeffs, 1)) throw BadConstantTerm("h(0) must equal 1");
  return RhsSpec(PolynomialRhs{std::move(coeffs)});
}

RhsSpec RhsSpec::rational(ExactPoly num, ExactPoly den) {
  if (den.empty() || den[0] == 0) throw NonUnitConstantTerm();
  if (num.empty() || num[0] != den[0]) throw BadConstantTerm("h(0) = P(0)/Q(0) must equal 1");
  return RhsSpec(RationalRhs{std::move(num), std::move(den)});
}

RhsSpec RhsSpec::sqrt_rational(ExactPoly num, ExactPoly den) {
  if (!constant_is(num, 1) || !constant_is(den, 1)) throw BadConstantTerm("sqrt(P/Q) needs P(0) = Q(0) = 1");
  return RhsSpec(SqrtRationalRhs{std::move(num), std::move(den)});
}

RhsSpec RhsSpec::opaque(std::string name, Composer compose) {
  if (!compose) throw InvalidInput("opaque composer is empty");
  return RhsSpec(OpaqueRhs{std::move(name), std::move(compose)});
}

std::string RhsSpec::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const PolynomialRhs& r) { os << "poly:"; append_poly(os, r.coeffs); },
                 [&](const RationalRhs& r) {
                   os << "rat:";
                   append_poly(os, r.num);
                   os << "/";
                   append_poly(os, r.den);
                 },
                 [&](const SqrtRationalRhs& r) {
                   os << "sqrtrat:";
                   append_poly(os, r.num);
                   os << "/";
                   append_poly(os, r.den);
                 },
                 [&](const OpaqueRhs& r) { os << "opaque:" << r.name; },
             },
             v_);
  return os.str();
}

TruncSeries eval_poly(const ExactPoly& poly, const TruncSeries& f) {
  const auto& ctx = f.context();
  const std::size_t n = f.order();
  if (poly.empty()) return TruncSeries(ctx, n);
  TruncSeries r = TruncSeries::monomial(ctx, n, 0, ZpElt::from_rational(ctx, poly.back()).rep());
  for (std::size_t i = poly.size() - 1; i-- > 0;) {
    r = mul(r, f) + TruncSeries::monomial(ctx, n, 0, ZpElt::from_rational(ctx, poly[i]).rep());
  }
  return r;
}

TruncSeries compose_naive(const TruncSeries& h, const TruncSeries& f) {
  const auto& ctx = f.context();
  const std::size_t n = f.order();
  if (n == 0) return TruncSeries(ctx, 0);
  if (h.order() < n) throw PreconditionViolation("h is known to fewer terms than the composition needs");
  if (f.rep(0) != 0) throw PreconditionViolation("composition needs f(0) = 0");
  TruncSeries r = TruncSeries::monomial(ctx, n, 0, h.rep(n - 1));
  for (std::size_t i = n - 1; i-- > 0;) r = mul(r, f) + TruncSeries::monomial(ctx, n, 0, h.rep(i));
  return r;
}

TruncSeries compose_h(const RhsSpec& h, const TruncSeries& f) {
  const auto& ctx = f.context();
  if (f.order() > 0 && f.rep(0) != 0) throw PreconditionViolation("compose_h needs f(0) = 0");
  ++op_counters().series_ops;
  return std::visit(
      overloaded{
          [&](const PolynomialRhs& r) { return eval_poly(r.coeffs, f); },
          [&](const RationalRhs& r) { return mul(eval_poly(r.num, f), invert(eval_poly(r.den, f))); },
          [&](const SqrtRationalRhs& r) {
            if (ctx.p() == 2) throw EvenPrime();
            return sqrt_unit(mul(eval_poly(r.num, f), invert(eval_poly(r.den, f))));
          },
          [&](const OpaqueRhs& r) {
            TruncSeries out = r.compose(f);
            if (!(out.context() == ctx) || out.order() != f.order()) {
              throw PreconditionViolation("opaque composer '" + r.name + "' broke its contract");
            }
            if (out.order() > 0 && out.rep(0) != 1) throw BadConstantTerm("opaque h has h(0) != 1");
            return out;
          },
      },
      h.variant());
}

}  // namespace padsol
