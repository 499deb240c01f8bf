#include "padsol/dsol.hpp"

#include <algorithm>

namespace padsol {

SolvePlan plan(int kappa, std::size_t n, std::uint64_t p) {
  if (kappa < 1) throw KappaTooSmall("kappa must be >= 1");
  if (p == 2 && kappa < 2) throw KappaTooSmall("kappa must be >= 2 when p = 2");
  const int loss = precision_loss(n, p);
  return SolvePlan{p, n, kappa, kappa + loss, kappa + mu(n, p)};
}

int precision_loss(std::size_t n, std::uint64_t p) { return n == 0 ? 0 : floor_log(n, p); }

int mu(std::size_t n, std::uint64_t p) {
  int total = 0;
  for (; n > 0; n = n / 2) total += floor_log(n, p);  // ceil((n-1)/2) == n/2
  return total;
}

std::vector<std::size_t> newton_schedule(std::size_t n) {
  std::vector<std::size_t> orders{n};
  while (orders.back() > 0) orders.push_back(orders.back() / 2);
  std::reverse(orders.begin(), orders.end());
  return orders;
}

TruncSeries newton_step(const TruncSeries& g, const RhsSpec& h, const TruncSeries& u, std::size_t target_order) {
  if (!(g.context() == u.context())) throw ContextMismatch();
  if (u.order() == 0 || u.rep(0) != 0) throw PreconditionViolation("newton_step needs u(0) = 0");
  if (target_order + 1 > 2 * u.order()) {
    throw PreconditionViolation("target order " + std::to_string(target_order) +
                                " exceeds twice the known order of u");
  }
  if (g.order() < target_order) throw PreconditionViolation("g is known to fewer terms than the step needs");

  const std::size_t out = target_order + 1;
  const TruncSeries un = u.extended(out);
  const TruncSeries hu = compose_h(h, un);
  // N_g(u) = u + h(u) * integral(g - u'/h(u)). Written with this sign so the
  // smallest representatives chosen by the integral are those of g's own terms.
  const TruncSeries e = g.truncated(out - 1) - mul(derivative(un), invert(hu.truncated(out - 1)));
  return un + mul(hu, antiderivative(e));
}

Solution dsol(const TruncSeries& g, const RhsSpec& h, std::size_t n) {
  const auto& ctx = g.context();
  if (g.order() < n) {
    throw PreconditionViolation("g must be known mod t^" + std::to_string(n) + ", got order " +
                                std::to_string(g.order()));
  }
  TruncSeries u = TruncSeries::zero(ctx, 1);
  for (std::size_t order : newton_schedule(n)) {
    if (order == 0) continue;
    u = newton_step(g, h, u, order);
  }
  int guaranteed = ctx.lambda() - precision_loss(n, ctx.p());
  if (guaranteed < (ctx.p() == 2 ? 2 : 1)) guaranteed = 0;
  return Solution{std::move(u), guaranteed};
}

Solution dsol(const SolvePlan& plan, const TruncSeries& g, const RhsSpec& h) {
  if (g.context().p() != plan.p) throw ContextMismatch();
  if (g.context().lambda() < plan.lambda) {
    throw PreconditionViolation("g is known mod p^" + std::to_string(g.context().lambda()) +
                                " but the plan needs p^" + std::to_string(plan.lambda));
  }
  return dsol(g.reduced_to(plan.context()), h, plan.n);
}

}  // namespace padsol
