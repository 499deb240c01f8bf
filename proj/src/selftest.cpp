#include "padsol/selftest.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "padsol/apps.hpp"
#include "padsol/bench.hpp"
#include "padsol/harness.hpp"

namespace padsol {

namespace {

using Check = std::pair<std::string, std::function<bool()>>;

mpz_class brute_force_div(long a, long b, long modulus) {
  for (long c = 0; c < modulus; ++c) {
    if ((b * c - a) % modulus == 0) return c;
  }
  return -1;
}

std::vector<Check> checks() {
  return {
      {"fixed_div 5/10 mod 5^3 is the smallest admissible c",
       [] {
         const PadicContext ctx(5, 3);
         return fixed_div(ZpElt(ctx, 5L), ZpElt(ctx, 10L)).rep() == brute_force_div(5, 10, 125);
       }},
      {"schoolbook and Kronecker products agree with hand expansion",
       [] {
         const PadicContext ctx(7, 1);
         const TruncSeries f(ctx, {1, 2, 3}), g(ctx, {4, 5, 0});
         const TruncSeries want(ctx, {4, 13, 22});
         return mul_schoolbook(f, g) == want && mul_kronecker(f, g) == want;
       }},
      {"1/(1+2t) mod (7, t^3) matches (-2)^k",
       [] {
         const PadicContext ctx(7, 1);
         return invert(TruncSeries(ctx, {1, 2, 0})) == TruncSeries(ctx, {1, -2, 4});
       }},
      {"sqrt(1+t) mod (25, t^3) squares back to 1+t",
       [] {
         const PadicContext ctx(5, 2);
         const TruncSeries f(ctx, {1, 1, 0});
         const TruncSeries s = sqrt_unit(f);
         return mul(s, s) == f && s == TruncSeries(ctx, {1, 13, 3});
       }},
      {"1/(1-u) at t+t^2 matches naive composition",
       [] {
         const PadicContext ctx(7, 1);
         const TruncSeries f(ctx, {0, 1, 1, 0});
         const TruncSeries geometric(ctx, {1, 1, 1, 1});
         const RhsSpec h = RhsSpec::rational(exact_poly({1}), exact_poly({1, -1}));
         return compose_h(h, f) == compose_naive(geometric, f);
       }},
      {"y' = (1+y)^2 solved to t^7 satisfies the equation",
       [] {
         const PadicContext ctx(5, 3);
         const RhsSpec h = RhsSpec::polynomial(exact_poly({1, 2, 1}));
         const TruncSeries y = dsol(TruncSeries::one(ctx, 7), h, 7).series;
         return (derivative(y) - compose_h(h, y).truncated(7)).is_zero();
       }},
      {"precision plan for n = 417124, p = 5",
       [] {
         const SolvePlan pl = plan(1, 417124, 5);
         return pl.lambda == 9 && pl.mu_lambda == 72;
       }},
      {"Newton sums of (t-1)(t-2) are 1 + 2^k",
       [] {
         const PadicContext ctx(7, 2);
         const NewtonSeries h = newton_series(MonicPoly(ctx, {2, -3}), 6);
         for (std::size_t k = 0; k < 6; ++k) {
           if (h.series.rep(k) != (1 + (mpz_class(1) << (k + 1))) % 49) return false;
         }
         return true;
       }},
      {"(t^2+4) (x) (t+3) over F_5 from enumerated roots",
       [] {
         const PadicContext fp(5, 1);
         // roots of t^2+4 are {1, 4}; root of t+3 is 2; products {2, 3}.
         std::vector<long> roots_f, roots_g;
         for (long x = 0; x < 5; ++x) {
           if ((x * x + 4) % 5 == 0) roots_f.push_back(x);
           if ((x + 3) % 5 == 0) roots_g.push_back(x);
         }
         std::vector<long> prod{1};  // little-endian coefficients
         for (long a : roots_f) {
           for (long b : roots_g) {
             std::vector<long> next(prod.size() + 1, 0);
             for (std::size_t i = 0; i < prod.size(); ++i) {
               next[i + 1] += prod[i];
               next[i] -= a * b * prod[i];
             }
             prod = next;
           }
         }
         std::vector<mpz_class> want(prod.begin(), prod.end());
         return composed_product(MonicPoly(fp, {4, 0}), MonicPoly(fp, {3})) == MonicPoly::from_coefficients(fp, want);
       }},
      {"y' = 5 t^4 loses exactly one digit at lambda = 3", [] { return check_sharpness(5, 1, 3).sharp(); }},
      {"isogeny equation with m = 1 gives y = t",
       [] {
         const PadicContext ctx(5, 2);
         return solve_separated_square(isogeny_g(ctx, 4), isogeny_h(1), 4).series ==
                TruncSeries::monomial(ctx, 5, 1);
       }},
  };
}

}  // namespace

bool run_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& [name, check] : checks()) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      out << "  exception: " << e.what() << '\n';
    }
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    all = all && ok;
  }
  out << (all ? "selftest passed" : "selftest FAILED") << '\n';
  return all;
}

}  // namespace padsol
