#include "padsol/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "padsol/apps.hpp"
#include "padsol/bench.hpp"
#include "padsol/dsol.hpp"
#include "padsol/selftest.hpp"
#include "padsol/series_io.hpp"

namespace padsol::cli {

namespace {

struct SolveArgs {
  std::uint64_t p = 0;
  int kappa = 0;
  std::size_t n = 0;
  std::string g;
  std::string h;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "inline:<expr>" or "inline:c0,c1,..." is evaluated at ctx; anything else
// ("file:<path>" or a bare path) is read in the series text format and must
// carry at least ctx's precision.
TruncSeries load_series(const std::string& spec, const PadicContext& ctx, std::size_t order) {
  if (spec.rfind("inline:", 0) == 0) {
    const std::string body = spec.substr(7);
    if (body.find(',') != std::string::npos) {
      auto c = parse_integer_list(body);
      if (c.size() < order) throw PreconditionViolation("inline series has fewer than " + std::to_string(order) + " terms");
      return TruncSeries(ctx, std::move(c));
    }
    return parse_series_expression(body, ctx, order);
  }
  const std::string path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
  TruncSeries s = parse_series(slurp(path));
  if (s.context().p() != ctx.p()) throw PreconditionViolation("series file is over a different prime");
  if (s.context().lambda() < ctx.lambda()) {
    throw PreconditionViolation("series file is known mod p^" + std::to_string(s.context().lambda()) +
                                ", need p^" + std::to_string(ctx.lambda()));
  }
  if (s.order() < order) throw PreconditionViolation("series file has fewer than " + std::to_string(order) + " terms");
  return s.reduced_to(ctx);
}

ExactPoly to_exact(const std::vector<mpz_class>& ints) {
  ExactPoly p;
  for (const auto& c : ints) p.emplace_back(c);
  return p;
}

RhsSpec parse_rhs(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("h spec must look like poly:..., rat:P/Q or sqrtrat:P/Q");
  const std::string kind = spec.substr(0, colon), body = spec.substr(colon + 1);
  if (kind == "poly") return RhsSpec::polynomial(to_exact(parse_integer_list(body)));
  if (kind == "rat" || kind == "sqrtrat") {
    const auto slash = body.find('/');
    if (slash == std::string::npos) throw ParseError("rational h spec needs P/Q");
    ExactPoly num = to_exact(parse_integer_list(body.substr(0, slash)));
    ExactPoly den = to_exact(parse_integer_list(body.substr(slash + 1)));
    return kind == "rat" ? RhsSpec::rational(std::move(num), std::move(den))
                         : RhsSpec::sqrt_rational(std::move(num), std::move(den));
  }
  throw ParseError("unknown h kind '" + kind + "'");
}

TruncSeries reduce_output(const TruncSeries& y, int kappa) {
  return y.reduced_to(y.context().with_lambda(kappa));
}

void emit_series(const TruncSeries& s, const std::string& out_path, std::ostream& out) {
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + out_path + "'");
    write_series(f, s);
  }
  write_series(out, s);
}

void emit_guarantee(std::ostream& out, std::uint64_t p, int kappa) {
  out << "guaranteed_precision: " << p << '^' << kappa << '\n';
}

int do_solve(const SolveArgs& a, bool square, std::ostream& out) {
  const SolvePlan pl = plan(a.kappa, a.n, a.p);
  if (square && a.p == 2) throw EvenPrime();
  const PadicContext ctx = pl.context();
  const RhsSpec h = parse_rhs(a.h);
  const TruncSeries g = load_series(a.g, ctx, a.n);
  const Solution sol = square ? solve_separated_square(g, h, a.n) : dsol(pl, g, h);
  // The plan guarantees kappa; the solver may report more when g carried extra digits.
  emit_series(reduce_output(sol.series, pl.kappa), a.out, out);
  emit_guarantee(out, a.p, pl.kappa);
  return kOk;
}

MonicPoly parse_monic(const std::string& list, const PadicContext& ctx) {
  return MonicPoly::from_coefficients(ctx, parse_integer_list(list));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power-series solutions of p-adic ODEs y' = g h(y) at optimal precision", "padsol"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto add_solve_flags = [&](CLI::App* sub) {
    sub->add_option("--p", solve_args.p, "prime")->required();
    sub->add_option("--kappa", solve_args.kappa, "requested output precision exponent")->required();
    sub->add_option("--n", solve_args.n, "solve up to t^n")->required();
    sub->add_option("--g", solve_args.g, "g as inline:<expr>, inline:c0,c1,..., or a series file")->required();
    sub->add_option("--h", solve_args.h, "h as poly:c0,c1,... | rat:P/Q | sqrtrat:P/Q")->required();
    sub->add_option("--out", solve_args.out, "also write the series here");
  };
  auto* solve = app.add_subcommand("solve", "solve y' = g h(y), y(0) = 0");
  add_solve_flags(solve);
  auto* sqrt_solve = app.add_subcommand("sqrt-solve", "solve y'^2 = g h(y), y(0) = 0 (p != 2)");
  add_solve_flags(sqrt_solve);

  std::uint64_t p = 0;
  int kappa = 0;
  std::size_t count = 0;
  std::string f_list, g_list, series_spec, out_path;

  auto* sums = app.add_subcommand("newton-sums", "print H_f = sum nu_(k+1) t^k");
  sums->add_option("--p", p, "prime")->required();
  sums->add_option("--kappa", kappa, "precision exponent of the output")->required();
  sums->add_option("--n", count, "number of terms")->required();
  sums->add_option("--f", f_list, "monic f, little-endian c0,...,1")->required();
  sums->add_option("--out", out_path, "also write the series here");

  auto* recover = app.add_subcommand("recover", "recover a monic polynomial from its Newton series");
  recover->add_option("--p", p, "prime")->required();
  recover->add_option("--kappa", kappa, "requested coefficient precision")->required();
  recover->add_option("--d", count, "degree")->required();
  recover->add_option("--H", series_spec, "Newton series (inline or file)")->required();

  auto* composed = app.add_subcommand("composed-product", "f (x) g over F_p");
  composed->add_option("--p", p, "prime")->required();
  composed->add_option("--f", f_list, "monic f over F_p, little-endian, f(0) != 0")->required();
  composed->add_option("--g", g_list, "monic g over F_p, little-endian, g(0) != 0")->required();

  std::vector<std::uint64_t> ms;
  bool dry_run = false, parallel = false;
  std::uint64_t bench_p = 5;
  auto* bench = app.add_subcommand("bench", "time the solver at lambda_old vs lambda_new");
  bench->add_option("--p", bench_p, "prime (odd)")->capture_default_str();
  bench->add_option("--m", ms, "instance sizes")->required()->delimiter(',');
  bench->add_flag("--dry-run", dry_run, "print the two precisions only");
  bench->add_flag("--parallel", parallel, "run instances concurrently");
  bench->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "run the built-in worked examples");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*solve) return do_solve(solve_args, false, out);
    if (*sqrt_solve) return do_solve(solve_args, true, out);

    if (*sums) {
      if (kappa < 1) throw KappaTooSmall("kappa must be >= 1");
      const PadicContext ctx(p, kappa);
      const NewtonSeries h = newton_series(parse_monic(f_list, ctx), count);
      emit_series(h.series, out_path, out);
      emit_guarantee(out, p, kappa);
      return kOk;
    }

    if (*recover) {
      const SolvePlan pl = plan(kappa, count, p);
      const TruncSeries h = load_series(series_spec, pl.context(), count);
      const RecoveredPoly r = recover_from_newton_series(NewtonSeries{h, count}, count);
      out << format_integer_list(r.poly.reduced_to(pl.context().with_lambda(kappa)).coefficients()) << '\n';
      emit_guarantee(out, p, kappa);
      return kOk;
    }

    if (*composed) {
      const PadicContext fp(p, 1);
      const MonicPoly r = composed_product(parse_monic(f_list, fp), parse_monic(g_list, fp));
      out << format_integer_list(r.coefficients()) << '\n';
      return kOk;
    }

    if (*bench) {
      if (dry_run) {
        for (auto m : ms) {
          const SolvePlan pl = isogeny_plan(m, bench_p);
          out << "m=" << m << " lambda_old=" << pl.mu_lambda << " lambda_new=" << pl.lambda << '\n';
        }
        return kOk;
      }
      const auto rows = bench_isogeny(ms, BenchOptions{bench_p, parallel});
      if (out_path.empty()) {
        write_bench_csv(out, rows);
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ParseError("cannot write '" + out_path + "'");
        write_bench_csv(f, rows);
      }
      return kOk;
    }

    if (*selftest) return run_selftest(out) ? kOk : kSelftestFailed;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const NonIntegralCoefficient& e) {
    err << "error: solution is not p-integral at degree " << e.index() << '\n';
    return kNonIntegral;
  } catch (const Error& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kParseError;
}

}  // namespace padsol::cli
