#include "padsol/bench.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <locale>
#include <sstream>
#include <stdexcept>

#include "padsol/apps.hpp"

namespace padsol {

namespace {

struct TimedRun {
  TruncSeries y;
  double ms;
};

TimedRun timed_solve(const PadicContext& ctx, std::uint64_t m, std::size_t n) {
  const TruncSeries g = isogeny_g(ctx, n);
  const RhsSpec h = isogeny_h(m);
  const auto start = std::chrono::steady_clock::now();
  TruncSeries y = solve_separated_square(g, h, n).series;
  const auto stop = std::chrono::steady_clock::now();
  return {std::move(y), std::chrono::duration<double, std::milli>(stop - start).count()};
}

BenchRow run_one(std::uint64_t m, std::uint64_t p) {
  const SolvePlan pl = isogeny_plan(m, p);
  const TimedRun old_run = timed_solve(pl.legacy_context(), m, pl.n);
  const TimedRun new_run = timed_solve(pl.context(), m, pl.n);
  if (!congruent(old_run.y, new_run.y, pl.kappa, pl.n + 1)) {
    throw std::runtime_error("m=" + std::to_string(m) + ": outputs at lambda_old and lambda_new disagree mod p");
  }
  return BenchRow{m, pl.mu_lambda, pl.lambda, old_run.ms, new_run.ms,
                  new_run.ms > 0 ? old_run.ms / new_run.ms : 0.0};
}

}  // namespace

SolvePlan isogeny_plan(std::uint64_t m, std::uint64_t p) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  if (p == 2) throw EvenPrime();
  return plan(1, 4 * m, p);
}

std::vector<BenchRow> bench_isogeny(const std::vector<std::uint64_t>& ms, const BenchOptions& opts) {
  std::vector<BenchRow> rows;
  rows.reserve(ms.size());
  if (!opts.parallel) {
    for (auto m : ms) rows.push_back(run_one(m, opts.p));
    return rows;
  }
  std::vector<std::future<BenchRow>> jobs;
  for (auto m : ms) jobs.push_back(std::async(std::launch::async, run_one, m, opts.p));
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf << kBenchCsvHeader << '\n' << std::fixed;
  for (const auto& r : rows) {
    buf << r.m << ',' << r.lambda_old << ',' << r.lambda_new << ',' << std::setprecision(3) << r.t_old_ms << ','
        << r.t_new_ms << ',' << r.speedup << '\n';
  }
  os << buf.str();
}

}  // namespace padsol
