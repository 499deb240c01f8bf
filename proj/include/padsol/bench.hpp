#pragma once

// Timing comparison of the solver at the legacy precision kappa + mu(n)
// against the optimal kappa + floor(log_p n) on the isogeny-style equation.

#include <cstdint>
#include <ostream>
#include <vector>

#include "padsol/dsol.hpp"

namespace padsol {

struct BenchRow {
  std::uint64_t m;
  int lambda_old;
  int lambda_new;
  double t_old_ms;
  double t_new_ms;
  double speedup;  // t_old / t_new
};

struct BenchOptions {
  std::uint64_t p = 5;
  bool parallel = false;  // run different m concurrently (timings get noisier)
};

/// Plan for y mod (p, t^(4m+1)).
SolvePlan isogeny_plan(std::uint64_t m, std::uint64_t p);

/// Solves the equation for each m at both precisions and checks that the two
/// outputs agree mod (p, t^(4m+1)); throws std::runtime_error otherwise.
std::vector<BenchRow> bench_isogeny(const std::vector<std::uint64_t>& ms, const BenchOptions& opts = {});

inline constexpr const char* kBenchCsvHeader = "m,lambda_old,lambda_new,t_old_ms,t_new_ms,speedup";

/// Header plus one row per entry, locale-independent.
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace padsol
