#pragma once

#include <cstdint>

namespace padsol {

// Per-thread operation counters. Cheap enough to stay on in release builds;
// tests use them to check which arithmetic a code path performed.
struct OpCounters {
  std::uint64_t series_ops = 0;         // mul/invert/sqrt/compose/antiderivative calls
  std::uint64_t unit_divisions = 0;     // fixed_div case (i)
  std::uint64_t nonunit_divisions = 0;  // fixed_div case (ii)
  long max_divisor_valuation = 0;       // largest v_p(b) seen in case (ii)
};

OpCounters& op_counters() noexcept;
void reset_op_counters() noexcept;

}  // namespace padsol
