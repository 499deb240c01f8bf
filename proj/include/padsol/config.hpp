#pragma once

#include <cstddef>

namespace padsol {

// Series order at which mul() switches from schoolbook to Kronecker
// substitution. Timed on p = 5 with random operands: Kronecker wins from
// n = 16 for lambda <= 9 and from n = 12 for lambda = 30; at lambda = 72
// schoolbook stays ahead until about n = 48, by at most 25% below that.
inline constexpr std::size_t kKroneckerThreshold = 16;

}  // namespace padsol
