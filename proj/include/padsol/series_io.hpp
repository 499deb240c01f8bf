#pragma once

// Text formats shared by the library and the command-line tool.
//
// Series file format (bit-exact round trip):
//   line 1: "p lambda n"
//   line 2: n space-separated canonical representatives, lowest degree first
//
// Inline expressions: rational expressions in t with integer constants,
// e.g. "1/(1+t)", "1 + t^2 - 3*t^5", "(1+t)^2". Division requires a unit
// constant term in the divisor.

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "padsol/pseries.hpp"

namespace padsol {

std::string format_series(const TruncSeries& s);
TruncSeries parse_series(std::string_view text);

void write_series(std::ostream& os, const TruncSeries& s);
TruncSeries read_series(std::istream& is);

/// Evaluates an inline expression as a series mod (p^lambda, t^order).
TruncSeries parse_series_expression(std::string_view expr, const PadicContext& ctx, std::size_t order);

/// Comma-separated signed integers, e.g. "4,0,-1".
std::vector<mpz_class> parse_integer_list(std::string_view text);

std::string format_integer_list(const std::vector<mpz_class>& values);

}  // namespace padsol
