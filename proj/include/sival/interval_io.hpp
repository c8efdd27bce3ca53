#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "sival/interval.hpp"

namespace sival {

/// Parses `[lo,hi]` (decimal literals, `-inf`, `inf`) or `empty`.
/// Bounds are rounded outward: lo down, hi up. Whitespace around tokens is
/// allowed. Throws std::invalid_argument on malformed text or lo > hi.
[[nodiscard]] Interval parse_interval(std::string_view text);

/// `[lo,hi]` with 17 significant digits per finite bound, or `empty`.
[[nodiscard]] std::string format_interval(const Interval& x);

/// 17 significant digits, `inf` / `-inf` for infinities.
[[nodiscard]] std::string format_double(double v);

std::ostream& operator<<(std::ostream& os, const Interval& x);

} // namespace sival
