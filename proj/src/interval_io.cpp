#include "sival/interval_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sival {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Interval parse_interval(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s == "empty") {
        return Interval::empty();
    }
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        throw std::invalid_argument("expected '[lo,hi]' or 'empty', got '" + std::string(text) + "'");
    }
    const std::string_view body = s.substr(1, s.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
        throw std::invalid_argument("expected exactly one ',' in '" + std::string(text) + "'");
    }
    const ExactReal lo = ExactReal::parse_decimal(trim(body.substr(0, comma)));
    const ExactReal hi = ExactReal::parse_decimal(trim(body.substr(comma + 1)));
    if (hi < lo) {
        throw std::invalid_argument("lower bound exceeds upper bound in '" + std::string(text) + "'");
    }
    return hull_bounds(lo, hi);
}

std::string format_double(double v)
{
    if (std::isinf(v)) {
        return v < 0 ? "-inf" : "inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_interval(const Interval& x)
{
    if (x.is_empty()) {
        return "empty";
    }
    return "[" + format_double(x.lo()) + "," + format_double(x.hi()) + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    return os << format_interval(x);
}

} // namespace sival
