#include "sival/rounding.hpp"

#include <cmath>
#include <limits>

namespace sival::rounding {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this magnitude an FMA residual may itself be rounded.
constexpr double kResidualFloor = 0x1p-900;

// Result of a round-to-nearest operation together with where the exact
// value lies relative to it.
struct Nearest {
    enum class Side { exact, above, below, unknown };
    double value;
    Side side;
};

int sign_of(double x)
{
    return (x > 0) - (x < 0);
}

Nearest::Side side_from_sign(int s)
{
    if (s > 0) {
        return Nearest::Side::above;
    }
    if (s < 0) {
        return Nearest::Side::below;
    }
    return Nearest::Side::exact;
}

// A finite computation that produced an infinity: the exact value lies just
// inside it.
Nearest overflowed(double v)
{
    return {v, v > 0 ? Nearest::Side::below : Nearest::Side::above};
}

double lower(const Nearest& n)
{
    if (n.side == Nearest::Side::below || n.side == Nearest::Side::unknown) {
        return next_down(n.value);
    }
    return n.value;
}

double upper(const Nearest& n)
{
    if (n.side == Nearest::Side::above || n.side == Nearest::Side::unknown) {
        return next_up(n.value);
    }
    return n.value;
}

Nearest add_nearest(double a, double b)
{
    const double s = a + b;
    if (std::isinf(s)) {
        return overflowed(s);
    }
    // TwoSum (Knuth): s + err == a + b exactly.
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, side_from_sign(sign_of(err))};
}

Nearest mul_nearest(double a, double b)
{
    if (a == 0 || b == 0) {
        return {0.0, Nearest::Side::exact};
    }
    const double p = a * b;
    if (std::isinf(p)) {
        return overflowed(p);
    }
    if (p == 0) {
        return {0.0, side_from_sign(sign_of(a) * sign_of(b))};
    }
    if (std::fabs(p) < kResidualFloor) {
        return {p, Nearest::Side::unknown};
    }
    return {p, side_from_sign(sign_of(std::fma(a, b, -p)))};
}

Nearest div_nearest(double a, double b)
{
    if (a == 0) {
        return {0.0, Nearest::Side::exact};
    }
    const double q = a / b;
    if (std::isinf(q)) {
        return overflowed(q);
    }
    if (q == 0) {
        return {0.0, side_from_sign(sign_of(a) * sign_of(b))};
    }
    if (std::fabs(q) < kResidualFloor || std::fabs(a) < kResidualFloor) {
        return {q, Nearest::Side::unknown};
    }
    // a == q*b + r exactly, so a/b - q has the sign of r/b.
    const double r = std::fma(-q, b, a);
    return {q, side_from_sign(sign_of(r) * sign_of(b))};
}

Nearest sqrt_nearest(double a)
{
    if (a == 0 || std::isinf(a)) {
        return {std::sqrt(a), Nearest::Side::exact};
    }
    const double s = std::sqrt(a);
    if (a < kResidualFloor) {
        return {s, Nearest::Side::unknown};
    }
    return {s, side_from_sign(sign_of(std::fma(-s, s, a)))};
}

} // namespace

double next_up(double x)
{
    return std::nextafter(x, kInf);
}

double next_down(double x)
{
    return std::nextafter(x, -kInf);
}

double add_down(double a, double b) { return lower(add_nearest(a, b)); }
double add_up(double a, double b) { return upper(add_nearest(a, b)); }
double sub_down(double a, double b) { return lower(add_nearest(a, -b)); }
double sub_up(double a, double b) { return upper(add_nearest(a, -b)); }
double mul_down(double a, double b) { return lower(mul_nearest(a, b)); }
double mul_up(double a, double b) { return upper(mul_nearest(a, b)); }
double div_down(double a, double b) { return lower(div_nearest(a, b)); }
double div_up(double a, double b) { return upper(div_nearest(a, b)); }

double sqrt_down(double a)
{
    const double d = lower(sqrt_nearest(a));
    return d < 0 ? 0.0 : d;
}

double sqrt_up(double a) { return upper(sqrt_nearest(a)); }

} // namespace sival::rounding
