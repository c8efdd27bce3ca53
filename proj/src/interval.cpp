#include "sival/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sival/rounding.hpp"

namespace sival {

namespace r = rounding;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clean_zero(double v)
{
    return v == 0.0 ? 0.0 : v;
}

bool contains_zero(const Interval& x)
{
    return !x.is_empty() && x.lo() <= 0 && 0 <= x.hi();
}

bool is_zero(const Interval& x)
{
    return x.is_singleton() && x.lo() == 0;
}

// Products of bounds. A zero bound is an attained member, and zero times any
// real is zero, so 0 paired with an absent (infinite) bound contributes 0.
double mul_bound_down(double a, double b)
{
    if (a == 0 || b == 0) {
        return 0.0;
    }
    if (std::isinf(a) || std::isinf(b)) {
        return (a > 0) == (b > 0) ? kInf : -kInf;
    }
    return r::mul_down(a, b);
}

double mul_bound_up(double a, double b)
{
    if (a == 0 || b == 0) {
        return 0.0;
    }
    if (std::isinf(a) || std::isinf(b)) {
        return (a > 0) == (b > 0) ? kInf : -kInf;
    }
    return r::mul_up(a, b);
}

// Quotients of bounds, b != 0. The case tables below never pair two
// infinite bounds. A finite numerator over an absent denominator bound is
// the limit 0, which the closed hull includes.
double div_bound_down(double a, double b)
{
    if (std::isinf(b)) {
        return 0.0;
    }
    if (std::isinf(a)) {
        return (a > 0) == (b > 0) ? kInf : -kInf;
    }
    return r::div_down(a, b);
}

double div_bound_up(double a, double b)
{
    if (std::isinf(b)) {
        return 0.0;
    }
    if (std::isinf(a)) {
        return (a > 0) == (b > 0) ? kInf : -kInf;
    }
    return r::div_up(a, b);
}

Interval make(double lo, double hi)
{
    return Interval(clean_zero(lo), clean_zero(hi));
}

// X / Y for non-empty X and Y with 0 not in Y: the relation z*y = x has the
// unique solution z = x/y, so both definitions reduce to the quotient image,
// which is monotone in each argument on every sign class.
Interval quotient(const Interval& x, const Interval& y)
{
    const double xl = x.lo(), xh = x.hi(), yl = y.lo(), yh = y.hi();
    if (yl > 0) {
        if (xl >= 0) {
            return make(div_bound_down(xl, yh), div_bound_up(xh, yl));
        }
        if (xh <= 0) {
            return make(div_bound_down(xl, yl), div_bound_up(xh, yh));
        }
        return make(div_bound_down(xl, yl), div_bound_up(xh, yl));
    }
    if (xl >= 0) {
        return make(div_bound_down(xh, yh), div_bound_up(xl, yl));
    }
    if (xh <= 0) {
        return make(div_bound_down(xh, yl), div_bound_up(xl, yh));
    }
    return make(div_bound_down(xh, yh), div_bound_up(xl, yh));
}

// {x/y | x∈X, 0 < y <= yh} for non-empty X != {0}. As y -> 0+ any
// non-zero x drives the quotient to an infinity of its own sign.
Interval quotient_positive_side(const Interval& x, double yh)
{
    if (x.lo() >= 0) {
        return make(div_bound_down(x.lo(), yh), kInf);
    }
    if (x.hi() <= 0) {
        return make(-kInf, div_bound_up(x.hi(), yh));
    }
    return Interval::entire();
}

// {x/y | x∈X, yl <= y < 0} for non-empty X != {0}.
Interval quotient_negative_side(const Interval& x, double yl)
{
    if (x.lo() >= 0) {
        return make(-kInf, div_bound_up(x.lo(), yl));
    }
    if (x.hi() <= 0) {
        return make(div_bound_down(x.hi(), yl), kInf);
    }
    return Interval::entire();
}

} // namespace

Interval::Interval() : lo_(kInf), hi_(-kInf), empty_(true) {}

Interval::Interval(ExtendedFloat lo, ExtendedFloat hi) : lo_(lo), hi_(hi), empty_(false)
{
    if (std::isnan(lo) || std::isnan(hi)) {
        throw std::invalid_argument("Interval: NaN bound");
    }
    if (lo == kInf || hi == -kInf) {
        *this = Interval();
        return;
    }
    if (lo > hi) {
        throw std::invalid_argument("Interval: lower bound exceeds upper bound");
    }
    lo_ = clean_zero(lo);
    hi_ = clean_zero(hi);
}

Interval Interval::entire()
{
    return Interval(-kInf, kInf);
}

Interval Interval::point(double v)
{
    if (!std::isfinite(v)) {
        throw std::invalid_argument("Interval::point: value must be a finite real");
    }
    return Interval(v, v);
}

bool Interval::is_bounded() const
{
    return empty_ || (std::isfinite(lo_) && std::isfinite(hi_));
}

Interval hull_bounds(const ExactReal& lo, const ExactReal& hi)
{
    if (hi < lo) {
        return Interval::empty();
    }
    return Interval(round_down(lo), round_up(hi));
}

Interval hull_union(const Interval& a, const Interval& b)
{
    if (a.is_empty()) {
        return b;
    }
    if (b.is_empty()) {
        return a;
    }
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi) {
        return Interval::empty();
    }
    return Interval(lo, hi);
}

bool member(double p, const Interval& x)
{
    return std::isfinite(p) && !x.is_empty() && x.lo() <= p && p <= x.hi();
}

bool subset(const Interval& x, const Interval& y)
{
    if (x.is_empty()) {
        return true;
    }
    return !y.is_empty() && y.lo() <= x.lo() && x.hi() <= y.hi();
}

double width(const Interval& x)
{
    if (x.is_empty()) {
        return 0.0;
    }
    if (!x.is_bounded()) {
        return kInf;
    }
    return r::sub_up(x.hi(), x.lo());
}

std::optional<double> midpoint(const Interval& x)
{
    if (x.is_empty() || !x.is_bounded()) {
        return std::nullopt;
    }
    const double sum = x.lo() + x.hi();
    double m = std::isfinite(sum) ? sum / 2 : x.lo() / 2 + x.hi() / 2;
    m = std::clamp(m, x.lo(), x.hi());
    return clean_zero(m);
}

Interval add(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    const double lo = (x.lo() == -kInf || y.lo() == -kInf) ? -kInf : r::add_down(x.lo(), y.lo());
    const double hi = (x.hi() == kInf || y.hi() == kInf) ? kInf : r::add_up(x.hi(), y.hi());
    return make(lo, hi);
}

Interval sub(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    // z + y = x  <=>  z = x - y
    const double lo = (x.lo() == -kInf || y.hi() == kInf) ? -kInf : r::sub_down(x.lo(), y.hi());
    const double hi = (x.hi() == kInf || y.lo() == -kInf) ? kInf : r::sub_up(x.hi(), y.lo());
    return make(lo, hi);
}

Interval mul(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    if (is_zero(x) || is_zero(y)) {
        return Interval(0.0, 0.0);
    }
    // The product is bilinear, so over a product of intervals its extreme
    // values (or unbounded directions) occur at corner combinations.
    const double xs[2] = {x.lo(), x.hi()};
    const double ys[2] = {y.lo(), y.hi()};
    double lo = kInf;
    double hi = -kInf;
    for (double a : xs) {
        for (double b : ys) {
            lo = std::min(lo, mul_bound_down(a, b));
            hi = std::max(hi, mul_bound_up(a, b));
        }
    }
    return make(lo, hi);
}

Interval div(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    // Witness x = 0, y = 0 satisfies z * 0 = 0 for every real z.
    if (contains_zero(x) && contains_zero(y)) {
        return Interval::entire();
    }
    // Y = {0}, 0 not in X: z * 0 = x would force x = 0.
    if (is_zero(y)) {
        return Interval::empty();
    }
    // 0 not in Y: the witness y is non-zero and z = x / y.
    if (!contains_zero(y)) {
        return quotient(x, y);
    }
    // 0 in Y, Y != {0}, 0 not in X: y = 0 admits no witness, every other y
    // gives z = x / y, so the set is the union of the quotients over the
    // strictly positive and strictly negative parts of Y (one or two rays).
    Interval result = Interval::empty();
    if (y.hi() > 0) {
        result = hull_union(result, quotient_positive_side(x, y.hi()));
    }
    if (y.lo() < 0) {
        result = hull_union(result, quotient_negative_side(x, y.lo()));
    }
    return result;
}

Interval div_canonical(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty() || is_zero(y)) {
        return Interval::empty();
    }
    if (!contains_zero(y)) {
        return quotient(x, y);
    }
    if (is_zero(x)) {
        return Interval(0.0, 0.0);
    }
    Interval result = Interval::empty();
    if (y.hi() > 0) {
        result = hull_union(result, quotient_positive_side(x, y.hi()));
    }
    if (y.lo() < 0) {
        result = hull_union(result, quotient_negative_side(x, y.lo()));
    }
    return result;
}

Interval sqrt_rel(const Interval& x)
{
    if (x.is_empty() || x.hi() < 0) {
        return Interval::empty();
    }
    // {y | max(lo,0) <= y² <= hi} = [-√hi, -√a] ∪ [√a, √hi]
    const double root = r::sqrt_up(x.hi());
    return make(-root, root);
}

Interval sqrt_canonical(const Interval& x)
{
    if (x.is_empty() || x.hi() < 0) {
        return Interval::empty();
    }
    return make(r::sqrt_down(std::max(x.lo(), 0.0)), r::sqrt_up(x.hi()));
}

Interval neg(const Interval& x)
{
    if (x.is_empty()) {
        return x;
    }
    return make(-x.hi(), -x.lo());
}

Interval abs(const Interval& x)
{
    if (x.is_empty()) {
        return x;
    }
    if (x.lo() >= 0) {
        return x;
    }
    if (x.hi() <= 0) {
        return make(-x.hi(), -x.lo());
    }
    return make(0.0, std::max(-x.lo(), x.hi()));
}

bool Box::is_empty() const
{
    return std::any_of(dims_.begin(), dims_.end(), [](const Interval& d) { return d.is_empty(); });
}

bool Box::is_bounded() const
{
    return std::all_of(dims_.begin(), dims_.end(), [](const Interval& d) { return d.is_bounded(); });
}

bool Box::contains(std::span<const double> point) const
{
    if (point.size() != dims_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (!member(point[i], dims_[i])) {
            return false;
        }
    }
    return true;
}

Box Box::with(std::size_t i, const Interval& v) const
{
    Box copy = *this;
    copy.dims_.at(i) = v;
    return copy;
}

bool subset(const Box& a, const Box& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    if (a.is_empty()) {
        return true;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!subset(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

} // namespace sival
