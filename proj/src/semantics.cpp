#include "sival/semantics.hpp"

#include <cmath>
#include <vector>

namespace sival {

namespace {

RealResult finite_or_undefined(double v)
{
    if (!std::isfinite(v)) {
        return std::nullopt;
    }
    return v == 0.0 ? 0.0 : v;
}

RealResult real_add(double x, double y) { return finite_or_undefined(x + y); }
RealResult real_sub(double x, double y) { return finite_or_undefined(x - y); }
RealResult real_mul(double x, double y) { return finite_or_undefined(x * y); }

RealResult real_div(double x, double y)
{
    if (y == 0) {
        return std::nullopt;
    }
    return finite_or_undefined(x / y);
}

RealResult real_neg(double x) { return finite_or_undefined(-x); }
RealResult real_abs(double x) { return finite_or_undefined(std::fabs(x)); }

RealResult real_sqrt(double x)
{
    if (x < 0) {
        return std::nullopt;
    }
    return finite_or_undefined(std::sqrt(x));
}

Interval interval_sub(const Interval& x, const Interval& y) { return sub(x, y); }
Interval interval_add(const Interval& x, const Interval& y) { return add(x, y); }
Interval interval_mul(const Interval& x, const Interval& y) { return mul(x, y); }
Interval interval_div(const Interval& x, const Interval& y) { return div(x, y); }
Interval interval_div_canonical(const Interval& x, const Interval& y) { return div_canonical(x, y); }
Interval interval_neg(const Interval& x) { return neg(x); }
Interval interval_abs(const Interval& x) { return abs(x); }
Interval interval_sqrt(const Interval& x) { return sqrt_canonical(x); }
Interval interval_sqrt_rel(const Interval& x) { return sqrt_rel(x); }

std::size_t index(UnaryOp op) { return static_cast<std::size_t>(op); }
std::size_t index(BinaryOp op) { return static_cast<std::size_t>(op); }

// A variable computes the identity on its one-element tuple. A unary node
// shares its child's variable sequence. A binary node routes its tuple
// through the cached distribution plan: the left child sees the prefix, the
// right child the gathered positions.
RealResult fold_real(const Expr& e, const Interpretation& interp, std::span<const double> args)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        return args[0];
    case Expr::Kind::unary: {
        const RealResult v = fold_real(e.child(), interp, args);
        if (!v) {
            return std::nullopt;
        }
        return interp.real(e.unary_op(), *v);
    }
    case Expr::Kind::binary: {
        const DistributionPlan& plan = e.plan();
        const RealResult a = fold_real(e.left(), interp, args.first(plan.left_indices.size()));
        if (!a) {
            return std::nullopt;
        }
        std::vector<double> right(plan.right_indices.size());
        for (std::size_t k = 0; k < right.size(); ++k) {
            right[k] = args[plan.right_indices[k]];
        }
        const RealResult b = fold_real(e.right(), interp, right);
        if (!b) {
            return std::nullopt;
        }
        return interp.real(e.binary_op(), *a, *b);
    }
    }
    return std::nullopt;
}

Interval fold_interval(const Expr& e, const Interpretation& interp, std::span<const Interval> args)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        return args[0];
    case Expr::Kind::unary:
        return interp.interval(e.unary_op(), fold_interval(e.child(), interp, args));
    case Expr::Kind::binary: {
        const DistributionPlan& plan = e.plan();
        const Interval a = fold_interval(e.left(), interp, args.first(plan.left_indices.size()));
        std::vector<Interval> right;
        right.reserve(plan.right_indices.size());
        for (auto i : plan.right_indices) {
            right.push_back(args[i]);
        }
        const Interval b = fold_interval(e.right(), interp, right);
        return interp.interval(e.binary_op(), a, b);
    }
    }
    return Interval::empty();
}

} // namespace

Interpretation Interpretation::standard()
{
    Interpretation i;
    i.unary_[index(UnaryOp::neg)] = {real_neg, interval_neg};
    i.unary_[index(UnaryOp::abs)] = {real_abs, interval_abs};
    i.unary_[index(UnaryOp::sqrt)] = {real_sqrt, interval_sqrt};
    i.unary_[index(UnaryOp::sqrt_rel)] = {real_sqrt, interval_sqrt_rel};
    i.binary_[index(BinaryOp::add)] = {real_add, interval_add};
    i.binary_[index(BinaryOp::sub)] = {real_sub, interval_sub};
    i.binary_[index(BinaryOp::mul)] = {real_mul, interval_mul};
    i.binary_[index(BinaryOp::div)] = {real_div, interval_div};
    return i;
}

RealResult Interpretation::real(UnaryOp op, double x) const
{
    return unary_[index(op)].real(x);
}

RealResult Interpretation::real(BinaryOp op, double x, double y) const
{
    return binary_[index(op)].real(x, y);
}

Interval Interpretation::interval(UnaryOp op, const Interval& x) const
{
    return unary_[index(op)].interval(x);
}

Interval Interpretation::interval(BinaryOp op, const Interval& x, const Interval& y) const
{
    return binary_[index(op)].interval(x, y);
}

Interpretation Interpretation::with(UnaryOp op, RealUnary real, IntervalUnary interval) const
{
    Interpretation copy = *this;
    copy.unary_[index(op)] = {real, interval};
    return copy;
}

Interpretation Interpretation::with(BinaryOp op, RealBinary real, IntervalBinary interval) const
{
    Interpretation copy = *this;
    copy.binary_[index(op)] = {real, interval};
    return copy;
}

Interpretation Interpretation::renamed(std::string name) const
{
    Interpretation copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

Interpretation mode_select(const Interpretation& base, Mode mode)
{
    if (mode == Mode::canonical) {
        return base.with(BinaryOp::div, real_div, interval_div_canonical)
            .with(UnaryOp::sqrt, real_sqrt, interval_sqrt)
            .renamed("canonical");
    }
    return base.with(BinaryOp::div, real_div, interval_div)
        .with(UnaryOp::sqrt, real_sqrt, interval_sqrt_rel)
        .renamed("relational");
}

DistributionPlan build_distribution(const Expr& e1, const Expr& e2)
{
    return plan_distribution(e1.variables(), e2.variables());
}

RealResult eval_real(const Expr& e, const Interpretation& interp, std::span<const double> point)
{
    if (point.size() != e.variables().size()) {
        throw ArityError("eval_real: point has " + std::to_string(point.size()) + " coordinates, expression has " +
                         std::to_string(e.variables().size()) + " variables");
    }
    for (double v : point) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("eval_real: point coordinates must be finite reals");
        }
    }
    return fold_real(e, interp, point);
}

Interval eval_interval(const Expr& e, const Interpretation& interp, const Box& box)
{
    if (box.size() != e.variables().size()) {
        throw ArityError("eval_interval: box has " + std::to_string(box.size()) + " coordinates, expression has " +
                         std::to_string(e.variables().size()) + " variables");
    }
    return fold_interval(e, interp, box.dims());
}

} // namespace sival
