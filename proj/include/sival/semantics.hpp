#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sival/expr.hpp"
#include "sival/interval.hpp"

namespace sival {

/// Value of a real partial function at a point: the value, or nullopt where
/// the point is outside the function's domain. A held value is always a
/// finite double; a result too large for binary64 is reported as undefined.
using RealResult = std::optional<double>;

using RealUnary = RealResult (*)(double);
using RealBinary = RealResult (*)(double, double);
using IntervalUnary = Interval (*)(const Interval&);
using IntervalBinary = Interval (*)(const Interval&, const Interval&);

enum class Mode { relational, canonical };

/// Maps each operation symbol to a real partial function and to an interval
/// set extension of it.
class Interpretation {
  public:
    /// `sqrt` bound to the canonical root, `/` to the relational quotient,
    /// `sqrtr` to the relational root; the rest have a single extension.
    static Interpretation standard();

    [[nodiscard]] RealResult real(UnaryOp op, double x) const;
    [[nodiscard]] RealResult real(BinaryOp op, double x, double y) const;
    [[nodiscard]] Interval interval(UnaryOp op, const Interval& x) const;
    [[nodiscard]] Interval interval(BinaryOp op, const Interval& x, const Interval& y) const;

    [[nodiscard]] Interpretation with(UnaryOp op, RealUnary real, IntervalUnary interval) const;
    [[nodiscard]] Interpretation with(BinaryOp op, RealBinary real, IntervalBinary interval) const;

    /// Label used in reports: "default", "relational" or "canonical".
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] Interpretation renamed(std::string name) const;

  private:
    struct UnaryEntry {
        RealUnary real;
        IntervalUnary interval;
    };
    struct BinaryEntry {
        RealBinary real;
        IntervalBinary interval;
    };

    std::array<UnaryEntry, 4> unary_{};
    std::array<BinaryEntry, 4> binary_{};
    std::string name_ = "default";
};

/// Rebinds `/` and `sqrt`: canonical mode uses the quotient image and the
/// non-negative root; relational mode uses the relational definitions.
/// `sqrtr` keeps the relational root in both modes.
[[nodiscard]] Interpretation mode_select(const Interpretation& base, Mode mode);

/// Thrown when an evaluation point or box does not match the expression's
/// variable sequence.
class ArityError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The distribution plan for the pair ⟨e1, e2⟩.
[[nodiscard]] DistributionPlan build_distribution(const Expr& e1, const Expr& e2);

/// The function computed by `e` under the real interpretation, at a point
/// given in variable-sequence order. Undefinedness is strict: any undefined
/// subterm makes the whole result undefined.
[[nodiscard]] RealResult eval_real(const Expr& e, const Interpretation& interp, std::span<const double> point);

/// The function computed by `e` under the interval interpretation, on a box
/// given in variable-sequence order. Total.
[[nodiscard]] Interval eval_interval(const Expr& e, const Interpretation& interp, const Box& box);

} // namespace sival
