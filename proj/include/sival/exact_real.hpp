#pragma once

#include <string_view>

#include <gmpxx.h>

namespace sival {

/// A bound value: a binary64 number where -inf and +inf are admitted.
/// Never NaN; the Interval constructors enforce this at the boundary.
using ExtendedFloat = double;

/// An exact extended real: a rational number or one of the two infinities.
///
/// This is the descriptor handed to the directed rounding functions. It lets
/// callers state a bound exactly (a decimal literal, a quotient of two
/// doubles, ...) before it is rounded to a floating-point bound.
class ExactReal {
  public:
    enum class Kind { neg_inf, finite, pos_inf };

    ExactReal() = default;
    explicit ExactReal(mpq_class value);
    /// Exact conversion; throws std::invalid_argument on NaN.
    explicit ExactReal(double value);
    ExactReal(long num, unsigned long den);

    static ExactReal infinity(bool negative);

    /// Parses a decimal literal (`12`, `-0.1`, `3.5e-7`) or `inf` / `-inf`
    /// without any rounding. Throws std::invalid_argument on malformed text.
    static ExactReal parse_decimal(std::string_view text);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_finite() const { return kind_ == Kind::finite; }
    /// Only meaningful when is_finite().
    [[nodiscard]] const mpq_class& value() const { return value_; }

    friend bool operator==(const ExactReal& a, const ExactReal& b);
    friend bool operator<(const ExactReal& a, const ExactReal& b);
    friend bool operator<=(const ExactReal& a, const ExactReal& b) { return !(b < a); }

  private:
    Kind kind_ = Kind::finite;
    mpq_class value_;
};

/// Greatest binary64 value not greater than x.
[[nodiscard]] ExtendedFloat round_down(const ExactReal& x);

/// Least binary64 value not less than x.
[[nodiscard]] ExtendedFloat round_up(const ExactReal& x);

} // namespace sival
