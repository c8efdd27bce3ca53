#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "sival/exact_real.hpp"

namespace sival {

/// A floating-point interval: a closed connected set of reals whose finite
/// bounds are binary64 numbers.
///
/// An infinite bound means the corresponding constraint is absent, so
/// `[-inf, 2]` is the set {x | x <= 2}; the infinities are never members.
/// Empty is a distinct state, not an encoding in the bounds.
class Interval {
  public:
    /// Checked constructor. Throws std::invalid_argument on a NaN bound or
    /// on lo > hi. A form with lo == +inf or hi == -inf has no real members
    /// and yields Empty.
    Interval(ExtendedFloat lo, ExtendedFloat hi);

    static Interval empty() { return Interval(); }
    static Interval entire();
    /// The singleton {v}; v must be finite.
    static Interval point(double v);

    [[nodiscard]] bool is_empty() const { return empty_; }
    /// Greatest lower bound of the set; +inf for Empty.
    [[nodiscard]] ExtendedFloat lo() const { return lo_; }
    /// Least upper bound of the set; -inf for Empty.
    [[nodiscard]] ExtendedFloat hi() const { return hi_; }
    [[nodiscard]] bool is_bounded() const;
    [[nodiscard]] bool is_singleton() const { return !empty_ && lo_ == hi_; }

    friend bool operator==(const Interval& a, const Interval& b) = default;

  private:
    Interval();

    ExtendedFloat lo_;
    ExtendedFloat hi_;
    bool empty_;
};

/// The hull of the real interval between two exact bounds:
/// [round_down(lo), round_up(hi)]. lo > hi describes the empty set.
[[nodiscard]] Interval hull_bounds(const ExactReal& lo, const ExactReal& hi);

/// Smallest interval containing both arguments.
[[nodiscard]] Interval hull_union(const Interval& a, const Interval& b);
[[nodiscard]] Interval intersect(const Interval& a, const Interval& b);

[[nodiscard]] bool member(double p, const Interval& x);
/// Set inclusion; Empty is a subset of everything.
[[nodiscard]] bool subset(const Interval& x, const Interval& y);
/// hi - lo rounded up; +inf when unbounded; 0 for Empty.
[[nodiscard]] double width(const Interval& x);
/// Nearest representable midpoint; nullopt for Empty or unbounded input.
[[nodiscard]] std::optional<double> midpoint(const Interval& x);

// Arithmetic: each result is the hull of the set defined by the operation's
// relation over the argument sets. All operations are total.

/// □{z | ∃x∈X, y∈Y. x + y = z}
[[nodiscard]] Interval add(const Interval& x, const Interval& y);
/// □{z | ∃x∈X, y∈Y. z + y = x}
[[nodiscard]] Interval sub(const Interval& x, const Interval& y);
/// □{z | ∃x∈X, y∈Y. x * y = z}
[[nodiscard]] Interval mul(const Interval& x, const Interval& y);
/// □{z | ∃x∈X, y∈Y. z * y = x}. When 0 is in both X and Y every z is a
/// witness, so the result is the whole real line.
[[nodiscard]] Interval div(const Interval& x, const Interval& y);
/// □{x / y | x∈X, y∈Y, y != 0}, the image of the point quotient.
[[nodiscard]] Interval div_canonical(const Interval& x, const Interval& y);
/// □{y | ∃x∈X. y² = x}; both roots are included.
[[nodiscard]] Interval sqrt_rel(const Interval& x);
/// □{√x | x ∈ X, x >= 0}, the image of the non-negative square root.
[[nodiscard]] Interval sqrt_canonical(const Interval& x);
[[nodiscard]] Interval neg(const Interval& x);
[[nodiscard]] Interval abs(const Interval& x);

inline Interval operator+(const Interval& x, const Interval& y) { return add(x, y); }
inline Interval operator-(const Interval& x, const Interval& y) { return sub(x, y); }
inline Interval operator*(const Interval& x, const Interval& y) { return mul(x, y); }
inline Interval operator/(const Interval& x, const Interval& y) { return div(x, y); }
inline Interval operator-(const Interval& x) { return neg(x); }

/// A finite ordered sequence of intervals, read as their Cartesian product.
class Box {
  public:
    Box() = default;
    explicit Box(std::vector<Interval> dims) : dims_(std::move(dims)) {}
    Box(std::initializer_list<Interval> dims) : dims_(dims) {}

    [[nodiscard]] std::size_t size() const { return dims_.size(); }
    [[nodiscard]] const Interval& operator[](std::size_t i) const { return dims_[i]; }
    [[nodiscard]] std::span<const Interval> dims() const { return dims_; }
    [[nodiscard]] auto begin() const { return dims_.begin(); }
    [[nodiscard]] auto end() const { return dims_.end(); }

    /// Empty as a set iff some coordinate is Empty.
    [[nodiscard]] bool is_empty() const;
    [[nodiscard]] bool is_bounded() const;
    /// Coordinatewise membership; false on an arity mismatch.
    [[nodiscard]] bool contains(std::span<const double> point) const;

    /// Copy with coordinate i replaced.
    [[nodiscard]] Box with(std::size_t i, const Interval& v) const;

    friend bool operator==(const Box& a, const Box& b) = default;

  private:
    std::vector<Interval> dims_;
};

/// Coordinatewise inclusion of boxes of equal arity. An empty box is a
/// subset of any box of the same arity.
[[nodiscard]] bool subset(const Box& a, const Box& b);

} // namespace sival
