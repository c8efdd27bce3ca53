#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sival/expr.hpp"
#include "sival/interval.hpp"
#include "sival/semantics.hpp"

namespace sival {

/// A finite prefix of a nested sequence of boxes shrinking toward `target`.
struct RefinementSequence {
    std::vector<Box> boxes;
    std::vector<double> target;
};

struct EnclosureReport {
    Interval enclosure = Interval::empty();
    /// Width of the enclosure at each recorded stage; non-increasing when
    /// `nested` holds.
    std::vector<double> widths;
    std::size_t iterations = 0;
    bool converged = false;
    /// Each evaluated interval lies inside its predecessor.
    bool nested = true;
    /// Point value at the target (refinement reports only).
    std::optional<double> value;
    /// Interval evaluated on each box (refinement reports only).
    std::vector<Interval> intervals;
};

/// Halves every coordinate of `box0` per step, keeping `target` inside. The
/// new coordinate is centred on the target where possible and shifted to
/// stay within the previous one otherwise.
///
/// Throws std::domain_error when the target is outside `box0` or `box0` is
/// unbounded, ArityError on a dimension mismatch.
[[nodiscard]] RefinementSequence refine_toward(const Box& box0, std::span<const double> target, std::size_t steps);

/// Evaluates `e` on every box of `seq` and checks that the intervals are
/// nested, contain the point value at the target, and end no wider than
/// `tol`. Only an undefined point value at the target is an error
/// (std::domain_error); a nestedness failure is reported, not thrown.
[[nodiscard]] EnclosureReport check_convergence(const Expr& e, const Interpretation& interp,
                                                const RefinementSequence& seq, double tol);

/// Range enclosure by subdivision.
///
/// Keeps a set of leaf boxes covering `box0`. The leaf whose evaluated
/// interval is widest is bisected at the midpoint of its widest coordinate
/// (lowest index on ties) until every leaf interval has width <= tol or the
/// leaf count reaches `max_boxes`. The enclosure is the hull of the leaf
/// intervals. Widths are recorded at 1, 2, 4, 8, ... leaves and at the end.
///
/// Throws std::domain_error for an empty or unbounded `box0`.
[[nodiscard]] EnclosureReport subdivide_enclosure(const Expr& e, const Interpretation& interp, const Box& box0,
                                                  double tol, std::size_t max_boxes);

/// Splits coordinate `coord` at its rounded midpoint. Both halves contain
/// the midpoint. Throws std::domain_error when the coordinate is empty,
/// unbounded, or too narrow to split.
[[nodiscard]] std::pair<Box, Box> bisect(const Box& b, std::size_t coord);

/// The widest splittable coordinate, lowest index on ties.
[[nodiscard]] std::optional<std::size_t> widest_coordinate(const Box& b);

} // namespace sival
