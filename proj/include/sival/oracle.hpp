#pragma once

// Brute-force ground truth for the interval library: exact rational
// endpoint analysis, witness enumeration for the relational operations,
// corner enumeration for single-occurrence multilinear expressions, and
// randomized inclusion sampling. Nothing here calls the interval arithmetic
// it is meant to check, except sample_inclusion, whose whole purpose is to
// compare eval_real against eval_interval.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "sival/expr.hpp"
#include "sival/interval.hpp"
#include "sival/semantics.hpp"

namespace sival::oracle {

/// An interval with exact rational bounds. A missing bound is unbounded in
/// that direction.
struct RationalInterval {
    bool empty = false;
    std::optional<mpq_class> lo;
    std::optional<mpq_class> hi;

    static RationalInterval make_empty();
    static RationalInterval bounded(mpq_class lo, mpq_class hi);
    static RationalInterval entire();
    /// Exact image of a floating-point interval.
    static RationalInterval of(const Interval& x);

    [[nodiscard]] bool is_bounded() const { return empty || (lo && hi); }
    [[nodiscard]] bool contains(const mpq_class& v) const;
};

std::string to_string(const RationalInterval& x);

enum class Op { add, sub, mul, div, sqrt_rel };

/// Exact (unrounded) hull of the relation defining `op` over X (and Y).
///
/// +, -, * are exact by endpoint analysis. / and sqrt_rel enumerate a
/// grid of witnesses (endpoints, zero, and exact square roots included) and
/// add the symbolic y -> 0 rays; their finite bounds are within one grid
/// step inside the true hull. Throws std::domain_error on unbounded inputs
/// or grid < 2. `y` is ignored for sqrt_rel.
[[nodiscard]] RationalInterval relational_oracle(Op op, const RationalInterval& x, const RationalInterval& y,
                                                 std::size_t grid);

/// Exact range of a single-occurrence expression over {+, -, *, neg}: the
/// hull of its exact rational values at all 2^n corners of the box.
/// Throws std::invalid_argument when the expression is outside that class,
/// the box is unbounded or empty, or arities differ.
[[nodiscard]] RationalInterval corner_range_oracle(const Expr& e, const Box& box);

/// Draws `samples` uniform points from the bounded box and counts those
/// where eval_real is defined but its value lies outside eval_interval.
[[nodiscard]] std::size_t sample_inclusion(const Expr& e, const Interpretation& interp, const Box& box,
                                           std::size_t samples, std::uint64_t seed);

/// True iff every point of `exact` is a member of `enclosure`.
[[nodiscard]] bool encloses(const Interval& enclosure, const RationalInterval& exact);

/// `enclosure` contains `exact` and each finite bound is at most one
/// representable step outside the tightest binary64 bound; infinite bounds
/// must match exactly, and emptiness must agree.
[[nodiscard]] bool within_one_ulp(const Interval& enclosure, const RationalInterval& exact);

// Random cases.

struct ExprGenOptions {
    std::size_t max_depth = 5;
    std::size_t max_vars = 4;
    std::vector<UnaryOp> unary_ops{UnaryOp::neg, UnaryOp::abs, UnaryOp::sqrt, UnaryOp::sqrt_rel};
    std::vector<BinaryOp> binary_ops{BinaryOp::add, BinaryOp::sub, BinaryOp::mul, BinaryOp::div};
    /// Each variable at most once; leaves then number at most max_vars.
    bool single_occurrence = false;
    double leaf_probability = 0.3;
};

/// Variables are named x, y, z, w, v4, v5, ...
[[nodiscard]] Expr random_expression(std::mt19937_64& rng, const ExprGenOptions& options);

struct BoxGenOptions {
    /// Endpoints k / 2^j with |k| <= 2^10 and j <= 4, so small products and
    /// sums of them stay exactly representable.
    bool dyadic = false;
    /// Mix in degenerate, zero-endpoint and zero-straddling coordinates.
    bool special_shapes = true;
    double magnitude = 4.0;
    double max_width = 3.0;
};

[[nodiscard]] Box random_box(std::mt19937_64& rng, std::size_t arity, const BoxGenOptions& options);

/// A uniformly drawn point of a bounded box.
[[nodiscard]] std::vector<double> random_point(std::mt19937_64& rng, const Box& box);

/// Smallest distance to a singularity along the evaluation of `e` at
/// `point`: the minimum over all division denominators of |denominator| and
/// over all square-root arguments of the argument itself (negative when
/// outside the domain). +inf when there are no such nodes.
[[nodiscard]] double singularity_margin(const Expr& e, std::span<const double> point);

// Test manifests: one case per line, `seed expr box expected-check`, e.g.
//
//     7 x*y+y*z [0,1];[1,2];[2,3] violations=0
//
// The expression is written without spaces, the box lists one interval per
// variable in variable-sequence order, separated by ';'. Blank lines and
// lines starting with '#' are ignored.

struct ManifestCase {
    std::uint64_t seed = 0;
    std::string expr;
    Box box;
    std::size_t expected_violations = 0;
};

/// nullopt for blank and comment lines; throws std::invalid_argument on a
/// malformed line.
[[nodiscard]] std::optional<ManifestCase> parse_manifest_line(std::string_view line);
[[nodiscard]] std::string format_manifest_line(const ManifestCase& c);

} // namespace sival::oracle
