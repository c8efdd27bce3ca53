#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sival/oracle.hpp"
#include "sival/parser.hpp"
#include "sival/semantics.hpp"

using namespace sival;

namespace {

Interval I(double lo, double hi)
{
    return Interval(lo, hi);
}

Expr P(const char* text)
{
    return parse(text).expr;
}

const Interpretation standard = Interpretation::standard();

TEST(BuildDistribution, SharedVariable)
{
    const auto plan = build_distribution(P("x*y"), P("y*z"));
    EXPECT_EQ(plan.combined_arity, 3u);
    EXPECT_EQ(plan.left_indices, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(plan.right_indices, (std::vector<std::size_t>{1, 2}));
    const std::vector<int> tuple{10, 20, 30};
    const auto [l, r] = plan.apply(std::span<const int>(tuple));
    EXPECT_EQ(l, (std::vector<int>{10, 20}));
    EXPECT_EQ(r, (std::vector<int>{20, 30}));
}

TEST(BuildDistribution, Disjoint)
{
    const auto plan = build_distribution(P("x"), P("y"));
    EXPECT_EQ(plan.combined_arity, 2u);
    EXPECT_EQ(plan.left_indices, (std::vector<std::size_t>{0}));
    EXPECT_EQ(plan.right_indices, (std::vector<std::size_t>{1}));
}

TEST(BuildDistribution, Same)
{
    const auto plan = build_distribution(P("x"), P("x"));
    EXPECT_EQ(plan.combined_arity, 1u);
    EXPECT_EQ(plan.left_indices, (std::vector<std::size_t>{0}));
    EXPECT_EQ(plan.right_indices, (std::vector<std::size_t>{0}));
}

TEST(BuildDistribution, ReorderedSharing)
{
    // Right sequence ⟨z, x⟩ against left ⟨x, y⟩.
    const auto plan = build_distribution(P("x + y"), P("z * x"));
    EXPECT_EQ(plan.combined_arity, 3u);
    EXPECT_EQ(plan.right_indices, (std::vector<std::size_t>{2, 0}));
}

TEST(EvalReal, PartialSquareRoot)
{
    const Expr e = P("sqrt(-abs(x))");
    EXPECT_EQ(eval_real(e, standard, std::vector<double>{0.0}), RealResult(0.0));
    EXPECT_EQ(eval_real(e, standard, std::vector<double>{1.0}), std::nullopt);
}

TEST(EvalReal, Examples)
{
    EXPECT_EQ(eval_real(P("x*y + y*z"), standard, std::vector<double>{1, 2, 3}), RealResult(8.0));
    EXPECT_EQ(eval_real(P("x/y"), standard, std::vector<double>{1, 0}), std::nullopt);
    EXPECT_EQ(eval_real(P("sqrtr(x)"), standard, std::vector<double>{9}), RealResult(3.0));
}

TEST(EvalReal, UndefinedPropagatesStrictly)
{
    // 0 * (1/0): the outer product never sees a value.
    EXPECT_EQ(eval_real(P("x * (y / x)"), standard, std::vector<double>{0, 1}), std::nullopt);
    EXPECT_EQ(eval_real(P("abs(sqrt(x)) + y"), standard, std::vector<double>{-1, 1}), std::nullopt);
}

TEST(EvalReal, OverflowIsUndefined)
{
    EXPECT_EQ(eval_real(P("x*x"), standard, std::vector<double>{1e200}), std::nullopt);
}

TEST(EvalReal, ArityAndFiniteness)
{
    EXPECT_THROW((void)eval_real(P("x*y"), standard, std::vector<double>{1}), ArityError);
    EXPECT_THROW((void)eval_real(P("x"), standard, std::vector<double>{INFINITY}), std::invalid_argument);
}

TEST(EvalInterval, Examples)
{
    EXPECT_EQ(eval_interval(P("x - x"), standard, Box{I(0, 1)}), I(-1, 1));
    EXPECT_EQ(eval_interval(P("x*y + y*z"), standard, Box{I(1, 1), I(2, 2), I(3, 3)}), I(8, 8));
    EXPECT_EQ(eval_interval(P("sqrt(x)"), standard, Box{I(4, 9)}), I(2, 3));
    EXPECT_TRUE(eval_interval(P("sqrt(x)"), standard, Box{I(-2, -1)}).is_empty());
    EXPECT_EQ(eval_interval(P("sqrt(-abs(x))"), standard, Box{I(-1, 1)}), I(0, 0));
    EXPECT_THROW((void)eval_interval(P("x*y"), standard, Box{I(0, 1)}), ArityError);
}

TEST(ModeSelect, Division)
{
    const Interpretation canonical = mode_select(standard, Mode::canonical);
    const Interpretation relational = mode_select(standard, Mode::relational);
    const Expr q = P("x/y");
    EXPECT_TRUE(eval_interval(q, canonical, Box{I(0, 1), I(0, 0)}).is_empty());
    EXPECT_EQ(eval_interval(q, relational, Box{I(0, 1), I(0, 0)}), Interval::entire());
    EXPECT_EQ(eval_interval(q, standard, Box{I(0, 1), I(0, 0)}), Interval::entire());
    const Expr s = P("x + y");
    EXPECT_EQ(eval_interval(s, canonical, Box{I(4, 6), I(1, 2)}), I(5, 8));
    EXPECT_EQ(eval_interval(s, relational, Box{I(4, 6), I(1, 2)}), I(5, 8));
    EXPECT_EQ(canonical.name(), "canonical");
    EXPECT_EQ(relational.name(), "relational");
    EXPECT_EQ(standard.name(), "default");
}

TEST(ModeSelect, SquareRoot)
{
    const Expr s = P("sqrt(x)");
    EXPECT_EQ(eval_interval(s, mode_select(standard, Mode::canonical), Box{I(4, 9)}), I(2, 3));
    EXPECT_EQ(eval_interval(s, mode_select(standard, Mode::relational), Box{I(4, 9)}), I(-3, 3));
    EXPECT_EQ(eval_interval(P("sqrtr(x)"), mode_select(standard, Mode::canonical), Box{I(4, 9)}), I(-3, 3));
}

// ---- properties ---------------------------------------------------------

std::vector<Interpretation> interpretations()
{
    return {standard, mode_select(standard, Mode::canonical), mode_select(standard, Mode::relational)};
}

// eval(e1 ⋄ e2, B) == ⋄(eval(e1, B_left), eval(e2, B_right)) with the
// routing of build_distribution.
TEST(SemanticsProperty, CompositionalConsistency)
{
    std::mt19937_64 rng(41);
    oracle::ExprGenOptions eopts;
    oracle::BoxGenOptions bopts;
    for (const auto& interp : interpretations()) {
        for (int i = 0; i < 1500; ++i) {
            const Expr e = oracle::random_expression(rng, eopts);
            if (e.kind() != Expr::Kind::binary) {
                continue;
            }
            const Box b = oracle::random_box(rng, e.variables().size(), bopts);
            const auto plan = build_distribution(e.left(), e.right());
            ASSERT_EQ(plan, e.plan());
            const auto [l, r] = plan.apply(b.dims());
            const Interval whole = eval_interval(e, interp, b);
            const Interval parts = interp.interval(e.binary_op(), eval_interval(e.left(), interp, Box(l)),
                                                   eval_interval(e.right(), interp, Box(r)));
            ASSERT_EQ(whole, parts) << to_string(e);

            const auto p = oracle::random_point(rng, b);
            const auto [pl, pr] = plan.apply(std::span<const double>(p));
            const RealResult a = eval_real(e.left(), interp, pl);
            const RealResult c = eval_real(e.right(), interp, pr);
            const RealResult expect = (a && c) ? interp.real(e.binary_op(), *a, *c) : std::nullopt;
            ASSERT_EQ(eval_real(e, interp, p), expect) << to_string(e);
        }
    }
}

Box random_sub_box(std::mt19937_64& rng, const Box& b)
{
    std::vector<Interval> dims;
    for (const Interval& x : b) {
        const auto p = oracle::random_point(rng, Box{x});
        const auto q = oracle::random_point(rng, Box{x});
        dims.emplace_back(std::min(p[0], q[0]), std::max(p[0], q[0]));
    }
    return Box(std::move(dims));
}

TEST(SemanticsProperty, BoxMonotonicity)
{
    std::mt19937_64 rng(43);
    oracle::ExprGenOptions eopts;
    oracle::BoxGenOptions bopts;
    for (const auto& interp : interpretations()) {
        for (int i = 0; i < 1500; ++i) {
            const Expr e = oracle::random_expression(rng, eopts);
            const Box b = oracle::random_box(rng, e.variables().size(), bopts);
            const Box sub = random_sub_box(rng, b);
            ASSERT_TRUE(subset(sub, b));
            ASSERT_TRUE(subset(eval_interval(e, interp, sub), eval_interval(e, interp, b))) << to_string(e);
        }
    }
}

TEST(SemanticsProperty, FundamentalInclusion)
{
    std::mt19937_64 rng(47);
    oracle::ExprGenOptions eopts;
    oracle::BoxGenOptions bopts;
    for (const auto& interp : interpretations()) {
        for (int i = 0; i < 1000; ++i) {
            const Expr e = oracle::random_expression(rng, eopts);
            const Box b = oracle::random_box(rng, e.variables().size(), bopts);
            ASSERT_EQ(oracle::sample_inclusion(e, interp, b, 50, i), 0u) << to_string(e);
        }
    }
}

// eval_interval never throws for matching arity, even with Empty and
// unbounded coordinates.
TEST(SemanticsProperty, Totality)
{
    std::mt19937_64 rng(53);
    oracle::ExprGenOptions eopts;
    const std::vector<Interval> pool{Interval::empty(), Interval::entire(), I(0, 0), I(-2, -1), I(0, INFINITY),
                                     I(-INFINITY, -1), I(-1, 1)};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 3000; ++i) {
        const Expr e = oracle::random_expression(rng, eopts);
        std::vector<Interval> dims;
        for (std::size_t k = 0; k < e.variables().size(); ++k) {
            dims.push_back(pool[pick(rng)]);
        }
        for (const auto& interp : interpretations()) {
            const Interval r = eval_interval(e, interp, Box(dims));
            ASSERT_TRUE(r.is_empty() || r.lo() <= r.hi());
        }
    }
}

} // namespace
