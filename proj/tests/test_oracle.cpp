#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "sival/oracle.hpp"
#include "sival/parser.hpp"

using namespace sival;
using namespace sival::oracle;

namespace {

Interval I(double lo, double hi)
{
    return Interval(lo, hi);
}

RationalInterval Q(long lo, long hi)
{
    return RationalInterval::bounded(mpq_class(lo), mpq_class(hi));
}

bool same(const RationalInterval& a, const RationalInterval& b)
{
    return a.empty == b.empty && a.lo == b.lo && a.hi == b.hi;
}

TEST(RelationalOracle, Add)
{
    EXPECT_TRUE(same(relational_oracle(Op::add, Q(1, 2), Q(3, 4), 2), Q(4, 6)));
}

TEST(RelationalOracle, DivisionThroughZeroIsUnboundedBothSides)
{
    const auto r = relational_oracle(Op::div, Q(1, 2), Q(-1, 1), 9);
    EXPECT_FALSE(r.empty);
    EXPECT_FALSE(r.lo);
    EXPECT_FALSE(r.hi);
}

TEST(RelationalOracle, DivisionByZeroSingleton)
{
    EXPECT_TRUE(relational_oracle(Op::div, Q(1, 2), Q(0, 0), 9).empty);
    EXPECT_TRUE(same(relational_oracle(Op::div, Q(0, 1), Q(0, 0), 9), RationalInterval::entire()));
}

TEST(RelationalOracle, DivisionOneSided)
{
    const auto r = relational_oracle(Op::div, Q(1, 2), Q(0, 1), 9);
    ASSERT_TRUE(r.lo);
    EXPECT_EQ(*r.lo, 1);
    EXPECT_FALSE(r.hi);
}

TEST(RelationalOracle, SqrtRel)
{
    EXPECT_TRUE(same(relational_oracle(Op::sqrt_rel, Q(4, 9), {}, 11), Q(-3, 3)));
    EXPECT_TRUE(relational_oracle(Op::sqrt_rel, Q(-2, -1), {}, 11).empty);
    EXPECT_TRUE(same(relational_oracle(Op::sqrt_rel, Q(0, 0), {}, 11), Q(0, 0)));
}

TEST(RelationalOracle, RejectsUnbounded)
{
    EXPECT_THROW((void)relational_oracle(Op::add, RationalInterval::entire(), Q(0, 1), 3), std::domain_error);
    EXPECT_THROW((void)relational_oracle(Op::add, Q(0, 1), Q(0, 1), 1), std::domain_error);
}

TEST(CornerRangeOracle, Examples)
{
    EXPECT_TRUE(same(corner_range_oracle(parse("x*y").expr, Box{I(-1, 2), I(3, 4)}), Q(-4, 8)));
    EXPECT_TRUE(same(corner_range_oracle(parse("x + y - z").expr, Box{I(0, 1), I(0, 1), I(0, 1)}), Q(-1, 2)));
    EXPECT_TRUE(same(corner_range_oracle(parse("x").expr, Box{I(0, 1)}), Q(0, 1)));
    EXPECT_THROW((void)corner_range_oracle(parse("x - x").expr, Box{I(0, 1)}), std::invalid_argument);
    EXPECT_THROW((void)corner_range_oracle(parse("x / y").expr, Box{I(0, 1), I(1, 2)}), std::invalid_argument);
}

TEST(SampleInclusion, Examples)
{
    const auto standard = Interpretation::standard();
    EXPECT_EQ(sample_inclusion(parse("x - x").expr, standard, Box{I(0, 1)}, 1000, 1), 0u);
    EXPECT_EQ(sample_inclusion(parse("sqrt(-abs(x))").expr, standard, Box{I(-1, 1)}, 1000, 1), 0u);
    EXPECT_EQ(sample_inclusion(parse("x*y").expr, standard, Box{I(-1, 2), I(3, 4)}, 1000, 7), 0u);
}

// A deliberately wrong extension is caught.
TEST(SampleInclusion, DetectsBrokenExtension)
{
    const auto broken = Interpretation::standard().with(
        BinaryOp::sub, [](double x, double y) -> RealResult { return x - y; },
        [](const Interval&, const Interval&) { return Interval(0, 0); });
    EXPECT_GT(sample_inclusion(parse("x - y").expr, broken, Box{I(0, 1), I(0, 1)}, 100, 3), 0u);
}

TEST(WithinOneUlp, Judgement)
{
    const auto tenth = RationalInterval::bounded(mpq_class(1, 10), mpq_class(1, 10));
    EXPECT_TRUE(within_one_ulp(I(0x1.9999999999999p-4, 0x1.999999999999ap-4), tenth));
    EXPECT_TRUE(within_one_ulp(I(0x1.9999999999998p-4, 0x1.999999999999bp-4), tenth));
    EXPECT_FALSE(within_one_ulp(I(0x1.9999999999997p-4, 0x1.999999999999ap-4), tenth));
    EXPECT_FALSE(within_one_ulp(I(0x1.9999999999999p-4, 0x1.999999999999cp-4), tenth));
    EXPECT_FALSE(within_one_ulp(I(0x1.999999999999ap-4, 0x1.999999999999ap-4), tenth));
    EXPECT_TRUE(within_one_ulp(I(1, 2), Q(1, 2)));
    EXPECT_TRUE(within_one_ulp(Interval::empty(), RationalInterval::make_empty()));
    EXPECT_FALSE(within_one_ulp(I(0, 0), RationalInterval::make_empty()));
    EXPECT_TRUE(within_one_ulp(Interval::entire(), RationalInterval::entire()));
    EXPECT_FALSE(within_one_ulp(I(0, 1e300), RationalInterval::entire()));
}

TEST(Generators, Deterministic)
{
    std::mt19937_64 a(99), b(99);
    ExprGenOptions opts;
    for (int i = 0; i < 50; ++i) {
        ASSERT_EQ(random_expression(a, opts), random_expression(b, opts));
    }
}

TEST(Generators, DyadicBoxes)
{
    std::mt19937_64 rng(5);
    BoxGenOptions opts;
    opts.dyadic = true;
    for (int i = 0; i < 1000; ++i) {
        for (const Interval& x : random_box(rng, 3, opts)) {
            ASSERT_EQ(x.lo() * 16, std::round(x.lo() * 16));
            ASSERT_EQ(x.hi() * 16, std::round(x.hi() * 16));
        }
    }
}

TEST(SingularityMargin, Examples)
{
    EXPECT_EQ(singularity_margin(parse("x + y").expr, std::vector<double>{1, 2}), INFINITY);
    EXPECT_EQ(singularity_margin(parse("x / y").expr, std::vector<double>{1, -0.25}), 0.25);
    EXPECT_EQ(singularity_margin(parse("sqrt(x - y)").expr, std::vector<double>{1, 3}), -2);
}

TEST(Manifest, FormatParse)
{
    ManifestCase c{7, "x*y + y*z", Box{I(0, 1), I(1, 2), I(2, 3)}, 0};
    const std::string line = format_manifest_line(c);
    EXPECT_EQ(line, "7 x*y+y*z [0,1];[1,2];[2,3] violations=0");
    const auto back = parse_manifest_line(line);
    ASSERT_TRUE(back);
    EXPECT_EQ(back->seed, 7u);
    EXPECT_EQ(back->expr, "x*y+y*z");
    EXPECT_EQ(back->box, c.box);
    EXPECT_FALSE(parse_manifest_line("# comment"));
    EXPECT_FALSE(parse_manifest_line("   "));
    EXPECT_THROW((void)parse_manifest_line("7 x [0,1] bogus"), std::invalid_argument);
}

// Recorded cases: each line's violation count must be reproduced.
TEST(Manifest, ReplayInclusionCases)
{
    std::ifstream in(std::string(SIVAL_TEST_DATA) + "/data/inclusion_cases.txt");
    ASSERT_TRUE(in) << "missing tests/data/inclusion_cases.txt";
    const auto standard = Interpretation::standard();
    std::size_t cases = 0;
    for (std::string line; std::getline(in, line);) {
        const auto c = parse_manifest_line(line);
        if (!c) {
            continue;
        }
        const Expr e = parse(c->expr).expr;
        ASSERT_EQ(e.variables().size(), c->box.size()) << line;
        EXPECT_EQ(sample_inclusion(e, standard, c->box, 1000, c->seed), c->expected_violations) << line;
        ++cases;
    }
    EXPECT_GT(cases, 0u);
}

} // namespace
