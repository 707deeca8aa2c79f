#include <gtest/gtest.h>

#include "ntw/polygon2d.hpp"
#include "support_fixtures.hpp"

using namespace ntw;
using ntw::testing::poly;

TEST(Polygon, NormalizeTranslatesToOrigin) {
    auto f = poly({{{-2, 3}, "1"}, {{0, 5}, "2"}, {{1, 4}, "-1"}});
    auto g = normalize(f);
    std::vector<IntVec> expect{{0, 0}, {2, 2}, {3, 1}};
    EXPECT_EQ(g.exponents(), expect);
    EXPECT_THROW(normalize(poly({{{0, 0}, "1"}, {{1, 1}, "1"}, {{2, 2}, "1"}})), DegenerateSupport);
    EXPECT_THROW(normalize(poly({{{3, 3}, "1"}})), DegenerateSupport);
}

TEST(Polygon, SlopeDataOfTrinomial) {
    auto s = slope_data(poly({{{3, 0}, "1"}, {{1, 1}, "1"}, {{0, 3}, "1"}}));
    ASSERT_EQ(s.S0.size(), 2u);
    EXPECT_EQ(s.S0[0].slope, -2);
    EXPECT_EQ(s.S0[1].slope, Rational(-1, 2));
    EXPECT_EQ(s.volume_S0(), 2);
    ASSERT_EQ(s.Sinf.size(), 1u);
    EXPECT_EQ(s.Sinf[0].volume, 3);
    EXPECT_EQ(s.n0, 0);
    EXPECT_EQ(s.ninf, 0);
}

TEST(Polygon, StratumCountsFollowReflectedSlopeSigns) {
    auto c = stratum_counts(poly({{{3, 0}, "1"}, {{1, 1}, "1"}, {{0, 3}, "1"}}));
    EXPECT_EQ(c.n1, 0);
    EXPECT_EQ(c.n2, 0);
    EXPECT_EQ(c.r1, 3);
    EXPECT_EQ(c.r2, 0);
    auto d = stratum_counts(poly({{{4, 3}, "1"}, {{2, 2}, "3"}, {{2, 0}, "1"}, {{0, 1}, "1"}}));
    EXPECT_EQ(d.n1, 0);
    EXPECT_EQ(d.n2, 0);
    EXPECT_EQ(d.r1, 0);
    EXPECT_EQ(d.r2, 1);
    // Rectangle: the whole right side is vertical, the top is flat.
    auto r = stratum_counts(poly({{{0, 0}, "1"}, {{2, 0}, "1"}, {{0, 3}, "1"}, {{2, 3}, "1"}}));
    EXPECT_EQ(r.n1, 2);
    EXPECT_EQ(r.n2, 3);
}
