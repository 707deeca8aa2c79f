#include <gtest/gtest.h>

#include <random>

#include "ntw/curve_weights.hpp"
#include "support_fixtures.hpp"

using namespace ntw;
using ntw::testing::poly;

namespace {

// Brute-force oracle independent of the hull code: a lattice point lies in the
// hull when it is on the inner side of every supporting line through two
// support points.
struct PolygonCounts {
    long interior = 0, boundary = 0;
};

PolygonCounts oracle_counts(const std::vector<IntVec>& pts) {
    std::vector<std::tuple<Int, Int, Int>> lines;  // a*x + b*y <= c
    for (std::size_t s = 0; s < pts.size(); ++s)
        for (std::size_t t = 0; t < pts.size(); ++t) {
            if (pts[s] == pts[t]) continue;
            Int a = pts[t][1] - pts[s][1], b = pts[s][0] - pts[t][0];
            Int c = a * pts[s][0] + b * pts[s][1];
            bool ok = true;
            for (const auto& p : pts) ok = ok && a * p[0] + b * p[1] <= c;
            if (ok) lines.emplace_back(a, b, c);
        }
    Int lo0 = 1 << 20, lo1 = 1 << 20, hi0 = -(1 << 20), hi1 = -(1 << 20);
    for (const auto& p : pts) {
        lo0 = std::min(lo0, p[0]);
        hi0 = std::max(hi0, p[0]);
        lo1 = std::min(lo1, p[1]);
        hi1 = std::max(hi1, p[1]);
    }
    PolygonCounts c;
    for (Int x = lo0; x <= hi0; ++x)
        for (Int y = lo1; y <= hi1; ++y) {
            bool inside = true, on_edge = false;
            for (auto [a, b, r] : lines) {
                Int v = a * x + b * y;
                if (v > r) inside = false;
                if (v == r) on_edge = true;
            }
            if (!inside) continue;
            (on_edge ? c.boundary : c.interior)++;
        }
    return c;
}

}  // namespace

TEST(CurveWeights, Trinomial) {
    auto f = poly({{{3, 0}, "1"}, {{1, 1}, "1"}, {{0, 3}, "1"}});
    WeightVector expect{2, {1, 0, 2}};
    EXPECT_EQ(curve_weights_slopes(f), expect);
    EXPECT_EQ(curve_weights_strata(f), expect);
}

TEST(CurveWeights, FourTermExampleAndClaimCheck) {
    auto f = poly({{{4, 3}, "1"}, {{2, 2}, "3"}, {{2, 0}, "1"}, {{0, 1}, "1"}});
    auto w = curve_weights_checked(f);
    EXPECT_EQ(w.m[0], 2);
    EXPECT_EQ(w.m[2], 0);
    EXPECT_EQ(w.m[1], 6);
    auto claim = compare_with_claim(w, {2, 2, 0}, Integer(4));
    EXPECT_FALSE(claim.consistent);
    EXPECT_EQ(claim.flags.size(), 3u);
}

TEST(CurveWeights, UnitSquareAndTriangle) {
    EXPECT_EQ(curve_weights_checked(poly({{{0, 0}, "1"}, {{1, 0}, "1"}, {{0, 1}, "1"}, {{1, 1}, "1"}})),
              (WeightVector{2, {1, 0, 1}}));
    EXPECT_EQ(curve_weights_checked(poly({{{0, 0}, "1"}, {{1, 0}, "1"}, {{0, 1}, "1"}})),
              (WeightVector{2, {1, 0, 0}}));
}

TEST(CurveWeights, RejectsDegenerateSupport) {
    EXPECT_THROW(curve_weights_slopes(poly({{{0, 0}, "1"}, {{2, 1}, "1"}})), DegenerateSupport);
}

// Middle weight is twice the interior count; outer weights share B - 2.
TEST(Property, WeightsMatchBruteForceLatticeCounts) {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 300) {
        auto f = ntw::testing::random_support(rng, 12, 15);
        if (!f) continue;
        auto w = curve_weights_checked(*f);
        auto c = oracle_counts(f->exponents());
        EXPECT_EQ(w.m[1], 2 * c.interior);
        EXPECT_EQ(w.m[0] + w.m[2], c.boundary - 2);
        auto s = slope_data(*f);
        auto fv = face_volumes(newton_polytope(*f));
        EXPECT_EQ(Rational(s.n0 + s.ninf + s.volume_S0() + s.volume_Sinf()), fv.U[1]);
        ++done;
    }
}

TEST(Property, TranslationInvariance) {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 100) {
        auto f = ntw::testing::random_support(rng, 8, 10);
        if (!f) continue;
        Int dx = static_cast<Int>(rng() % 21) - 10, dy = static_cast<Int>(rng() % 21) - 10;
        EXPECT_EQ(curve_weights_checked(*f), curve_weights_checked(f->translated({dx, dy})));
        ++done;
    }
}
