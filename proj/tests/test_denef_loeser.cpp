#include <gtest/gtest.h>

#include <random>

#include "ntw/denef_loeser.hpp"
#include "ntw/lattice_count.hpp"

using namespace ntw;

TEST(CurveFormula, UnitSquare) {
    auto f = curve_signed_weights(Rational(1), Rational(4));
    EXPECT_EQ(f.f, (std::vector<Integer>{3, 0, -1}));
}

TEST(CurveFormula, RejectsImpossibleData) {
    EXPECT_THROW(curve_signed_weights(Rational(0), Rational(4)), InvalidFaceData);
    EXPECT_THROW(curve_signed_weights(Rational(1, 3), Rational(4)), InvalidFaceData);
    EXPECT_THROW(curve_signed_weights(Rational(1), Rational(2)), InvalidFaceData);
    EXPECT_THROW(curve_signed_weights(Rational(1), Rational(9)), InvalidFaceData);
}

// Oracle: f1 is twice the interior count and f0 is B - 1.
TEST(CurveFormula, MatchesLatticeCountsOnRandomPolygons) {
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 60) {
        std::vector<IntVec> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({static_cast<Int>(rng() % 9), static_cast<Int>(rng() % 9)});
        if (linalg::affine_rank(pts) < 2) continue;
        auto P = convex_hull(pts);
        auto f = curve_signed_weights(face_volumes(P));
        EXPECT_EQ(f.f[1], 2 * interior_points(P));
        EXPECT_EQ(f.f[0], boundary_points(P) - 1);
        EXPECT_EQ(f.total(), normalized_volume(P));
        ++done;
    }
}

TEST(SurfaceFormula, TotalsAreSixTimesVolume) {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 30) {
        std::vector<IntVec> pts;
        for (int i = 0; i < 7; ++i)
            pts.push_back({static_cast<Int>(rng() % 5), static_cast<Int>(rng() % 5), static_cast<Int>(rng() % 5)});
        if (linalg::affine_rank(pts) < 3) continue;
        auto P = convex_hull(pts);
        auto fv = face_volumes(P);
        auto f = surface_signed_weights(fv);
        EXPECT_EQ(f.total(), normalized_volume(P));
        // The G_m^4 vector is the same data shifted by two weights.
        auto e = gm4_e_vector(fv);
        EXPECT_EQ(e[4], f.f[2] + 3);
        EXPECT_EQ(e[3], f.f[1]);
        EXPECT_EQ(e[2], f.f[0] - 3);
        EXPECT_EQ(e[1], 0);
        EXPECT_EQ(e[0], 1);
        ++done;
    }
}

TEST(SurfaceFormula, UnitCube) {
    auto f = surface_signed_weights(face_volumes(prism({1, 1, 1})));
    EXPECT_EQ(f.f, (std::vector<Integer>{7, 0, -2, 0, 1}));
    EXPECT_THROW(surface_signed_weights(face_volumes(prism({1, 1}))), UnsupportedDimension);
}
