#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ntw/hodge_eulerian.hpp"

using namespace ntw;

namespace {

// Counts permutations of 0..n-1 by descents.
std::vector<Integer> descents_by_enumeration(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<Integer> counts(n, 0);
    do {
        int d = 0;
        for (int i = 0; i + 1 < n; ++i) d += perm[i] > perm[i + 1];
        counts[d] += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return counts;
}

// Plain O(n^2) convolution for cross-checking the packed product.
std::vector<Integer> naive_square(const std::vector<Integer>& a) {
    std::vector<Integer> out(2 * a.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out[i + j] += a[i] * a[j];
    return out;
}

// Interior points of kmP congruent to lambda, by scanning the bounding box.
Int brute_class_count(const LatticePolytope& P, Int k, Int m, const IntVec& lambda) {
    auto lo = bounding_box_lo(P), hi = bounding_box_hi(P);
    const int n = P.dim();
    Int count = 0;
    IntVec x(n);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            for (const auto& f : P.facets()) {
                Integer v = linalg::dot(f.normal, x);
                if (!(v < Integer(static_cast<long>(f.offset * k * m)))) return;
            }
            for (int j = 0; j < n; ++j)
                if (detail::mod_floor(x[j] - lambda[j], m) != 0) return;
            ++count;
            return;
        }
        for (Int v = lo[i] * k * m; v <= hi[i] * k * m; ++v) {
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

}  // namespace

TEST(Eulerian, SmallValues) {
    EXPECT_EQ(eulerian_number(3, 1), 4);
    EXPECT_EQ(eulerian_number(4, 1), 11);
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(eulerian_number(n, 0), 1);
    EXPECT_THROW(eulerian_number(3, 3), InvalidInput);
}

TEST(Eulerian, RecurrenceMatchesClosedFormAndPermutations) {
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(eulerian_row(n), descents_by_enumeration(n)) << n;
    for (int n = 1; n <= 40; ++n) {
        auto row = eulerian_row(n);
        for (int k = 0; k < n; ++k) EXPECT_EQ(row[k], eulerian_number_closed(n, k));
    }
    std::vector<Integer> stepped{1};
    for (int n = 2; n <= 30; ++n) eulerian_step(stepped);
    EXPECT_EQ(stepped, eulerian_row(30));
}

TEST(EulerianDistribution, SmallCase) {
    auto d = eulerian_distribution_exact(2);
    EXPECT_EQ(d.beta(-1), Rational(1, 4));
    EXPECT_EQ(d.beta(0), Rational(1, 2));
    EXPECT_EQ(d.beta(1), Rational(1, 4));
    EXPECT_EQ(d.beta(5), 0);
}

TEST(EulerianDistribution, PackedProductMatchesNaive) {
    for (int n : {1, 3, 17, 64, 150}) {
        auto row = eulerian_row(n);
        auto d = eulerian_distribution_exact(n);
        auto ref = naive_square(row);
        ASSERT_EQ(d.weight.size(), ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(d.weight[i], Rational(ref[i])) << n << " " << i;
    }
}

TEST(EulerianDistribution, ProbabilityAxioms) {
    for (int n : {1, 5, 30, 101}) {
        auto d = eulerian_distribution_exact(n);
        Rational s = 0;
        for (int p = -(n - 1); p <= n - 1; ++p) {
            EXPECT_GE(d.beta(p), 0);
            EXPECT_EQ(d.beta(p), d.beta(-p));
            s += d.beta(p);
        }
        EXPECT_EQ(s, 1);
    }
}

TEST(EulerianDistribution, FloatTracksExact) {
    for (int n : {2, 40, 300}) {
        auto e = eulerian_distribution_exact(n);
        auto f = eulerian_distribution_float(n);
        for (int p = -(n - 1); p <= n - 1; ++p) EXPECT_NEAR(f.beta(p), e.beta(p).get_d(), 1e-12);
    }
    EXPECT_THROW(eulerian_distribution_exact(2001), UnsupportedN);
    EXPECT_THROW(eulerian_distribution_float(50001), UnsupportedN);
}

TEST(EulerianDistribution, MomentBounds) {
    for (int n = 2; n <= 120; ++n) {
        auto m = eulerian_moments(eulerian_distribution_exact(n));
        auto c = check_eulerian_bounds(m, n);
        EXPECT_TRUE(c.beta0_bound) << n;
        EXPECT_TRUE(c.first_moment_bound) << n;
        EXPECT_TRUE(c.second_moment_bound) << n;
        EXPECT_TRUE(c.second_moment_equality) << n;
    }
    auto m100 = eulerian_moments(eulerian_distribution_exact(100));
    EXPECT_LE(m100.beta0 * m100.beta0 * 104, 3);
}

TEST(Hodge, UnitSquareClasses) {
    auto P = prism({1, 1});
    auto a = hodge_numbers(P, 2, {1, 1});
    EXPECT_EQ(a.h, (std::vector<Int>{1, 1}));
    auto b = hodge_numbers(P, 2, {0, 1});
    EXPECT_EQ(b.h, (std::vector<Int>{0, 2}));
    for (IntVec lam : {IntVec{1, 0}, IntVec{1, 1}, IntVec{0, 1}})
        EXPECT_EQ(hodge_numbers(P, 2, lam).total(), 2);
}

TEST(Hodge, ClassCountsMatchBoxScan) {
    auto P = convex_hull({{0, 0}, {3, 1}, {1, 2}});
    for (Int m = 1; m <= 3; ++m)
        for (Int l0 = 0; l0 < m; ++l0)
            for (Int l1 = 0; l1 < m; ++l1)
                for (Int k = 1; k <= 2; ++k)
                    EXPECT_EQ(interior_points_in_class(P, k, m, {l0, l1}), brute_class_count(P, k, m, {l0, l1}));
}

TEST(Hodge, TrivialModulusGivesFullCounts) {
    // Cube of side 2: interior counts 1, 27, 125 for the first three dilations.
    auto P = prism({2, 2, 2});
    auto raw = alternating_class_counts(P, 1, {0, 0, 0});
    EXPECT_EQ(raw, (std::vector<Int>{1, 23, 23}));
    auto t = hodge_numbers(P, 1, {0, 0, 0});
    EXPECT_TRUE(t.corrected);
    EXPECT_EQ(t.h, (std::vector<Int>{4, 20, 24}));
    EXPECT_EQ(t.total(), normalized_volume(P));
}

// Summing the raw alternating counts over all classes gives the class-free count
// at modulus one for the dilated polytope.
TEST(Hodge, ClassPartitionIdentity) {
    std::mt19937_64 rng(5);
    int done = 0;
    while (done < 12) {
        const int n = 2 + static_cast<int>(rng() % 2);
        std::vector<IntVec> pts;
        for (int i = 0; i < n + 2; ++i) {
            IntVec p(n);
            for (auto& c : p) c = static_cast<Int>(rng() % 3);
            pts.push_back(p);
        }
        if (linalg::affine_rank(pts) < n) continue;
        auto P = convex_hull(pts);
        const Int m = 1 + static_cast<Int>(rng() % 3);
        std::vector<Int> sum(n, 0);
        IntVec lam(n, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == n) {
                auto h = alternating_class_counts(P, m, lam);
                for (int q = 0; q < n; ++q) sum[q] += h[q];
                return;
            }
            for (Int v = 0; v < m; ++v) {
                lam[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
        std::vector<IntVec> scaled_pts;
        for (auto p : P.vertices()) {
            for (auto& c : p) c *= m;
            scaled_pts.push_back(p);
        }
        auto whole = alternating_class_counts(convex_hull(scaled_pts), 1, IntVec(n, 0));
        EXPECT_EQ(sum, whole);
        ++done;
    }
}

TEST(Hodge, NegativeEntriesAreRejected) {
    // The trivial class of the unit square is not generic: raw counts (0, 1),
    // corrected (-2, 2).
    auto P = prism({1, 1});
    EXPECT_THROW(hodge_numbers(P, 1, {0, 0}), NegativeHodgeNumber);
    EXPECT_THROW(hodge_numbers(P, 2, {0, 0}), NegativeHodgeNumber);
    EXPECT_EQ(hodge_numbers(P, 2, {0, 0}, TorusCorrection::none).h, (std::vector<Int>{0, 1}));
}

TEST(Adjoint, ConvolutionExamples) {
    std::vector<Rational> h{1, 2, 1};
    auto a = adjoint_hodge(h, Group::GL);
    EXPECT_EQ(a.ha, (std::vector<Rational>{Rational(1, 2), 2, 3, 2, Rational(1, 2)}));
    auto one = adjoint_hodge(std::vector<Rational>{1}, Group::GL);
    EXPECT_EQ(one.at(0), Rational(1, 2));
    auto go = adjoint_hodge(h, Group::GO, +1);
    EXPECT_EQ(go.ha, (std::vector<Rational>{1, 2, 4, 2, 1}));
    auto go_minus = adjoint_hodge(h, Group::GO, -1);
    EXPECT_EQ(go_minus.ha, (std::vector<Rational>{0, 2, 2, 2, 0}));
    EXPECT_THROW(adjoint_hodge(std::vector<Rational>{1, -1}, Group::GL), InvalidInput);
}

TEST(Adjoint, SymmetryAndTotal) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        std::vector<Rational> h(n);
        Rational s = 0;
        for (auto& x : h) {
            x = static_cast<long>(rng() % 10);
            s += x;
        }
        for (int q = 0; q < n; ++q) h[n - 1 - q] = h[q];
        s = 0;
        for (auto& x : h) s += x;
        auto a = adjoint_hodge(h, Group::GL);
        for (int p = 0; p < n; ++p) EXPECT_EQ(a.at(p), a.at(-p));
        EXPECT_EQ(2 * a.total(), s * s);
        for (int sign : {+1, -1}) {
            auto g = adjoint_hodge(h, Group::GO, sign);
            for (int p = 0; p < n; ++p) EXPECT_EQ(g.at(p), g.at(-p));
            EXPECT_EQ(2 * g.total(), s * s + sign * s);
        }
    }
}

TEST(TG, GreedySelection) {
    AdjointHodgeVector<Rational> a;
    a.n = 2;
    a.ha = {2, 3, 2};
    EXPECT_EQ(t_g(a, Rational(3)), 2);
    EXPECT_EQ(t_g(a, Rational(0)), 0);
    EXPECT_EQ(t_g(a, Rational(5, 2)), 2);
    Rational prev = 0;
    for (int k = 0; k <= 7; ++k) {
        Rational v = t_g(a, Rational(k));
        EXPECT_GE(v, prev - 1);  // adding a weight of -1 lowers the sum by at most one
        prev = v;
    }
    EXPECT_THROW(t_g(a, Rational(8)), InsufficientMultiplicity);
}

TEST(Conditions, SimplifiedFailsAtSmallN) {
    auto a = adjoint_from_distribution(eulerian_distribution_exact(100));
    auto r = check_conditions(a, Rational(1), ConditionMode::simplified);
    ASSERT_EQ(r.inequalities.size(), 1u);
    EXPECT_FALSE(r.holds);
    EXPECT_LT(r.inequalities[0].lhs, r.inequalities[0].rhs);
}

TEST(Conditions, SimplifiedHoldsAtPublishedThreshold) {
    auto a = adjoint_from_distribution(eulerian_distribution_float(13000));
    auto r = check_conditions(a, 1.0, ConditionMode::simplified);
    EXPECT_TRUE(r.holds) << r.inequalities[0].lhs << " vs " << r.inequalities[0].rhs;
}

TEST(Conditions, FullModeReportsBothInequalities) {
    std::vector<Rational> h{1, 4, 1};
    auto a = adjoint_hodge(h, Group::GL);
    auto r = check_conditions(a, Rational(3), ConditionMode::full);
    ASSERT_EQ(r.inequalities.size(), 2u);
    EXPECT_EQ(r.inequalities[0].lhs, a.at(1) + a.at(2));
    EXPECT_EQ(r.inequalities[0].rhs, 3 + a.at(0));
    auto big = check_conditions(a, Rational(100), ConditionMode::full);
    EXPECT_FALSE(big.holds);
    EXPECT_FALSE(big.inequalities[1].note.empty());
}

TEST(Conditions, AnalyticPath) {
    EXPECT_TRUE(analytic_condition_check(500000, Group::GO).holds);
    EXPECT_FALSE(analytic_condition_check(20000, Group::GO).holds);
    EXPECT_FALSE(analytic_condition_check(100, Group::GL).holds);
}

TEST(Asymptotics, DeviationShrinksAlongLadder) {
    double prev = 1e9;
    for (Int s : {4, 6, 8}) {
        auto P = truncated_prism({s, s + 1, s + 2}, {1, 1, 1});
        auto t = hodge_numbers(P, 2, {1, 1, 1});
        double dev = eulerian_deviation(t, P);
        EXPECT_LE(dev, prev + 1e-12) << s;
        prev = dev;
    }
}
