#pragma once

// Boundary bookkeeping for Newton polygons of curves f(x, y).
//
// A term x^i y^j is plotted at (j, i): the y-exponent runs horizontally.
// The lower chain S0 joins the lowest points of the first and last columns;
// Sinf is the lower chain of the reflection i -> -i, i.e. the upper chain
// read with flipped slopes.

#include <algorithm>
#include <limits>
#include <map>

#include "ntw/support.hpp"

namespace ntw {

struct ChainEdge {
    Int dj = 0;        // horizontal run (> 0)
    Int di = 0;        // vertical rise in the plotted (possibly reflected) picture
    Int volume = 0;    // lattice length gcd(dj, |di|)
    Rational slope;    // di / dj
};

struct SlopeData {
    std::vector<ChainEdge> S0;
    std::vector<ChainEdge> Sinf;
    Int n0 = 0;    // vertical extent of the first column
    Int ninf = 0;  // vertical extent of the last column

    Int volume_S0() const {
        Int s = 0;
        for (const auto& e : S0) s += e.volume;
        return s;
    }
    Int volume_Sinf() const {
        Int s = 0;
        for (const auto& e : Sinf) s += e.volume;
        return s;
    }
};

struct StratumCounts {
    Int n1 = 0;  // last column extent
    Int n2 = 0;  // zero-slope part of Sinf
    Int r1 = 0;  // positive-slope part of Sinf
    Int r2 = 0;  // negative-slope part of Sinf

    Int sum() const { return n1 + n2 + r1 + r2; }
};

/// Translates a two-variable support so both exponent minima are zero.
template <class Coeff>
MonomialSupport<Coeff> normalize(const MonomialSupport<Coeff>& f) {
    if (f.n() != 2) throw UnsupportedDimension("polygon routines need exactly two variables");
    auto e = f.exponents();
    if (linalg::affine_rank(e) < 2)
        throw DegenerateSupport("Newton polygon is a point or a segment");
    IntVec lo = e[0];
    for (const auto& v : e)
        for (int i = 0; i < 2; ++i) lo[i] = std::min(lo[i], v[i]);
    return f.translated({-lo[0], -lo[1]});
}

namespace detail {

// Lower convex chain of plotted points from the lowest point of the first
// column to the lowest point of the last column.
inline std::vector<ChainEdge> lower_chain(std::vector<std::pair<Int, Int>> pts) {
    const Int jmax = std::max_element(pts.begin(), pts.end())->first;
    Int last_low = std::numeric_limits<Int>::max();
    for (auto& [j, i] : pts)
        if (j == jmax) last_low = std::min(last_low, i);
    std::erase_if(pts, [&](const auto& p) { return p.first == jmax && p.second != last_low; });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::pair<Int, Int>> chain;
    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return static_cast<__int128>(a.first - o.first) * (b.second - o.second) -
               static_cast<__int128>(a.second - o.second) * (b.first - o.first);
    };
    for (const auto& p : pts) {
        while (chain.size() >= 2 && cross(chain[chain.size() - 2], chain.back(), p) <= 0) chain.pop_back();
        chain.push_back(p);
    }
    // Leading points stacked above the first vertex are not part of the chain.
    while (chain.size() >= 2 && chain[1].first == chain[0].first) chain.erase(chain.begin() + 1);
    std::vector<ChainEdge> edges;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        ChainEdge e;
        e.dj = chain[k + 1].first - chain[k].first;
        e.di = chain[k + 1].second - chain[k].second;
        e.volume = gcd_abs(e.dj, e.di);
        e.slope = Rational(static_cast<long>(e.di), static_cast<long>(e.dj));
        e.slope.canonicalize();
        edges.push_back(e);
    }
    return edges;
}

}  // namespace detail

template <class Coeff>
SlopeData slope_data(const MonomialSupport<Coeff>& f) {
    auto g = normalize(f);
    std::vector<std::pair<Int, Int>> plotted, reflected;
    Int jmax = 0;
    for (const auto& t : g.terms()) {
        plotted.emplace_back(t.exp[1], t.exp[0]);
        reflected.emplace_back(t.exp[1], -t.exp[0]);
        jmax = std::max(jmax, t.exp[1]);
    }
    SlopeData s;
    s.S0 = detail::lower_chain(plotted);
    s.Sinf = detail::lower_chain(reflected);
    auto column_extent = [&](Int j) {
        Int lo = std::numeric_limits<Int>::max(), hi = std::numeric_limits<Int>::min();
        for (const auto& [pj, pi] : plotted)
            if (pj == j) {
                lo = std::min(lo, pi);
                hi = std::max(hi, pi);
            }
        return hi - lo;
    };
    s.n0 = column_extent(0);
    s.ninf = column_extent(jmax);
    return s;
}

template <class Coeff>
StratumCounts stratum_counts(const MonomialSupport<Coeff>& f) {
    auto s = slope_data(f);
    StratumCounts c;
    c.n1 = s.ninf;
    for (const auto& e : s.Sinf) {
        if (e.slope > 0)
            c.r1 += e.volume;
        else if (e.slope == 0)
            c.n2 += e.volume;
        else
            c.r2 += e.volume;
    }
    return c;
}

}  // namespace ntw
