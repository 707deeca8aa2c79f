#pragma once

// Exact convex hulls of full-dimensional lattice point sets.
//
// Dimension 1 and 2 use direct methods.  Higher dimensions use an
// incremental beneath-beyond construction that keeps a simplicial boundary
// complex; coplanar simplices are merged into facets afterwards.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ntw/linalg.hpp"

namespace ntw::hull {

/// A facet as the inequality normal . x <= offset with a primitive normal.
struct Halfspace {
    IntVec normal;
    Int offset = 0;
    std::vector<int> vertices;  // indices into the point list, sorted
};

struct Hull {
    std::vector<int> vertices;                 // extreme points, indices into input
    std::vector<Halfspace> facets;             // vertex ids refer to the input list
    std::vector<std::vector<int>> simplices;   // boundary (d-1)-simplices on extreme points
};

namespace detail {

inline IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Integer cross2(const IntVec& o, const IntVec& a, const IntVec& b) {
    return Integer(static_cast<long>(a[0] - o[0])) * static_cast<long>(b[1] - o[1]) -
           Integer(static_cast<long>(a[1] - o[1])) * static_cast<long>(b[0] - o[0]);
}

inline Hull hull_1d(const std::vector<IntVec>& pts) {
    int lo = 0, hi = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
        if (pts[i][0] < pts[lo][0]) lo = i;
        if (pts[i][0] > pts[hi][0]) hi = i;
    }
    Hull h;
    h.vertices = {std::min(lo, hi), std::max(lo, hi)};
    h.facets.push_back({IntVec{-1}, -pts[lo][0], {lo}});
    h.facets.push_back({IntVec{1}, pts[hi][0], {hi}});
    h.simplices = {{lo}, {hi}};
    return h;
}

// Counter-clockwise vertex cycle without collinear points.
inline Hull hull_2d(const std::vector<IntVec>& pts) {
    std::vector<int> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    idx.erase(std::unique(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] == pts[b]; }),
              idx.end());
    std::vector<int> chain(2 * idx.size());
    std::size_t k = 0;
    for (int i : idx) {
        while (k >= 2 && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= 0) --k;
        chain[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
        int i = idx[t];
        while (k >= lower && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= 0) --k;
        chain[k++] = i;
    }
    chain.resize(k - 1);
    Hull h;
    h.vertices = chain;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        int a = chain[i], b = chain[(i + 1) % chain.size()];
        IntVec e = sub(pts[b], pts[a]);
        Int g = gcd_abs(e[0], e[1]);
        IntVec normal{e[1] / g, -e[0] / g};
        Int offset = normal[0] * pts[a][0] + normal[1] * pts[a][1];
        h.facets.push_back({normal, offset, {std::min(a, b), std::max(a, b)}});
        h.simplices.push_back({a, b});
    }
    return h;
}

struct SimplexFacet {
    std::vector<int> ids;  // sorted
    IntVec normal;
    Integer offset;
};

inline std::vector<SimplexFacet> beneath_beyond(const std::vector<IntVec>& pts,
                                                const std::vector<int>& order) {
    const std::size_t d = pts[0].size();
    // Initial simplex: greedily extend an affinely independent set.
    std::vector<int> base{order[0]};
    std::vector<IntVec> diffs;
    for (std::size_t t = 1; t < order.size() && base.size() < d + 1; ++t) {
        auto trial = diffs;
        trial.push_back(sub(pts[order[t]], pts[base[0]]));
        if (linalg::rank(trial) == trial.size()) {
            diffs = std::move(trial);
            base.push_back(order[t]);
        }
    }
    if (base.size() != d + 1) throw DegenerateHull("point set is not full-dimensional");

    // Interior reference point, scaled by d+1 to stay integral.
    IntVec centre(d, 0);
    for (int b : base)
        for (std::size_t k = 0; k < d; ++k) centre[k] += pts[b][k];
    const long scale = static_cast<long>(d + 1);

    auto make_facet = [&](std::vector<int> ids) {
        std::sort(ids.begin(), ids.end());
        std::vector<IntVec> p;
        for (int i : ids) p.push_back(pts[i]);
        SimplexFacet f{ids, linalg::hyperplane_normal(p), 0};
        f.offset = linalg::dot(f.normal, pts[ids[0]]);
        if (linalg::dot(f.normal, centre) > f.offset * scale) {
            for (auto& x : f.normal) x = -x;
            f.offset = -f.offset;
        }
        return f;
    };

    std::vector<SimplexFacet> facets;
    for (std::size_t skip = 0; skip <= d; ++skip) {
        std::vector<int> ids;
        for (std::size_t i = 0; i <= d; ++i)
            if (i != skip) ids.push_back(base[i]);
        facets.push_back(make_facet(ids));
    }

    std::set<int> used(base.begin(), base.end());
    for (int p : order) {
        if (used.count(p)) continue;
        used.insert(p);
        std::vector<bool> visible(facets.size());
        bool any = false;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            visible[f] = linalg::dot(facets[f].normal, pts[p]) > facets[f].offset;
            any = any || visible[f];
        }
        if (!any) continue;
        std::map<std::vector<int>, int> ridge_count;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (!visible[f]) continue;
            for (std::size_t drop = 0; drop < d; ++drop) {
                std::vector<int> r;
                for (std::size_t i = 0; i < d; ++i)
                    if (i != drop) r.push_back(facets[f].ids[i]);
                ++ridge_count[r];
            }
        }
        std::vector<SimplexFacet> next;
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (!visible[f]) next.push_back(std::move(facets[f]));
        for (auto& [ridge, count] : ridge_count) {
            if (count != 1) continue;
            auto ids = ridge;
            ids.push_back(p);
            next.push_back(make_facet(ids));
        }
        facets = std::move(next);
    }
    return facets;
}

inline Hull hull_nd(const std::vector<IntVec>& pts) {
    const std::size_t d = pts[0].size();
    std::vector<int> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    // Drop duplicates so that every surviving index is a distinct point.
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](int a, int b) { return pts[a] == pts[b]; }),
                order.end());

    auto first = beneath_beyond(pts, order);
    std::map<std::pair<IntVec, Integer>, bool> planes;
    for (auto& f : first) planes[{f.normal, f.offset}] = true;

    // A point is extreme when the facet normals through it have full rank.
    std::vector<int> extreme;
    for (int p : order) {
        std::vector<IntVec> normals;
        for (auto& [key, unused] : planes)
            if (linalg::dot(key.first, pts[p]) == key.second) normals.push_back(key.first);
        if (linalg::rank(normals) == d) extreme.push_back(p);
    }

    Hull h;
    h.vertices = extreme;
    std::sort(h.vertices.begin(), h.vertices.end());
    for (auto& [key, unused] : planes) {
        Halfspace hs{key.first, to_int(key.second), {}};
        for (int v : h.vertices)
            if (linalg::dot(hs.normal, pts[v]) == key.second) hs.vertices.push_back(v);
        h.facets.push_back(std::move(hs));
    }
    for (auto& f : beneath_beyond(pts, extreme)) h.simplices.push_back(f.ids);
    return h;
}

}  // namespace detail

/// Hull of a full-dimensional point set in Z^d (d >= 1).
inline Hull full_dim_hull(const std::vector<IntVec>& pts) {
    if (pts.empty()) throw DegenerateHull("empty point set");
    const std::size_t d = pts[0].size();
    if (d == 0) throw UnsupportedDimension("ambient dimension must be positive");
    if (linalg::affine_rank(pts) != static_cast<int>(d))
        throw DegenerateHull("point set is not full-dimensional");
    if (d == 1) return detail::hull_1d(pts);
    if (d == 2) return detail::hull_2d(pts);
    return detail::hull_nd(pts);
}

/// d! times the Euclidean volume, summed over the cone from the first vertex.
inline Integer normalized_volume(const std::vector<IntVec>& pts, const Hull& h) {
    const std::size_t d = pts[0].size();
    const IntVec& apex = pts[h.vertices.front()];
    Integer total = 0;
    for (const auto& s : h.simplices) {
        if (d == 1) {
            total += std::abs(pts[s[0]][0] - apex[0]);
            continue;
        }
        std::vector<IntVec> rows;
        for (int i : s) rows.push_back(detail::sub(pts[i], apex));
        total += abs(linalg::determinant(linalg::to_z(rows)));
    }
    return total;
}

}  // namespace ntw::hull
