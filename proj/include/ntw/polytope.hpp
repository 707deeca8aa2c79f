#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ntw/hull.hpp"

namespace ntw {

struct Face {
    int dim = 0;
    std::vector<int> vertices;  // sorted indices into LatticePolytope::vertices()
};

struct Facet {
    IntVec normal;  // primitive, outward
    Int offset = 0; // normal . x <= offset on the polytope
    std::vector<int> vertices;
};

/// Lattice-relative face volumes: U[d] is the sum over d-faces of the
/// volume measured in the lattice of the face's affine hull.
struct FaceVolumes {
    int dim = 0;
    std::vector<Rational> U;
    long V = 0, E = 0, F = 0;  // vertex, edge and 2-face counts
    long W1 = 0;               // sum over vertices of incident facet counts
};

/// Convex hull of finitely many lattice points.
///
/// Full-dimensional hulls carry an inequality description; every hull of
/// ambient dimension at most six also carries its face lattice.  Family
/// constructors in higher dimension build vertices, facets and volume only.
class LatticePolytope {
public:
    LatticePolytope() = default;

    int dim() const { return dim_; }
    int affine_dim() const { return affine_dim_; }
    bool full_dimensional() const { return affine_dim_ == dim_; }
    bool has_face_lattice() const { return !faces_.empty(); }

    const std::vector<IntVec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    const std::vector<Face>& faces(int d) const {
        if (!has_face_lattice()) throw UnsupportedDimension("face lattice not available");
        if (d < 0 || d > affine_dim_) throw InvalidInput("face dimension out of range");
        return faces_[static_cast<std::size_t>(d)];
    }

    /// Boundary triangulation used for volumes (vertex indices).
    const std::vector<std::vector<int>>& boundary_simplices() const { return simplices_; }

    const std::optional<Integer>& cached_normalized_volume() const { return volume_; }

    bool contains(const IntVec& x) const {
        for (const auto& f : facets_)
            if (linalg::dot(f.normal, x) > f.offset) return false;
        return true;
    }

    friend LatticePolytope convex_hull(const std::vector<IntVec>&, bool);
    friend LatticePolytope from_halfspaces(int, std::vector<IntVec>, std::vector<Facet>, Integer);

private:
    int dim_ = 0;
    int affine_dim_ = -1;
    std::vector<IntVec> vertices_;
    std::vector<Facet> facets_;
    std::vector<std::vector<Face>> faces_;
    std::vector<std::vector<int>> simplices_;
    std::optional<Integer> volume_;
};

namespace detail {

inline constexpr int kMaxLatticeDim = 6;

// Rebuilds lower-dimensional faces by pairwise intersection: a (k-1)-face is
// the intersection of any two distinct k-faces containing it.
inline std::vector<std::vector<Face>> build_face_lattice(const std::vector<IntVec>& verts,
                                                         const std::vector<std::vector<int>>& facet_sets,
                                                         int dim) {
    std::vector<std::vector<Face>> faces(static_cast<std::size_t>(dim) + 1);
    std::vector<int> all(verts.size());
    std::iota(all.begin(), all.end(), 0);
    faces[dim].push_back({dim, all});
    if (dim == 0) return faces;
    auto rank_of = [&](const std::vector<int>& ids) {
        std::vector<IntVec> p;
        for (int i : ids) p.push_back(verts[i]);
        return linalg::affine_rank(p);
    };
    std::set<std::vector<int>> level(facet_sets.begin(), facet_sets.end());
    for (int k = dim - 1; k >= 0; --k) {
        for (const auto& s : level) faces[k].push_back({k, s});
        if (k == 0) break;
        std::vector<std::vector<int>> cur(level.begin(), level.end());
        std::set<std::vector<int>> below;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<int> inter;
                std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                                      std::back_inserter(inter));
                if (inter.empty() || below.count(inter)) continue;
                if (rank_of(inter) == k - 1) below.insert(inter);
            }
        }
        level = std::move(below);
    }
    return faces;
}

}  // namespace detail

/// Builds the hull of `points`.  Lower-dimensional input raises DegenerateHull
/// unless `allow_lower_dim` is set.
inline LatticePolytope convex_hull(const std::vector<IntVec>& points, bool allow_lower_dim = false) {
    if (points.empty()) throw DegenerateHull("empty point set");
    const std::size_t n = points[0].size();
    for (const auto& p : points)
        if (p.size() != n) throw InvalidInput("points of mixed dimension");
    if (n == 0) throw UnsupportedDimension("ambient dimension must be positive");
    if (n > static_cast<std::size_t>(detail::kMaxLatticeDim))
        throw UnsupportedDimension("convex hull supports ambient dimension up to 6");

    LatticePolytope P;
    P.dim_ = static_cast<int>(n);
    const int k = linalg::affine_rank(points);
    P.affine_dim_ = k;
    if (k < static_cast<int>(n) && !allow_lower_dim)
        throw DegenerateHull("points span an affine subspace of dimension " + std::to_string(k));

    if (k == 0) {
        P.vertices_ = {points[0]};
        P.faces_ = {{Face{0, {0}}}};
        return P;
    }

    // Work in lattice coordinates of the affine hull, then map back.
    std::vector<IntVec> local = points;
    if (k < static_cast<int>(n)) {
        std::vector<IntVec> diffs;
        for (const auto& p : points) diffs.push_back(hull::detail::sub(p, points[0]));
        auto basis = linalg::saturated_span_basis(diffs, n);
        local.clear();
        for (const auto& d : diffs) {
            auto c = linalg::coordinates(basis, d);
            IntVec z;
            for (auto& x : c) z.push_back(to_int(x.get_num()));
            local.push_back(z);
        }
    }
    hull::Hull h = hull::full_dim_hull(local);

    std::map<int, int> remap;
    for (int v : h.vertices) {
        remap[v] = static_cast<int>(P.vertices_.size());
        P.vertices_.push_back(points[v]);
    }
    auto mapped = [&](const std::vector<int>& ids) {
        std::vector<int> r;
        for (int i : ids) r.push_back(remap.at(i));
        std::sort(r.begin(), r.end());
        return r;
    };
    std::vector<std::vector<int>> facet_sets;
    for (const auto& f : h.facets) {
        facet_sets.push_back(mapped(f.vertices));
        if (k == static_cast<int>(n)) P.facets_.push_back({f.normal, f.offset, facet_sets.back()});
    }
    for (const auto& s : h.simplices) {
        std::vector<int> r;
        for (int i : s) r.push_back(remap.at(i));
        P.simplices_.push_back(r);
    }
    P.faces_ = detail::build_face_lattice(P.vertices_, facet_sets, k);
    if (k == static_cast<int>(n)) P.volume_ = hull::normalized_volume(local, h);
    return P;
}

/// Assembles a polytope from a known vertex and inequality description
/// (used by family constructors beyond the face-lattice dimension limit).
inline LatticePolytope from_halfspaces(int dim, std::vector<IntVec> vertices, std::vector<Facet> facets,
                                       Integer normalized_volume) {
    LatticePolytope P;
    P.dim_ = dim;
    P.affine_dim_ = dim;
    P.vertices_ = std::move(vertices);
    for (auto& f : facets) {
        f.vertices.clear();
        for (std::size_t v = 0; v < P.vertices_.size(); ++v)
            if (linalg::dot(f.normal, P.vertices_[v]) == f.offset) f.vertices.push_back(static_cast<int>(v));
    }
    P.facets_ = std::move(facets);
    P.volume_ = std::move(normalized_volume);
    return P;
}

/// n! times the Euclidean volume; an integer for lattice polytopes.
inline Integer normalized_volume(const LatticePolytope& P) {
    if (!P.full_dimensional()) throw DegenerateHull("volume requires a full-dimensional polytope");
    return *P.cached_normalized_volume();
}

/// Volume of a face measured in the lattice of its own affine hull.
inline Rational relative_volume(const LatticePolytope& P, const Face& face) {
    if (face.dim == 0) return 1;
    std::vector<IntVec> pts;
    for (int v : face.vertices) pts.push_back(P.vertices()[v]);
    if (face.dim == 1) {
        return content(hull::detail::sub(pts[1], pts[0]));
    }
    std::vector<IntVec> local = pts;
    if (face.dim < P.dim()) {
        std::vector<IntVec> diffs;
        for (const auto& p : pts) diffs.push_back(hull::detail::sub(p, pts[0]));
        auto basis = linalg::saturated_span_basis(diffs, static_cast<std::size_t>(P.dim()));
        local.clear();
        for (const auto& d : diffs) {
            IntVec z;
            for (auto& x : linalg::coordinates(basis, d)) z.push_back(to_int(x.get_num()));
            local.push_back(z);
        }
    }
    auto h = hull::full_dim_hull(local);
    Rational vol(hull::normalized_volume(local, h), factorial(static_cast<unsigned>(face.dim)));
    vol.canonicalize();
    return vol;
}

inline FaceVolumes face_volumes(const LatticePolytope& P) {
    if (P.dim() > 4) throw UnsupportedDimension("face volumes are supported up to dimension 4");
    if (!P.full_dimensional()) throw DegenerateHull("face volumes require a full-dimensional polytope");
    FaceVolumes out;
    out.dim = P.dim();
    for (int d = 0; d <= P.dim(); ++d) {
        Rational s = 0;
        if (d == P.dim())
            s = Rational(normalized_volume(P), factorial(static_cast<unsigned>(d)));
        else
            for (const auto& f : P.faces(d)) s += relative_volume(P, f);
        s.canonicalize();
        out.U.push_back(s);
    }
    out.V = static_cast<long>(P.faces(0).size());
    out.E = static_cast<long>(P.faces(1).size());
    out.F = P.dim() >= 2 ? static_cast<long>(P.faces(2).size()) : 0;
    for (const auto& f : P.facets()) out.W1 += static_cast<long>(f.vertices.size());
    return out;
}

inline std::vector<Int> bounding_box_lo(const LatticePolytope& P) {
    IntVec lo = P.vertices()[0];
    for (const auto& v : P.vertices())
        for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], v[i]);
    return lo;
}

inline std::vector<Int> bounding_box_hi(const LatticePolytope& P) {
    IntVec hi = P.vertices()[0];
    for (const auto& v : P.vertices())
        for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = std::max(hi[i], v[i]);
    return hi;
}

// ---------------------------------------------------------------------------
// Families

namespace detail {

inline void require_positive(const IntVec& v, const char* what) {
    if (v.empty()) throw InvalidInput(std::string(what) + " must be non-empty");
    for (Int x : v)
        if (x <= 0) throw InvalidInput(std::string(what) + " must be positive");
}

inline std::vector<IntVec> box_vertices(const IntVec& sides) {
    const std::size_t n = sides.size();
    std::vector<IntVec> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        IntVec v(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) v[i] = sides[i];
        out.push_back(v);
    }
    return out;
}

inline std::vector<Facet> box_facets(const IntVec& sides) {
    std::vector<Facet> out;
    const std::size_t n = sides.size();
    for (std::size_t i = 0; i < n; ++i) {
        IntVec lo(n, 0), hi(n, 0);
        lo[i] = -1;
        hi[i] = 1;
        out.push_back({lo, 0, {}});
        out.push_back({hi, sides[i], {}});
    }
    return out;
}

}  // namespace detail

/// Lattice box [0,a_1] x ... x [0,a_n].
inline LatticePolytope prism(const IntVec& sides) {
    detail::require_positive(sides, "prism sides");
    if (sides.size() <= 4) return convex_hull(detail::box_vertices(sides));
    Integer vol = factorial(static_cast<unsigned>(sides.size()));
    for (Int a : sides) vol *= static_cast<long>(a);
    return from_halfspaces(static_cast<int>(sides.size()), detail::box_vertices(sides),
                           detail::box_facets(sides), vol);
}

/// Box with sides b whose origin corner is cut off by the simplex with legs a.
inline LatticePolytope truncated_prism(const IntVec& sides, const IntVec& corner) {
    detail::require_positive(sides, "truncated prism sides");
    detail::require_positive(corner, "truncated prism corner");
    if (sides.size() != corner.size()) throw InvalidInput("sides and corner differ in length");
    const std::size_t n = sides.size();
    for (std::size_t i = 0; i < n; ++i)
        if (corner[i] >= sides[i]) throw InvalidInput("corner legs must be shorter than the sides");
    auto verts = detail::box_vertices(sides);
    verts.erase(verts.begin());  // the origin
    for (std::size_t i = 0; i < n; ++i) {
        IntVec v(n, 0);
        v[i] = corner[i];
        verts.push_back(v);
    }
    if (n <= 4) return convex_hull(verts);
    Integer l = 1;
    for (Int a : corner) l = lcm(l, Integer(static_cast<long>(a)));
    IntVec normal;
    for (Int a : corner) normal.push_back(-to_int(Integer(l / static_cast<long>(a))));
    auto facets = detail::box_facets(sides);
    facets.push_back({normal, -to_int(l), {}});
    Integer vol = factorial(static_cast<unsigned>(n)), cut = 1;
    for (Int b : sides) vol *= static_cast<long>(b);
    for (Int a : corner) cut *= static_cast<long>(a);
    return from_halfspaces(static_cast<int>(n), verts, facets, vol - cut);
}

/// Pyramid over the rectangle {0} x [0,a] x [0,b] with apex (-c, d, e).
inline LatticePolytope pyramid(Int a, Int b, Int c, Int d, Int e) {
    if (a < 1 || b < 1 || c < 1) throw InvalidInput("pyramid parameters must be positive");
    return convex_hull({{0, 0, 0}, {0, a, 0}, {0, 0, b}, {0, a, b}, {-c, d, e}});
}

}  // namespace ntw
