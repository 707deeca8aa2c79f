#pragma once

// Weight multiplicities of surfaces {f = 0} in G_m^3 assembled over the
// stratification of (P^1)^3 by coordinate type G_m / infinity / zero.
//
// Strata with a zero coordinate never contribute.  The remaining strata are:
//   * the open torus, through the face-data formula;
//   * one coordinate at infinity: the face of the Newton polytope maximizing
//     that coordinate is a polygon (lifted curve), an edge (G_m lines) or a
//     vertex (nothing);
//   * two coordinates at infinity: the two extremal faces meet in nothing
//     (a full line), a vertex (nothing) or an edge (isolated points).
// Corners whose first coordinate is infinite must avoid the closure, i.e.
// the matching extreme point has to be a vertex of the Newton polytope.

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ntw/curve_weights.hpp"
#include "ntw/denef_loeser.hpp"

namespace ntw {

enum class CoordType { torus, infinity, zero };

enum class StratumKind { codim0, facet_curve, edge_lines, full_line, edge_points, zero_coordinate, empty };

inline const char* to_string(StratumKind k) {
    switch (k) {
        case StratumKind::codim0: return "codim0";
        case StratumKind::facet_curve: return "facet_curve";
        case StratumKind::edge_lines: return "edge_lines";
        case StratumKind::full_line: return "full_line";
        case StratumKind::edge_points: return "edge_points";
        case StratumKind::zero_coordinate: return "zero_coordinate";
        case StratumKind::empty: return "empty";
    }
    return "?";
}

using Stratum = std::array<CoordType, 3>;

inline std::string to_string(const Stratum& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < 3; ++i) {
        if (i) out += ",";
        out += s[i] == CoordType::torus ? "Gm" : s[i] == CoordType::infinity ? "inf" : "0";
    }
    return out + ")";
}

struct StratumContribution {
    Stratum stratum{};
    StratumKind kind = StratumKind::empty;
    SignedWeightVector weights;  // five entries, weights 0..4
    Int multiplicity = 0;        // edge length for line/point strata
};

struct SurfaceAssembly {
    std::vector<StratumContribution> contributions;
    WeightVector weights;
};

namespace detail {

inline SignedWeightVector zero_surface_vector() { return {3, std::vector<Integer>(5, 0)}; }

// Vertices of P attaining the extreme value of every fixed coordinate.
inline std::vector<int> extremal_vertices(const LatticePolytope& P, const Stratum& s) {
    const auto& V = P.vertices();
    std::vector<int> ids;
    for (std::size_t v = 0; v < V.size(); ++v) ids.push_back(static_cast<int>(v));
    for (std::size_t k = 0; k < 3; ++k) {
        if (s[k] == CoordType::torus) continue;
        Int best = V[0][k];
        for (const auto& p : V) best = s[k] == CoordType::infinity ? std::max(best, p[k]) : std::min(best, p[k]);
        std::vector<int> keep;
        for (int v : ids)
            if (V[v][k] == best) keep.push_back(v);
        ids = std::move(keep);
    }
    return ids;
}

inline Face face_from(const LatticePolytope& P, const std::vector<int>& ids) {
    std::vector<IntVec> pts;
    for (int v : ids) pts.push_back(P.vertices()[v]);
    return {linalg::affine_rank(pts), ids};
}

// Extremal faces in the Newton polytope are intersections of coordinate
// supporting planes; unlike general faces they may be empty.
inline std::vector<int> joint_face(const LatticePolytope& P, const Stratum& s) {
    std::vector<int> joint;
    bool first = true;
    for (std::size_t k = 0; k < 3; ++k) {
        if (s[k] == CoordType::torus) continue;
        Stratum single{CoordType::torus, CoordType::torus, CoordType::torus};
        single[k] = s[k];
        auto ids = extremal_vertices(P, single);
        if (first) {
            joint = ids;
            first = false;
        } else {
            std::vector<int> inter;
            std::set_intersection(joint.begin(), joint.end(), ids.begin(), ids.end(), std::back_inserter(inter));
            joint = std::move(inter);
        }
    }
    return joint;
}

inline SignedWeightVector scaled(std::vector<long> base, Int L) {
    SignedWeightVector v = zero_surface_vector();
    for (std::size_t i = 0; i < 5; ++i) v.f[i] = Integer(base[i]) * static_cast<long>(L);
    return v;
}

}  // namespace detail

/// Stratum-by-stratum assembly for a 3-dimensional Newton polytope.
inline SurfaceAssembly assemble_surface_weights(const LatticePolytope& P) {
    if (P.dim() != 3 || !P.full_dimensional())
        throw UnsupportedDimension("surface assembly needs a full-dimensional polytope in dimension 3");
    const auto fv = face_volumes(P);
    SurfaceAssembly out;

    // Corner precondition.
    for (CoordType b : {CoordType::infinity, CoordType::zero})
        for (CoordType c : {CoordType::infinity, CoordType::zero}) {
            Stratum corner{CoordType::infinity, b, c};
            if (detail::joint_face(P, corner).empty())
                throw UnsupportedCornerConfiguration("corner " + to_string(corner) +
                                                     " lies on the closure of the surface");
        }

    out.contributions.push_back({{CoordType::torus, CoordType::torus, CoordType::torus}, StratumKind::codim0,
                                 surface_signed_weights(fv), 1});

    const CoordType types[3] = {CoordType::torus, CoordType::infinity, CoordType::zero};
    for (CoordType a : types)
        for (CoordType b : types)
            for (CoordType c : types) {
                Stratum s{a, b, c};
                int fixed = 0, zeros = 0;
                for (auto t : s) {
                    fixed += t != CoordType::torus;
                    zeros += t == CoordType::zero;
                }
                if (fixed == 0) continue;
                StratumContribution sc{s, StratumKind::empty, detail::zero_surface_vector(), 0};
                auto ids = detail::joint_face(P, s);
                if (zeros > 0) {
                    // Zero strata vanish, but a line on the closure there would
                    // signal a configuration outside the supported range.
                    if (fixed == 2 && ids.empty() && s[0] != CoordType::zero)
                        throw UnsupportedCornerConfiguration("stratum " + to_string(s) +
                                                             " meets the closure in a full line");
                    sc.kind = StratumKind::zero_coordinate;
                } else if (fixed == 1) {
                    Face F = detail::face_from(P, ids);
                    if (F.dim == 2) {
                        const Rational U2 = relative_volume(P, F);
                        Integer U1 = 0;
                        // Lattice perimeter of the face polygon.
                        auto sub = convex_hull([&] {
                            std::vector<IntVec> pts;
                            for (int v : ids) pts.push_back(P.vertices()[v]);
                            return pts;
                        }(), true);
                        for (const auto& e : sub.faces(1))
                            U1 += static_cast<long>(content(hull::detail::sub(sub.vertices()[e.vertices[0]],
                                                                             sub.vertices()[e.vertices[1]])));
                        const Integer twoU2 = detail::exact_integer(2 * U2, "twice the face area");
                        sc.kind = StratumKind::facet_curve;
                        sc.multiplicity = 1;
                        sc.weights.f = {-U1 + 1, -twoU2 + U1 - 2, U1, twoU2 - U1 + 2, -1};
                    } else if (F.dim == 1) {
                        sc.kind = StratumKind::edge_lines;
                        sc.multiplicity = to_int(relative_volume(P, F).get_num());
                        sc.weights = detail::scaled({-1, 0, 2, 0, -1}, sc.multiplicity);
                    }
                } else if (fixed == 2) {
                    if (ids.empty()) {
                        sc.kind = StratumKind::full_line;
                        sc.multiplicity = 1;
                        sc.weights = detail::scaled({-1, 0, 2, 0, -1}, 1);
                    } else {
                        Face F = detail::face_from(P, ids);
                        if (F.dim == 1) {
                            sc.kind = StratumKind::edge_points;
                            sc.multiplicity = to_int(relative_volume(P, F).get_num());
                            sc.weights = detail::scaled({1, 0, -2, 0, 1}, sc.multiplicity);
                        }
                    }
                }
                out.contributions.push_back(std::move(sc));
            }

    std::vector<Integer> total(5, 0);
    for (const auto& sc : out.contributions)
        for (std::size_t w = 0; w < 5; ++w) total[w] += sc.weights.f[w];
    const Integer expected = detail::exact_integer(6 * fv.U[3], "six times the volume");
    Integer sum = 0;
    for (const auto& x : total) sum += x;
    if (sum != expected)
        throw AssemblyInconsistent("assembled weights sum to " + sum.get_str() + ", expected " + expected.get_str());
    for (std::size_t w = 0; w < 5; ++w)
        if (total[w] < 0)
            throw NegativeAssembledWeight("weight " + std::to_string(w) + " assembles to " + total[w].get_str());
    out.weights = {3, total};
    return out;
}

/// Closed form for the box [0,a] x [0,b] x [0,c].
inline WeightVector prism_weights(Int a, Int b, Int c) {
    if (a < 1 || b < 1 || c < 1) throw InvalidInput("prism sides must be positive");
    const Integer A(static_cast<long>(a)), B(static_cast<long>(b)), C(static_cast<long>(c));
    const Integer s1 = A + B + C, s2 = A * B + B * C + C * A, s3 = A * B * C;
    Integer f0 = s1 - 2, f1 = 2 * s2 - 4 * s1 + 6, f2 = 6 * s3 - 4 * s2 + 6 * s1 - 8;
    return {3, {f0, f1, f2, f1, f0}};
}

/// Closed form for pyramids over an a x b rectangle of height c whose
/// slanted edges are primitive.
inline WeightVector pyramid_weights(Int a, Int b, Int c) {
    if (a < 1 || b < 1 || c < 1) throw InvalidInput("pyramid parameters must be positive");
    const Integer A(static_cast<long>(a)), B(static_cast<long>(b)), C(static_cast<long>(c));
    return {3, {1, 0, 2 * A * B * C - 2 * A * B + 2 * A + 2 * B - 3, 2 * A * B - 2 * A - 2 * B + 2, 0}};
}

/// Apex position (d, e) making the pyramid (a, b, c) fit the closed form,
/// or nullopt when none exists.
inline std::optional<std::pair<Int, Int>> pyramid_apex(Int a, Int b, Int c) {
    for (Int d = 1; d < a; ++d)
        for (Int e = 1; e < b; ++e)
            if (std::gcd(c, d) == 1 && std::gcd(c, a - d) == 1 && std::gcd(c, e) == 1 && std::gcd(c, b - e) == 1)
                return std::make_pair(d, e);
    return std::nullopt;
}

/// Top weight of the truncated prism family: sum of the sides minus n, plus one.
inline Integer truncated_prism_top_weight(const IntVec& sides) {
    if (sides.size() < 2) throw InvalidInput("need at least two sides");
    Integer s = 0;
    for (Int b : sides) {
        if (b < 1) throw InvalidInput("sides must be positive");
        s += static_cast<long>(b);
    }
    return s - static_cast<long>(sides.size()) + 1;
}

/// Same quantity summed stratum by stratum: k coordinates at infinity give
/// (-1)^(n+1+k) C(n,k) for k <= n-2 and the side lengths for k = n-1.
inline Integer truncated_prism_top_weight_by_strata(const IntVec& sides) {
    if (sides.size() < 2) throw InvalidInput("need at least two sides");
    const long n = static_cast<long>(sides.size());
    Integer total = 0;
    for (long k = 0; k <= n - 2; ++k) total += ((n + 1 + k) % 2 ? -1 : 1) * binomial(n, k);
    for (Int b : sides) total += static_cast<long>(b);
    return total;
}

}  // namespace ntw
