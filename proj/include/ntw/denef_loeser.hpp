#pragma once

// Signed weight counts of nondegenerate hypersurfaces in low-dimensional tori,
// expressed through lattice face data of the Newton polytope.

#include <string>
#include <vector>

#include "ntw/polytope.hpp"

namespace ntw {

/// Alternating weight counts f[w] for w = 0 .. 2(n-1); entries may be negative.
struct SignedWeightVector {
    int dim = 0;
    std::vector<Integer> f;

    Integer total() const {
        Integer s = 0;
        for (const auto& x : f) s += x;
        return s;
    }
    bool operator==(const SignedWeightVector& o) const { return dim == o.dim && f == o.f; }
};

namespace detail {

inline Integer exact_integer(const Rational& q, const char* what) {
    if (q.get_den() != 1) throw InvalidFaceData(std::string(what) + " must be an integer, got " + to_string(q));
    return q.get_num();
}

}  // namespace detail

/// Curve in G_m^2 with lattice area U2 and lattice perimeter U1.
inline SignedWeightVector curve_signed_weights(const Rational& U2, const Rational& U1) {
    if (U2 <= 0) throw InvalidFaceData("area must be positive");
    const Integer twice_area = detail::exact_integer(2 * U2, "twice the area");
    const Integer perimeter = detail::exact_integer(U1, "perimeter");
    if (perimeter < 3) throw InvalidFaceData("lattice perimeter must be at least 3");
    const Integer f1 = twice_area - perimeter + 2;
    if (f1 < 0) throw InvalidFaceData("area and perimeter violate Pick's bound (f1 = " + f1.get_str() + ")");
    return {2, {perimeter - 1, f1, -1}};
}

inline SignedWeightVector curve_signed_weights(const FaceVolumes& fv) {
    if (fv.dim != 2) throw UnsupportedDimension("curve formulas need a polygon");
    return curve_signed_weights(fv.U[2], fv.U[1]);
}

namespace detail {

struct SurfaceData {
    Integer six_vol, twice_area, U1, U0, F, E, W1;
};

inline SurfaceData surface_data(const FaceVolumes& fv) {
    if (fv.dim != 3) throw UnsupportedDimension("surface formulas need a 3-dimensional polytope");
    if (fv.U[3] <= 0) throw InvalidFaceData("volume must be positive");
    return {exact_integer(6 * fv.U[3], "six times the volume"), exact_integer(2 * fv.U[2], "twice U2"),
            exact_integer(fv.U[1], "U1"), exact_integer(fv.U[0], "U0"),
            fv.F, fv.E, fv.W1};
}

}  // namespace detail

/// Surface in G_m^3: the open-stratum contribution, weights 0..4.
/// Negative entries are legitimate here; only assembled totals are checked.
inline SignedWeightVector surface_signed_weights(const FaceVolumes& fv) {
    auto d = detail::surface_data(fv);
    Integer f2 = d.six_vol - d.twice_area + d.U1 + 2 * d.U0 + d.F - d.W1 - 6;
    Integer f1 = d.twice_area - 2 * d.U1 - 3 * d.U0 - d.F - d.E + 2 * d.W1 + 6;
    Integer f0 = d.U1 + d.U0 + d.E - d.W1 - 1;
    return {3, {f0, f1, f2, 0, 1}};
}

/// Weight counts of the complement-style e-vector in G_m^4, indexed e[0..4].
inline std::vector<Integer> gm4_e_vector(const FaceVolumes& fv) {
    auto d = detail::surface_data(fv);
    Integer e4 = d.six_vol - d.twice_area + d.U1 + 2 * d.U0 + d.F - d.W1 - 3;
    Integer e3 = d.twice_area - 2 * d.U1 - 3 * d.U0 - d.E - d.F + 2 * d.W1 + 6;
    Integer e2 = d.U1 + d.U0 + d.E - d.W1 - 4;
    return {1, 0, e2, e3, e4};
}

}  // namespace ntw
