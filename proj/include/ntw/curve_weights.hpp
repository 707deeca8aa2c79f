#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ntw/polygon2d.hpp"

namespace ntw {

/// Weight multiplicities of the fiber functor: m[w] for w = 0 .. 2(n-1).
struct WeightVector {
    int dim = 0;                 // number of variables n
    std::vector<Integer> m;

    Integer total() const {
        Integer s = 0;
        for (const auto& x : m) s += x;
        return s;
    }
    bool operator==(const WeightVector& o) const { return dim == o.dim && m == o.m; }
};

inline std::ostream& operator<<(std::ostream& os, const WeightVector& w) {
    os << '(';
    for (std::size_t i = 0; i < w.m.size(); ++i) os << (i ? "," : "") << w.m[i];
    return os << ')';
}

enum class CurveMethod { slopes, strata };

namespace detail {

inline WeightVector curve_vector(Int w0, Int w1, Int w2) {
    if (w0 < 0 || w1 < 0 || w2 < 0)
        throw NegativeMultiplicity("negative weight multiplicity (" + std::to_string(w0) + ", " +
                                   std::to_string(w1) + ", " + std::to_string(w2) + ")");
    return WeightVector{2, {Integer(static_cast<long>(w0)), Integer(static_cast<long>(w1)),
                            Integer(static_cast<long>(w2))}};
}

template <class Coeff>
Int twice_area(const MonomialSupport<Coeff>& f) {
    return to_int(normalized_volume(newton_polytope(f)));
}

}  // namespace detail

/// Weights from the slope sequences of the plotted polygon.
template <class Coeff>
WeightVector curve_weights_slopes(const MonomialSupport<Coeff>& f) {
    auto s = slope_data(f);
    const Int w0 = s.n0 + s.volume_S0() - 1;
    const Int w2 = s.ninf + s.volume_Sinf() - 1;
    return detail::curve_vector(w0, detail::twice_area(f) - w0 - w2, w2);
}

/// Weights from the stratification counts and the lattice perimeter.
template <class Coeff>
WeightVector curve_weights_strata(const MonomialSupport<Coeff>& f) {
    auto c = stratum_counts(f);
    auto fv = face_volumes(newton_polytope(normalize(f)));
    const Int perimeter = to_int(fv.U[1].get_num());
    const Int w2 = c.sum() - 1;
    const Int w0 = perimeter - c.sum() - 1;
    return detail::curve_vector(w0, detail::twice_area(f) - w0 - w2, w2);
}

template <class Coeff>
WeightVector curve_weights(const MonomialSupport<Coeff>& f, CurveMethod method) {
    return method == CurveMethod::slopes ? curve_weights_slopes(f) : curve_weights_strata(f);
}

/// Runs both methods; any disagreement is a hard error.
template <class Coeff>
WeightVector curve_weights_checked(const MonomialSupport<Coeff>& f) {
    auto a = curve_weights_slopes(f);
    auto b = curve_weights_strata(f);
    if (!(a == b))
        throw MethodDisagreement("slope method gives (" + a.m[0].get_str() + "," + a.m[1].get_str() + "," +
                                 a.m[2].get_str() + ") but strata method gives (" + b.m[0].get_str() + "," +
                                 b.m[1].get_str() + "," + b.m[2].get_str() + ")");
    return a;
}

/// A claimed weight vector compared entry by entry against a computed one.
struct ClaimCheck {
    bool consistent = true;
    std::vector<std::string> flags;
};

inline ClaimCheck compare_with_claim(const WeightVector& computed, const std::vector<Integer>& claimed,
                                     std::optional<Integer> claimed_total = std::nullopt) {
    ClaimCheck c;
    for (std::size_t w = 0; w < computed.m.size(); ++w) {
        if (w >= claimed.size()) break;
        if (claimed[w] != computed.m[w]) {
            c.consistent = false;
            c.flags.push_back("w" + std::to_string(w) + ": claimed " + claimed[w].get_str() + ", computed " +
                              computed.m[w].get_str());
        }
    }
    Integer sum = 0;
    for (const auto& x : claimed) sum += x;
    if (sum != computed.total()) {
        c.consistent = false;
        c.flags.push_back("claimed weights sum to " + sum.get_str() + " but the normalized volume is " +
                          computed.total().get_str());
    }
    if (claimed_total && *claimed_total != computed.total()) {
        c.consistent = false;
        c.flags.push_back("claimed total " + claimed_total->get_str() + " differs from the normalized volume " +
                          computed.total().get_str());
    }
    return c;
}

}  // namespace ntw
