#pragma once

// Largeness certificates for convolution monodromy groups.

#include <algorithm>
#include <string>
#include <vector>

#include "ntw/curve_weights.hpp"

namespace ntw {

struct WeightPartition {
    std::vector<Integer> c;  // descending, all >= 1
    Integer R = 0;

    WeightPartition() = default;
    explicit WeightPartition(std::vector<Integer> parts) : c(std::move(parts)) {
        if (c.empty()) throw InvalidInput("partition is empty");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 1) throw InvalidInput("partition parts must be positive");
            if (i && c[i] > c[i - 1]) throw InvalidInput("partition must be sorted in descending order");
            R += c[i];
        }
    }

    /// Nonzero multiplicities of a weight vector, sorted.
    static WeightPartition from_weights(const WeightVector& w) {
        std::vector<Integer> parts;
        for (const auto& x : w.m)
            if (x > 0) parts.push_back(x);
        std::sort(parts.begin(), parts.end(), [](const Integer& a, const Integer& b) { return a > b; });
        return WeightPartition(std::move(parts));
    }
};

struct CheckResult {
    bool large = false;
    std::vector<std::string> failed_conditions;
    std::vector<std::string> notes;

    bool failed(const std::string& name) const {
        return std::find(failed_conditions.begin(), failed_conditions.end(), name) != failed_conditions.end();
    }
};

/// The four hypotheses of the eigenvalue-partition criterion. Failure names:
/// "length", "singleton", "second", "R-bound".
inline CheckResult theorem_a_check(const WeightPartition& p, const Integer& r) {
    if (r < 1) throw InvalidInput("r must be positive");
    CheckResult out;
    const std::size_t len = p.c.size();
    if (Integer(static_cast<unsigned long>(len)) > r + 1) out.failed_conditions.push_back("length");
    if (!(len >= 2 && p.c[len - 1] == 1 && p.c[len - 2] > 1)) out.failed_conditions.push_back("singleton");
    if (len >= 2 && p.c[1] > r) out.failed_conditions.push_back("second");
    const Integer bound = 72 * (r * r + 1) * (r * r + 1);
    if (!(p.R > bound)) out.failed_conditions.push_back("R-bound");
    out.notes.push_back("R = " + p.R.get_str() + ", bound 72(r^2+1)^2 = " + bound.get_str());
    out.large = out.failed_conditions.empty();
    return out;
}

struct CurveMonodromyReport {
    WeightVector weights;
    WeightPartition partition;
    Integer r = 0;
    CheckResult direct;
    bool is_triangle = false;
    std::vector<Integer> side_gcds;  // sorted, triangles only
    Rational area = 0;               // Euclidean
    bool sufficient_configuration = false;
};

/// Applies the criterion to the curve's own weights with the smallest r the
/// partition admits, and flags triangles with side gcds {1,2,3} and area > 7204.
template <class Coeff>
CurveMonodromyReport curve_monodromy_check(const MonomialSupport<Coeff>& f) {
    if (f.n() != 2) throw DegenerateSupport("curve monodromy needs two variables");
    CurveMonodromyReport rep;
    rep.weights = curve_weights_checked(f);
    rep.partition = WeightPartition::from_weights(rep.weights);
    const auto& c = rep.partition.c;
    rep.r = std::max<Integer>(Integer(static_cast<unsigned long>(c.size()) - 1), c.size() > 1 ? c[1] : Integer(1));
    if (rep.r < 1) rep.r = 1;
    rep.direct = theorem_a_check(rep.partition, rep.r);

    auto P = newton_polytope(f);
    rep.area = Rational(normalized_volume(P), 2);
    rep.area.canonicalize();
    const auto& V = P.vertices();
    rep.is_triangle = V.size() == 3;
    if (rep.is_triangle) {
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& a = V[i];
            const auto& b = V[(i + 1) % 3];
            rep.side_gcds.push_back(Integer(static_cast<long>(gcd_abs(b[0] - a[0], b[1] - a[1]))));
        }
        std::sort(rep.side_gcds.begin(), rep.side_gcds.end());
        rep.sufficient_configuration =
            rep.side_gcds == std::vector<Integer>{1, 2, 3} && rep.area > 7204;
    }
    return rep;
}

struct PyramidMonodromyReport {
    Integer r, R;
    bool r_at_least_two = false;
    Integer verbatim_bound;   // (72 r^2 + 1)^2
    Integer canonical_bound;  // 72 (r^2 + 1)^2
    bool verbatim_holds = false;
    bool canonical_holds = false;
};

/// Pyramid family: r = 2ab - 2a - 2b + 2 and R = 2abc. Both the printed bound
/// for this family and the criterion's general bound are evaluated.
inline PyramidMonodromyReport pyramid_monodromy_check(Int a, Int b, Int c) {
    if (a < 1 || b < 1 || c < 1) throw InvalidInput("pyramid parameters must be positive");
    PyramidMonodromyReport rep;
    const Integer A(static_cast<long>(a)), B(static_cast<long>(b)), C(static_cast<long>(c));
    rep.r = 2 * A * B - 2 * A - 2 * B + 2;
    rep.R = 2 * A * B * C;
    rep.r_at_least_two = rep.r >= 2;
    Integer t = 72 * rep.r * rep.r + 1;
    rep.verbatim_bound = t * t;
    Integer u = rep.r * rep.r + 1;
    rep.canonical_bound = 72 * u * u;
    rep.verbatim_holds = rep.r_at_least_two && rep.R > rep.verbatim_bound;
    rep.canonical_holds = rep.r_at_least_two && rep.R > rep.canonical_bound;
    return rep;
}

// ---------------------------------------------------------------------------
// Primality

struct PrimalityResult {
    bool prime = false;
    bool probabilistic = false;
};

namespace detail {

inline bool miller_rabin_round(const Integer& n, const Integer& d, unsigned long s, const Integer& a) {
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Miller-Rabin with the first twelve primes as witnesses, which is exact below
/// 2^64; larger inputs use 64 random-base rounds and are flagged.
inline PrimalityResult is_prime(const Integer& N) {
    if (N < 0) throw InvalidInput("primality needs N >= 0");
    static const unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (N < 2) return {false, false};
    for (unsigned long p : small) {
        if (N == p) return {true, false};
        if (N % p == 0) return {false, false};
    }
    Integer d = N - 1;
    unsigned long s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    const bool deterministic = mpz_sizeinbase(N.get_mpz_t(), 2) <= 64;
    if (deterministic) {
        for (unsigned long p : small)
            if (!detail::miller_rabin_round(N, d, s, Integer(p))) return {false, false};
        return {true, false};
    }
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0x6e7477);
    for (int round = 0; round < 64; ++round) {
        Integer a = rng.get_z_range(N - 3) + 2;
        if (!detail::miller_rabin_round(N, d, s, a)) return {false, false};
    }
    return {true, true};
}

struct TruncationResult {
    Int b = 0;
    Integer N;
    bool probabilistic = false;
};

/// Smallest b in [1, a_1) with n! prod(a) - b prime; the cut corner has legs (b, 1, ..., 1).
inline TruncationResult find_prime_truncation(const IntVec& a) {
    if (a.size() < 2) throw InvalidInput("need at least two side lengths");
    Integer base = factorial(static_cast<unsigned>(a.size()));
    for (Int x : a) {
        if (x < 1) throw InvalidInput("side lengths must be positive");
        base *= static_cast<long>(x);
    }
    for (Int b = 1; b < a[0]; ++b) {
        Integer N = base - static_cast<long>(b);
        auto pr = is_prime(N);
        if (pr.prime) return {b, N, pr.probabilistic};
    }
    throw NotFound("no b in [1, " + std::to_string(a[0]) + ") makes n! prod(a) - b prime");
}

// ---------------------------------------------------------------------------
// Prime-dimension criterion

enum class GabberVerdict { ContainsSLorSO, Inconclusive };

inline const char* to_string(GabberVerdict v) {
    return v == GabberVerdict::ContainsSLorSO ? "ContainsSLorSO" : "Inconclusive";
}

struct GabberReport {
    GabberVerdict verdict = GabberVerdict::Inconclusive;
    std::vector<std::string> reasons;
    bool probabilistic = false;
};

inline GabberReport gabber_check(const Integer& R, const WeightVector& w, bool waive_seven = false) {
    if (w.total() != R)
        throw InvalidInput("weights total " + w.total().get_str() + " but R = " + R.get_str());
    GabberReport rep;
    auto pr = is_prime(R);
    rep.probabilistic = pr.probabilistic;
    if (!pr.prime) rep.reasons.push_back("R is not prime");
    if (R == 7 && !waive_seven) rep.reasons.push_back("R = 7 admits the exceptional G2 case");
    std::size_t classes = 0, singletons = 0;
    for (const auto& x : w.m) {
        if (x > 0) ++classes;
        if (x == 1) ++singletons;
    }
    if (classes == 1) rep.reasons.push_back("all eigenvalues share one absolute value");
    if (classes == singletons) rep.reasons.push_back("all absolute values are distinct");
    if (rep.reasons.empty()) rep.verdict = GabberVerdict::ContainsSLorSO;
    return rep;
}

}  // namespace ntw
