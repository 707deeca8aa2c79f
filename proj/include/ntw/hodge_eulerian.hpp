#pragma once

// Per-character Hodge numbers from residue-class lattice counts, Eulerian
// numbers and the distribution of a sum of two centred descent counts,
// adjoint Hodge numbers, and the two numerical conditions.

#include <cmath>
#include <cstring>
#include <string>
#include <type_traits>
#include <vector>

#include "ntw/lattice_count.hpp"

namespace ntw {

// ---------------------------------------------------------------------------
// Hodge numbers

enum class TorusCorrection { none, trivial_class, all };

struct HodgeTable {
    int n = 0;
    Int m = 1;
    IntVec lambda;
    std::vector<Int> h;  // h[q], q = 0 .. n-1
    bool corrected = false;

    Int total() const {
        Int s = 0;
        for (Int x : h) s += x;
        return s;
    }
};

inline bool is_trivial_class(const IntVec& lambda, Int m) {
    for (Int x : lambda)
        if (detail::mod_floor(x, m) != 0) return false;
    return true;
}

/// sum_{i<=q} (-1)^i C(n+1,i) * #{interior points of (q+1-i)m P congruent to lambda}.
inline std::vector<Int> alternating_class_counts(const LatticePolytope& P, Int m, const IntVec& lambda,
                                                 const CountOptions& opt = {}) {
    const int n = P.dim();
    if (static_cast<int>(lambda.size()) != n) throw InvalidInput("lambda has the wrong length");
    std::vector<Int> counts(static_cast<std::size_t>(n) + 1, 0);  // counts[k] for dilation k
    for (int k = 1; k <= n; ++k) counts[k] = interior_points_in_class(P, k, m, lambda, opt);
    std::vector<Int> h(n, 0);
    for (int q = 0; q < n; ++q)
        for (int i = 0; i <= q; ++i)
            h[q] += (i % 2 ? -1 : 1) * to_int(binomial(n + 1, i)) * counts[q + 1 - i];
    return h;
}

/// Correction (-1)^(q+n-1) C(n, n-q-1) from the compactly supported torus cohomology.
inline Int torus_correction(int n, int q) {
    return ((q + n - 1) % 2 ? -1 : 1) * to_int(binomial(n, n - q - 1));
}

inline HodgeTable hodge_numbers(const LatticePolytope& P, Int m, const IntVec& lambda,
                                TorusCorrection policy = TorusCorrection::trivial_class,
                                const CountOptions& opt = {}) {
    HodgeTable t{P.dim(), m, lambda, alternating_class_counts(P, m, lambda, opt), false};
    t.corrected = policy == TorusCorrection::all ||
                  (policy == TorusCorrection::trivial_class && is_trivial_class(lambda, m));
    if (t.corrected)
        for (int q = 0; q < t.n; ++q) t.h[q] += torus_correction(t.n, q);
    for (int q = 0; q < t.n; ++q)
        if (t.h[q] < 0)
            throw NegativeHodgeNumber("h(" + std::to_string(q) + ") = " + std::to_string(t.h[q]) +
                                      "; the class is not generic or m is too small");
    return t;
}

// ---------------------------------------------------------------------------
// Eulerian numbers

/// Row A(n, 0..n-1) by the recurrence A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1).
inline std::vector<Integer> eulerian_row(int n) {
    if (n < 1) throw UnsupportedN("Eulerian rows start at n = 1");
    std::vector<Integer> row{1};
    for (int r = 2; r <= n; ++r) {
        std::vector<Integer> next(r);
        for (int k = 0; k < r; ++k) {
            if (k < r - 1) next[k] += (k + 1) * row[k];
            if (k > 0) next[k] += (r - k) * row[k - 1];
        }
        row = std::move(next);
    }
    return row;
}

/// Advances an Eulerian row in place from n-1 to n.
inline void eulerian_step(std::vector<Integer>& row) {
    const long r = static_cast<long>(row.size()) + 1;
    std::vector<Integer> next(r);
    for (long k = 0; k < r; ++k) {
        if (k < r - 1) next[k] += (k + 1) * row[k];
        if (k > 0) next[k] += (r - k) * row[k - 1];
    }
    row = std::move(next);
}

inline Integer eulerian_number(int n, int k) {
    if (n < 1 || k < 0 || k >= n) throw InvalidInput("Eulerian number needs 0 <= k < n");
    return eulerian_row(n)[k];
}

/// Alternating-sum formula, kept as an independent cross-check.
inline Integer eulerian_number_closed(int n, int k) {
    Integer s = 0;
    for (int i = 0; i <= k; ++i) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(k + 1 - i), static_cast<unsigned long>(n));
        s += (i % 2 ? -1 : 1) * binomial(n + 1, i) * p;
    }
    return s;
}

namespace detail {

// Squares a polynomial with nonnegative coefficients through one big-integer
// product (Kronecker substitution with limb-aligned slots).
inline std::vector<Integer> self_convolve(const std::vector<Integer>& a) {
    const std::size_t len = a.size();
    std::size_t maxbits = 1;
    for (const auto& x : a) maxbits = std::max(maxbits, mpz_sizeinbase(x.get_mpz_t(), 2));
    std::size_t slot_bits = 2 * maxbits + 64;
    const std::size_t limb_bits = sizeof(mp_limb_t) * 8;
    const std::size_t slot = (slot_bits + limb_bits - 1) / limb_bits;
    std::vector<mp_limb_t> buf(slot * len, 0);
    for (std::size_t k = 0; k < len; ++k) {
        std::size_t count = 0;
        mpz_export(buf.data() + k * slot, &count, -1, sizeof(mp_limb_t), 0, 0, a[k].get_mpz_t());
    }
    Integer packed;
    mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
    buf.clear();
    buf.shrink_to_fit();
    packed *= packed;
    const std::size_t out_len = 2 * len - 1;
    std::vector<mp_limb_t> res(slot * out_len + 1, 0);
    std::size_t count = 0;
    mpz_export(res.data(), &count, -1, sizeof(mp_limb_t), 0, 0, packed.get_mpz_t());
    std::vector<Integer> out(out_len);
    for (std::size_t k = 0; k < out_len; ++k)
        mpz_import(out[k].get_mpz_t(), slot, -1, sizeof(mp_limb_t), 0, 0, res.data() + k * slot);
    return out;
}

}  // namespace detail

enum class EulerianMode { exact_rational, scaled_float };

inline constexpr int kExactEulerianLimit = 2000;
inline constexpr int kFloatEulerianLimit = 50000;

/// Distribution of X'_n; beta(p) for p = -(n-1) .. n-1.
/// Exact mode keeps integer numerators over the common denominator (n!)^2.
template <class T>
struct EulerianDistribution {
    int n = 0;
    std::vector<T> weight;  // weight[p + n - 1]
    T denom = T(1);

    T beta(int p) const {
        if (p < -(n - 1) || p > n - 1) return T(0);
        return weight[static_cast<std::size_t>(p + n - 1)] / denom;
    }
};

inline EulerianDistribution<Rational> eulerian_distribution_from_row(const std::vector<Integer>& row) {
    const int n = static_cast<int>(row.size());
    EulerianDistribution<Rational> d;
    d.n = n;
    for (auto& c : detail::self_convolve(row)) d.weight.emplace_back(c);
    Integer f = factorial(static_cast<unsigned>(n));
    d.denom = Rational(f * f);
    return d;
}

inline EulerianDistribution<Rational> eulerian_distribution_exact(int n) {
    if (n < 1 || n > kExactEulerianLimit)
        throw UnsupportedN("exact Eulerian distribution supports 1 <= n <= " + std::to_string(kExactEulerianLimit));
    return eulerian_distribution_from_row(eulerian_row(n));
}

inline EulerianDistribution<double> eulerian_distribution_float(int n) {
    if (n < 1 || n > kFloatEulerianLimit)
        throw UnsupportedN("float Eulerian distribution supports 1 <= n <= " + std::to_string(kFloatEulerianLimit));
    // Row of A(n,k)/n!, renormalized at every step.
    std::vector<double> row{1.0}, next;
    for (int r = 2; r <= n; ++r) {
        next.assign(r, 0.0);
        const double inv = 1.0 / r;
        for (int k = 0; k < r; ++k) {
            double v = 0;
            if (k < r - 1) v += (k + 1) * row[k];
            if (k > 0) v += (r - k) * row[k - 1];
            next[k] = v * inv;
        }
        row.swap(next);
    }
    EulerianDistribution<double> d;
    d.n = n;
    d.weight.assign(2 * n - 1, 0.0);
    // Skip negligible tails; they are far below double resolution of the bulk.
    int lo = 0, hi = n - 1;
    while (lo < hi && row[lo] < 1e-300) ++lo;
    while (hi > lo && row[hi] < 1e-300) --hi;
    for (int i = lo; i <= hi; ++i)
        for (int j = lo; j <= hi; ++j) d.weight[i + j] += row[i] * row[j];
    return d;
}

/// Moments of the positive half of the distribution.
template <class T>
struct EulerianMoments {
    T beta0;
    T first;   // sum_{p>0} p beta_p
    T second;  // sum_{p>0} p^2 beta_p
};

template <class T>
EulerianMoments<T> eulerian_moments(const EulerianDistribution<T>& d) {
    T s1(0), s2(0);
    for (int p = 1; p < d.n; ++p) {
        const T& w = d.weight[static_cast<std::size_t>(p + d.n - 1)];
        s1 += T(p) * w;
        s2 += T(p) * T(p) * w;
    }
    EulerianMoments<T> m{d.weight[static_cast<std::size_t>(d.n - 1)] / d.denom, s1 / d.denom, s2 / d.denom};
    return m;
}

struct EulerianBoundCheck {
    int n = 0;
    bool beta0_bound = false;     // beta_0 <= sqrt(3)/sqrt(n+4)
    bool first_moment_bound = false;  // sum p beta_p > sqrt(n)/(4 sqrt 3) - 1/2
    bool second_moment_bound = false; // sum p^2 beta_p <= (n+1)/12
    bool second_moment_equality = false;
};

/// Exact comparison against the irrational bounds by squaring.
inline EulerianBoundCheck check_eulerian_bounds(const EulerianMoments<Rational>& m, int n) {
    EulerianBoundCheck c;
    c.n = n;
    c.beta0_bound = m.beta0 * m.beta0 * (n + 4) <= 3;
    Rational shifted = m.first + Rational(1, 2);
    c.first_moment_bound = shifted > 0 && shifted * shifted * 48 > n;
    Rational var_cap(n + 1, 12);
    var_cap.canonicalize();
    c.second_moment_bound = m.second <= var_cap;
    c.second_moment_equality = m.second == var_cap;
    return c;
}

// ---------------------------------------------------------------------------
// Adjoint Hodge numbers

enum class Group { GL, GO };

inline const char* to_string(Group g) { return g == Group::GL ? "GL" : "GO"; }

template <class T>
struct AdjointHodgeVector {
    Group group = Group::GL;
    int n = 0;            // number of Hodge numbers; weights p in -(n-1)..n-1
    std::vector<T> ha;    // ha[p + n - 1]
    Int t = 0;            // maximal-torus dimension (metadata)

    T at(int p) const {
        if (p < -(n - 1) || p > n - 1) return T(0);
        return ha[static_cast<std::size_t>(p + n - 1)];
    }
    T total() const {
        T s(0);
        for (const auto& x : ha) s += x;
        return s;
    }
};

/// GL: 2 ha(p) = sum_{p1+p2=p+n-1} h(p1) h(p2).  GO adds sign * h((p+n-1)/2)
/// when that index is integral.
template <class T>
AdjointHodgeVector<T> adjoint_hodge(const std::vector<T>& h, Group group, int sign = +1) {
    if (h.empty()) throw InvalidInput("empty Hodge vector");
    for (const auto& x : h)
        if (x < 0) throw InvalidInput("Hodge numbers must be nonnegative");
    if (sign != 1 && sign != -1) throw InvalidInput("sign must be +1 or -1");
    const int n = static_cast<int>(h.size());
    AdjointHodgeVector<T> a;
    a.group = group;
    a.n = n;
    a.ha.assign(2 * n - 1, T(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.ha[i + j] += h[i] * h[j];
    if (group == Group::GO)
        for (int s = 0; s < 2 * n - 1; s += 2) a.ha[s] += T(sign) * h[s / 2];
    for (auto& x : a.ha) x /= T(2);
    T dimension(0);
    for (const auto& x : h) dimension += x;
    if constexpr (std::is_same_v<T, Rational>) a.t = to_int(Integer(dimension.get_num() / dimension.get_den()));
    else a.t = static_cast<Int>(dimension);
    if (group == Group::GO) a.t /= 2;
    return a;
}

/// Normalized GL adjoint numbers of the ideal Eulerian profile, i.e. beta itself.
template <class T>
AdjointHodgeVector<T> adjoint_from_distribution(const EulerianDistribution<T>& d) {
    AdjointHodgeVector<T> a;
    a.group = Group::GL;
    a.n = d.n;
    for (const auto& w : d.weight) a.ha.push_back(w / d.denom);
    a.t = d.n;
    return a;
}

/// Sum of the k largest weights counted with (possibly fractional) multiplicity.
template <class T>
T t_g(const AdjointHodgeVector<T>& a, const T& k) {
    if (k < 0) throw InvalidInput("T_G needs a nonnegative argument");
    T remaining = k, sum(0);
    for (int p = a.n - 1; p >= -(a.n - 1) && remaining > 0; --p) {
        T take = a.at(p) < remaining ? a.at(p) : remaining;
        sum += take * T(p);
        remaining -= take;
    }
    if (remaining > 0) {
        if constexpr (std::is_floating_point_v<T>) {
            if (remaining > 1e-9 * (k > 1 ? k : T(1)))
                throw InsufficientMultiplicity("T_G argument exceeds total multiplicity");
        } else {
            throw InsufficientMultiplicity("T_G argument exceeds total multiplicity");
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Numerical conditions

enum class ConditionMode { full, simplified };

template <class T>
struct Inequality {
    std::string name;
    T lhs, rhs;
    bool strict = true;
    bool holds = false;
    std::string note;
};

template <class T>
struct ConditionReport {
    ConditionMode mode = ConditionMode::simplified;
    std::vector<Inequality<T>> inequalities;
    bool holds = false;
};

template <class T>
ConditionReport<T> check_conditions(const AdjointHodgeVector<T>& a, const T& dim_x, ConditionMode mode) {
    ConditionReport<T> r;
    r.mode = mode;
    T positive(0), weighted(0);
    for (int p = 1; p < a.n; ++p) {
        positive += a.at(p);
        weighted += T(p) * a.at(p);
    }
    const T h0 = a.at(0);
    auto tg = [&](const T& k, std::string& note) -> std::optional<T> {
        try {
            return t_g(a, k);
        } catch (const InsufficientMultiplicity& e) {
            note = e.what();
            return std::nullopt;
        }
    };
    if (mode == ConditionMode::full) {
        Inequality<T> first{"first", positive, dim_x + h0, false, positive >= dim_x + h0, ""};
        r.inequalities.push_back(first);
        Inequality<T> second{"second", weighted, T(0), true, false, ""};
        auto t1 = tg(dim_x + h0, second.note);
        auto t2 = tg(dim_x + T(3) * h0 / T(2), second.note);
        if (t1 && t2) {
            second.rhs = *t1 + *t2;
            second.holds = weighted > second.rhs;
        }
        r.inequalities.push_back(second);
    } else {
        Inequality<T> simp{"simplified", weighted, T(0), true, false, ""};
        if (auto t = tg(T(2) * h0, simp.note)) {
            simp.rhs = T(2) * *t;
            simp.holds = weighted > simp.rhs;
        }
        r.inequalities.push_back(simp);
    }
    r.holds = true;
    for (const auto& q : r.inequalities) r.holds = r.holds && q.holds;
    return r;
}

/// Simplified condition decided from published-style bounds alone:
/// T_G(K) <= t K + S2 / t for every threshold t, minimized at 2 sqrt(K S2).
struct AnalyticConditionReport {
    Group group = Group::GL;
    long n = 0;
    long double h0_bound = 0;        // normalized h^0 upper bound
    long double first_moment_lb = 0; // normalized lower bound on sum p h^p
    long double second_moment = 0;   // (n+1)/12
    long double tg_bound = 0;        // upper bound on T_G(2 h^0)
    bool bounds_applicable = true;   // lemma range for the chosen group
    bool holds = false;
};

inline AnalyticConditionReport analytic_condition_check(long n, Group group) {
    if (n < 2) throw UnsupportedN("analytic bounds need n >= 2");
    AnalyticConditionReport r;
    r.group = group;
    r.n = n;
    const long double N = static_cast<long double>(n);
    r.second_moment = (N + 1) / 12;
    if (group == Group::GL) {
        r.h0_bound = std::sqrt(3.0L) / std::sqrt(N + 4);
        r.first_moment_lb = std::sqrt(N) / (4 * std::sqrt(3.0L)) - 0.5L;
    } else {
        r.h0_bound = std::sqrt(13.0L) / (2 * std::sqrt(N));
        r.first_moment_lb = std::sqrt(N) / 11;
        r.bounds_applicable = n >= 40000;
    }
    const long double K = 2 * r.h0_bound;
    r.tg_bound = 2 * std::sqrt(K * r.second_moment);
    r.holds = r.bounds_applicable && 2 * r.tg_bound < r.first_moment_lb;
    return r;
}

// ---------------------------------------------------------------------------
// Asymptotic comparison with the Eulerian profile

/// max_q |h(q)/Vol - A(n,q)| with Vol the Euclidean volume.
inline double eulerian_deviation(const HodgeTable& t, const LatticePolytope& P) {
    const Rational vol(normalized_volume(P), factorial(static_cast<unsigned>(t.n)));
    auto row = eulerian_row(t.n);
    double worst = 0;
    for (int q = 0; q < t.n; ++q) {
        Rational d = Rational(static_cast<long>(t.h[q])) / vol - Rational(row[q]);
        worst = std::max(worst, std::fabs(d.get_d()));
    }
    return worst;
}

}  // namespace ntw
