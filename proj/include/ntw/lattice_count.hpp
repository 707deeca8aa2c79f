#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ntw/polytope.hpp"

namespace ntw {

/// Default enumeration budget in candidate cells; NTW_BUDGET overrides it.
inline std::uint64_t default_budget() {
    if (const char* env = std::getenv("NTW_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1'000'000'000ULL;
}

struct CountOptions {
    std::uint64_t budget = default_budget();
    unsigned threads = 1;
};

namespace detail {

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline Int mod_floor(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

/// Number of x in [lo, hi] with x = r (mod m).
inline Int count_in_residue(Int lo, Int hi, Int r, Int m) {
    if (lo > hi) return 0;
    Int first = lo + mod_floor(r - lo, m);
    if (first > hi) return 0;
    return (hi - first) / m + 1;
}

struct CountRequest {
    Int scale = 1;
    bool strict = false;
    Int modulus = 1;
    IntVec residue;  // empty when modulus == 1
};

// Scans all coordinates but the last; along the last axis the admissible
// interval is solved from the inequalities directly.
inline Int count_points(const LatticePolytope& P, const CountRequest& req, const CountOptions& opt) {
    if (!P.full_dimensional() || P.facets().empty())
        throw DegenerateHull("lattice counting needs a full-dimensional polytope");
    if (req.scale < 0) throw InvalidInput("dilation factor must be nonnegative");
    if (req.modulus < 1) throw InvalidInput("modulus must be positive");
    const std::size_t n = static_cast<std::size_t>(P.dim());
    IntVec residue = req.residue.empty() ? IntVec(n, 0) : req.residue;
    if (residue.size() != n) throw InvalidInput("residue class has the wrong length");
    const Int m = req.modulus;

    IntVec lo = bounding_box_lo(P), hi = bounding_box_hi(P);
    long double cells = 1;
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] *= req.scale;
        hi[i] *= req.scale;
        cells *= static_cast<long double>((hi[i] - lo[i]) / m + 1);
    }
    if (cells > static_cast<long double>(opt.budget))
        throw BudgetExceeded("enumeration needs about " + std::to_string(static_cast<unsigned long long>(cells)) +
                             " candidate cells (budget " + std::to_string(opt.budget) + ")");

    const auto& facets = P.facets();
    auto line_count = [&](const IntVec& x) -> Int {
        Int l = lo[n - 1], h = hi[n - 1];
        for (const auto& f : facets) {
            __int128 r = static_cast<__int128>(f.offset) * req.scale;
            for (std::size_t i = 0; i + 1 < n; ++i) r -= static_cast<__int128>(f.normal[i]) * x[i];
            const Int a = f.normal[n - 1];
            const Int rr = static_cast<Int>(r);
            if (a == 0) {
                if (req.strict ? rr <= 0 : rr < 0) return 0;
            } else if (a > 0) {
                h = std::min(h, req.strict ? ceil_div(rr, a) - 1 : floor_div(rr, a));
            } else {
                l = std::max(l, req.strict ? floor_div(rr, a) + 1 : ceil_div(rr, a));
            }
            if (l > h) return 0;
        }
        return count_in_residue(l, h, residue[n - 1], m);
    };

    if (n == 1) return line_count(IntVec{});

    auto first_in_class = [&](std::size_t i) { return lo[i] + mod_floor(residue[i] - lo[i], m); };
    std::vector<Int> firsts;
    for (Int v = first_in_class(0); v <= hi[0]; v += m) firsts.push_back(v);

    std::function<Int(std::size_t, IntVec&)> scan = [&](std::size_t i, IntVec& x) -> Int {
        if (i == n - 1) return line_count(x);
        Int s = 0;
        for (Int v = first_in_class(i); v <= hi[i]; v += m) {
            x[i] = v;
            s += scan(i + 1, x);
        }
        return s;
    };
    auto worker = [&](std::size_t begin, std::size_t end) {
        Int total = 0;
        IntVec x(n, 0);
        for (std::size_t t = begin; t < end; ++t) {
            x[0] = firsts[t];
            total += scan(1, x);
        }
        return total;
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(firsts.size())));
    if (threads <= 1) return worker(0, firsts.size());
    std::vector<Int> partial(threads, 0);
    std::vector<std::thread> pool;
    const std::size_t chunk = (firsts.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t b = t * chunk, e = std::min(firsts.size(), b + chunk);
        pool.emplace_back([&, t, b, e] { partial[t] = b < e ? worker(b, e) : 0; });
    }
    for (auto& th : pool) th.join();
    Int total = 0;
    for (Int p : partial) total += p;
    return total;
}

}  // namespace detail

/// Lattice points of k*P (closed).
inline Int lattice_points(const LatticePolytope& P, Int k = 1, const CountOptions& opt = {}) {
    return detail::count_points(P, {k, false, 1, {}}, opt);
}

/// Lattice points strictly inside k*P.
inline Int interior_points(const LatticePolytope& P, Int k = 1, const CountOptions& opt = {}) {
    if (k == 0) return 0;
    return detail::count_points(P, {k, true, 1, {}}, opt);
}

inline Int boundary_points(const LatticePolytope& P, Int k = 1, const CountOptions& opt = {}) {
    return lattice_points(P, k, opt) - interior_points(P, k, opt);
}

/// Lattice points strictly inside (k*m)*P that are congruent to lambda mod m.
inline Int interior_points_in_class(const LatticePolytope& P, Int k, Int m, const IntVec& lambda,
                                    const CountOptions& opt = {}) {
    if (m < 1) throw InvalidInput("modulus must be positive");
    if (k <= 0) return 0;
    return detail::count_points(P, {k * m, true, m, lambda}, opt);
}

}  // namespace ntw
