#pragma once

// Brute-force finite-field checks: nondegeneracy of a support, torus point
// counts over GF(q^d), and the weight bound for curves.

#include <atomic>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ntw/denef_loeser.hpp"
#include "ntw/finite_field.hpp"
#include "ntw/lattice_count.hpp"
#include "ntw/support.hpp"

namespace ntw {

/// Polynomial over the prime field F_q: coefficients reduced into [1, q).
struct FiniteFieldPoly {
    Int q = 0;
    MonomialSupport<Int> support;

    FiniteFieldPoly() = default;
    FiniteFieldPoly(Int prime, MonomialSupport<Int> s) : q(prime), support(std::move(s)) {
        if (!FiniteField::is_small_prime(q)) throw UnsupportedField(std::to_string(q) + " is not prime");
        for (const auto& t : support.terms())
            if (t.coeff <= 0 || t.coeff >= q) throw InvalidInput("coefficients must lie in [1, q)");
    }

    /// Reduces a rational polynomial; a coefficient vanishing mod q is an error.
    static FiniteFieldPoly reduce(const LaurentPolynomial& f, Int prime) {
        if (!FiniteField::is_small_prime(prime)) throw UnsupportedField(std::to_string(prime) + " is not prime");
        std::vector<Term<Int>> terms;
        for (const auto& t : f.terms()) {
            Int c = reduce_mod(t.coeff, prime);
            if (c == 0) throw CoefficientVanishes("coefficient " + to_string(t.coeff) + " vanishes mod " +
                                                  std::to_string(prime));
            terms.push_back({t.exp, c});
        }
        return FiniteFieldPoly(prime, MonomialSupport<Int>(f.n(), std::move(terms)));
    }

    int n() const { return support.n(); }
};

struct OracleOptions {
    std::uint64_t budget = default_budget();
    unsigned threads = 1;
};

namespace detail {

// A monomial sum in log form: term k contributes g^(c_k + <a_k, x>).
struct LogPoly {
    std::vector<std::int64_t> coeff_log;
    std::vector<IntVec> exps;
};

inline LogPoly to_log_poly(const FiniteField& F, const std::vector<Term<Int>>& terms) {
    LogPoly L;
    for (const auto& t : terms) {
        auto c = F.log_of_int(t.coeff);
        if (c == FiniteField::kZero) continue;
        L.coeff_log.push_back(c);
        L.exps.push_back(t.exp);
    }
    return L;
}

// Evaluates at the torus point with discrete logs `x`.
inline std::int64_t eval_log(const FiniteField& F, const LogPoly& L, const std::vector<std::int64_t>& x) {
    std::int64_t acc = FiniteField::kZero;
    const Int ord = F.order();
    for (std::size_t k = 0; k < L.exps.size(); ++k) {
        __int128 e = L.coeff_log[k];
        for (std::size_t i = 0; i < x.size(); ++i) e += static_cast<__int128>(L.exps[k][i]) * x[i];
        e %= ord;
        if (e < 0) e += ord;
        acc = F.add_logs(acc, static_cast<std::int64_t>(e));
    }
    return acc;
}

// Values along the line where only the last coordinate varies; `prefix`
// holds the logs of the other coordinates. out[j] is the value at x_last = g^j.
class LineEvaluator {
public:
    LineEvaluator(const FiniteField& F, const LogPoly& L) : F_(F), L_(L), cur_(L.exps.size()), step_(L.exps.size()) {}

    void run(const std::vector<std::int64_t>& prefix, std::vector<std::int64_t>& out) {
        const Int ord = F_.order();
        const std::size_t terms = L_.exps.size();
        for (std::size_t k = 0; k < terms; ++k) {
            __int128 e = L_.coeff_log[k];
            for (std::size_t i = 0; i < prefix.size(); ++i) e += static_cast<__int128>(L_.exps[k][i]) * prefix[i];
            e %= ord;
            if (e < 0) e += ord;
            cur_[k] = static_cast<std::int64_t>(e);
            Int st = L_.exps[k][prefix.size()] % ord;
            step_[k] = st < 0 ? st + ord : st;
        }
        out.resize(static_cast<std::size_t>(ord));
        for (Int j = 0; j < ord; ++j) {
            std::int64_t acc = FiniteField::kZero;
            for (std::size_t k = 0; k < terms; ++k) {
                acc = F_.add_logs(acc, cur_[k]);
                cur_[k] += step_[k];
                if (cur_[k] >= ord) cur_[k] -= ord;
            }
            out[static_cast<std::size_t>(j)] = acc;
        }
    }

private:
    const FiniteField& F_;
    const LogPoly& L_;
    std::vector<std::int64_t> cur_, step_;
};

inline void check_budget(Int order, int n, std::uint64_t budget) {
    long double pts = std::pow(static_cast<long double>(order), n);
    if (pts > static_cast<long double>(budget))
        throw BudgetExceeded("torus enumeration of " + std::to_string(static_cast<double>(pts)) +
                             " points exceeds budget " + std::to_string(budget));
}

// Runs `visit(prefix, thread)` for every line of the torus along the last
// coordinate, splitting the first coordinate across threads. `visit` returns
// true to stop early; the result is true if any call did.
template <class Visit>
bool for_each_torus_line(const FiniteField& F, int n, unsigned threads, Visit visit) {
    const Int ord = F.order();
    std::atomic<bool> stop{false};
    if (n == 1) return visit(std::vector<std::int64_t>{}, 0u);
    auto work = [&](Int first_lo, Int first_hi, unsigned tid) {
        std::vector<std::int64_t> x(n - 1, 0);
        for (Int a = first_lo; a < first_hi && !stop; ++a) {
            x[0] = a;
            std::fill(x.begin() + 1, x.end(), 0);
            while (true) {
                if (visit(x, tid)) {
                    stop = true;
                    return;
                }
                int i = n - 2;
                while (i >= 1 && ++x[i] == ord) x[i--] = 0;
                if (i < 1) break;
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ord)));
    if (threads == 1) {
        work(0, ord, 0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, ord * t / threads, ord * (t + 1) / threads, t);
        for (auto& th : pool) th.join();
    }
    return stop;
}

}  // namespace detail

/// Number of points of {f = 0} in (GF(q^d)^*)^n.
inline Int count_points(const FiniteFieldPoly& f, int extension_degree = 1, const OracleOptions& opt = {}) {
    const int n = f.n();
    if (n > 3) throw UnsupportedDimension("point counting supports at most three variables");
    FiniteField F(f.q, extension_degree);
    detail::check_budget(F.order(), n, opt.budget);
    auto L = detail::to_log_poly(F, f.support.terms());
    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(F.order())));
    std::vector<Int> partial(threads, 0);
    std::vector<detail::LineEvaluator> evals(threads, detail::LineEvaluator(F, L));
    std::vector<std::vector<std::int64_t>> bufs(threads);
    detail::for_each_torus_line(F, n, threads, [&](const std::vector<std::int64_t>& prefix, unsigned tid) {
        evals[tid].run(prefix, bufs[tid]);
        for (auto v : bufs[tid]) partial[tid] += v == FiniteField::kZero;
        return false;
    });
    Int total = 0;
    for (Int c : partial) total += c;
    return total;
}

struct NondegeneracyReport {
    bool nondegenerate = true;
    int witness_face_dim = -1;
    std::vector<IntVec> witness_face;       // exponents of the offending face polynomial
    std::vector<Int> witness_point;         // dense field elements
};

/// For every face with at least two terms, searches the torus over GF(q^ext)
/// for a common zero of f_face and all x_i d/dx_i f_face.
inline NondegeneracyReport nondegeneracy_report(const FiniteFieldPoly& f, int extension_degree = 1,
                                                const OracleOptions& opt = {}) {
    const int n = f.n();
    if (n > 3) throw UnsupportedDimension("nondegeneracy testing supports at most three variables");
    FiniteField F(f.q, extension_degree);
    detail::check_budget(F.order(), n, opt.budget);
    auto P = newton_polytope(f.support, true);
    const auto& terms = f.support.terms();
    NondegeneracyReport rep;
    for (int k = 1; k <= P.affine_dim(); ++k)
        for (const auto& face : P.faces(k)) {
            std::vector<IntVec> corner;
            for (int v : face.vertices) corner.push_back(P.vertices()[v]);
            std::vector<Term<Int>> on_face;
            for (const auto& t : terms) {
                auto probe = corner;
                probe.push_back(t.exp);
                if (linalg::affine_rank(probe) == face.dim) on_face.push_back(t);
            }
            std::vector<detail::LogPoly> system{detail::to_log_poly(F, on_face)};
            for (int i = 0; i < n; ++i) {
                std::vector<Term<Int>> deriv;
                for (const auto& t : on_face) {
                    Int e = t.exp[i] % f.q;
                    if (e < 0) e += f.q;
                    if (e) deriv.push_back({t.exp, e * t.coeff % f.q});
                }
                system.push_back(detail::to_log_poly(F, deriv));
            }
            // First point in enumeration order where the whole system vanishes.
            auto search = [&](unsigned threads, std::vector<std::int64_t>* hit) {
                std::vector<detail::LineEvaluator> evals(threads, detail::LineEvaluator(F, system[0]));
                std::vector<std::vector<std::int64_t>> bufs(threads);
                return detail::for_each_torus_line(F, n, threads, [&](const std::vector<std::int64_t>& prefix,
                                                                      unsigned tid) {
                    evals[tid].run(prefix, bufs[tid]);
                    auto x = prefix;
                    x.push_back(0);
                    for (std::size_t j = 0; j < bufs[tid].size(); ++j) {
                        if (bufs[tid][j] != FiniteField::kZero) continue;
                        x.back() = static_cast<std::int64_t>(j);
                        bool all = true;
                        for (std::size_t g = 1; g < system.size() && all; ++g)
                            all = detail::eval_log(F, system[g], x) == FiniteField::kZero;
                        if (all) {
                            if (hit) *hit = x;
                            return true;
                        }
                    }
                    return false;
                });
            };
            const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(F.order())));
            if (search(threads, nullptr)) {
                rep.nondegenerate = false;
                rep.witness_face_dim = face.dim;
                for (const auto& t : on_face) rep.witness_face.push_back(t.exp);
                // Threads race to a witness; the serial rerun fixes which one is reported.
                std::vector<std::int64_t> hit;
                search(1, &hit);
                for (auto l : hit) rep.witness_point.push_back(F.element(l));
                return rep;
            }
        }
    return rep;
}

inline bool is_nondegenerate(const FiniteFieldPoly& f, int extension_degree = 1, const OracleOptions& opt = {}) {
    return nondegeneracy_report(f, extension_degree, opt).nondegenerate;
}

struct WeilDegreeResult {
    int d = 1;
    Int count = 0;
    Integer q_power;      // q^d
    double window = 0;    // f1 q^(d/2) + f0
    double margin = 0;    // window - |N - q^d|
    bool holds = true;
};

struct WeilReport {
    Integer f0, f1;
    std::vector<WeilDegreeResult> degrees;
    bool holds = true;
};

/// |N_d - q^d| <= f1 q^(d/2) + f0 for every requested d, decided exactly.
/// Violations are reported and then raised as BoundViolated unless `raise` is false.
inline WeilReport weil_bound_check(const FiniteFieldPoly& f, const std::vector<int>& degrees,
                                   const OracleOptions& opt = {}, bool raise = true) {
    if (f.n() != 2) throw UnsupportedDimension("the weight bound check is for curves");
    auto P = newton_polytope(f.support, true);
    if (P.affine_dim() < 2) throw DegenerateSupport("Newton polygon is not two-dimensional");
    auto sw = curve_signed_weights(face_volumes(P));
    WeilReport rep;
    rep.f0 = sw.f[0];
    rep.f1 = sw.f[1];
    std::string failures;
    for (int d : degrees) {
        WeilDegreeResult r;
        r.d = d;
        r.count = count_points(f, d, opt);
        mpz_ui_pow_ui(r.q_power.get_mpz_t(), static_cast<unsigned long>(f.q), static_cast<unsigned long>(d));
        Integer dev = Integer(static_cast<long>(r.count)) - r.q_power;
        if (dev < 0) dev = -dev;
        Integer excess = dev - rep.f0;
        r.holds = excess <= 0 || excess * excess <= rep.f1 * rep.f1 * r.q_power;
        r.window = rep.f1.get_d() * std::sqrt(r.q_power.get_d()) + rep.f0.get_d();
        r.margin = r.window - dev.get_d();
        if (!r.holds) failures += " d=" + std::to_string(d) + " N=" + std::to_string(r.count);
        rep.holds = rep.holds && r.holds;
        rep.degrees.push_back(r);
    }
    if (!rep.holds && raise) throw BoundViolated("weight bound violated over F_" + std::to_string(f.q) + ":" + failures);
    return rep;
}

/// Random curve over F_q whose support is two-dimensional and which passes the
/// nondegeneracy test over GF(q^check_degree). Retries until one is found.
inline FiniteFieldPoly random_nondegenerate_curve(std::mt19937_64& rng, Int q, int max_terms, int max_exp,
                                                  int check_degree = 1, const OracleOptions& opt = {}) {
    if (max_terms < 3) throw InvalidInput("need at least three terms");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const int count = 3 + static_cast<int>(rng() % static_cast<unsigned>(max_terms - 2));
        std::set<IntVec> exps;
        for (int tries = 0; static_cast<int>(exps.size()) < count && tries < 1000; ++tries)
            exps.insert({static_cast<Int>(rng() % (max_exp + 1)), static_cast<Int>(rng() % (max_exp + 1))});
        std::vector<IntVec> e(exps.begin(), exps.end());
        if (linalg::affine_rank(e) < 2) continue;
        std::vector<Term<Int>> terms;
        for (auto& x : e) terms.push_back({x, 1 + static_cast<Int>(rng() % static_cast<std::uint64_t>(q - 1))});
        FiniteFieldPoly f(q, MonomialSupport<Int>(2, std::move(terms)));
        if (is_nondegenerate(f, check_degree, opt)) return f;
    }
    throw NotFound("no nondegenerate curve found");
}

struct WeilSuiteReport {
    std::uint64_t seed = 0;
    int curves = 0;
    int checks = 0;
    int violations = 0;
    double min_margin = 1e300;
    std::vector<std::string> violation_details;
};

/// Randomized suite: primes 11..31, degrees 1 and 2, up to `max_terms` terms
/// with exponents up to `max_exp`.
inline WeilSuiteReport weil_suite(std::uint64_t seed, int curves = 100, int max_terms = 8, int max_exp = 6,
                                  const OracleOptions& opt = {}) {
    static const Int primes[] = {11, 13, 17, 19, 23, 29, 31};
    std::mt19937_64 rng(seed);
    WeilSuiteReport rep;
    rep.seed = seed;
    for (int i = 0; i < curves; ++i) {
        const Int q = primes[rng() % 7];
        auto f = random_nondegenerate_curve(rng, q, max_terms, max_exp, 2, opt);
        auto r = weil_bound_check(f, {1, 2}, opt, false);
        ++rep.curves;
        for (const auto& d : r.degrees) {
            ++rep.checks;
            rep.min_margin = std::min(rep.min_margin, d.margin);
            if (!d.holds) {
                ++rep.violations;
                rep.violation_details.push_back("curve " + std::to_string(i) + " q=" + std::to_string(q) +
                                                " d=" + std::to_string(d.d) + " N=" + std::to_string(d.count));
            }
        }
    }
    return rep;
}

}  // namespace ntw
