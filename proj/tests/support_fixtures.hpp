#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ntw/support.hpp"

namespace ntw::testing {

inline LaurentPolynomial poly(std::vector<std::pair<IntVec, std::string>> terms) {
    std::vector<Term<Rational>> t;
    int n = static_cast<int>(terms.front().first.size());
    for (auto& [e, c] : terms) t.push_back({e, parse_rational(c)});
    return LaurentPolynomial(n, std::move(t));
}

/// Random two-variable support with up to `max_terms` terms and exponents in
/// [0, max_exp]; nullopt when the draw is not two-dimensional.
inline std::optional<LaurentPolynomial> random_support(std::mt19937_64& rng, int max_terms, int max_exp) {
    const int count = 3 + static_cast<int>(rng() % static_cast<unsigned>(max_terms - 2));
    std::set<IntVec> exps;
    while (static_cast<int>(exps.size()) < count)
        exps.insert({static_cast<Int>(rng() % (max_exp + 1)), static_cast<Int>(rng() % (max_exp + 1))});
    std::vector<IntVec> e(exps.begin(), exps.end());
    if (linalg::affine_rank(e) < 2) return std::nullopt;
    std::vector<Term<Rational>> t;
    for (auto& x : e) t.push_back({x, Rational(static_cast<long>(rng() % 9) + 1)});
    return LaurentPolynomial(2, std::move(t));
}

}  // namespace ntw::testing
