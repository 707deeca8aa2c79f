#pragma once

#include <set>
#include <vector>

#include "ntw/polytope.hpp"

namespace ntw {

template <class Coeff>
struct Term {
    IntVec exp;
    Coeff coeff;
};

/// A Laurent polynomial viewed through its support: distinct exponent
/// vectors in Z^n, each carrying a nonzero coefficient.
template <class Coeff>
class MonomialSupport {
public:
    MonomialSupport() = default;

    MonomialSupport(int n, std::vector<Term<Coeff>> terms) : n_(n), terms_(std::move(terms)) {
        if (n_ < 1) throw InvalidSupport("number of variables must be positive");
        if (terms_.empty()) throw InvalidSupport("polynomial has no terms");
        std::set<IntVec> seen;
        for (const auto& t : terms_) {
            if (static_cast<int>(t.exp.size()) != n_)
                throw InvalidSupport("exponent vector has the wrong length");
            if (t.coeff == 0) throw InvalidSupport("zero coefficient in support");
            if (!seen.insert(t.exp).second) throw InvalidSupport("repeated exponent vector");
        }
    }

    int n() const { return n_; }
    const std::vector<Term<Coeff>>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::vector<IntVec> exponents() const {
        std::vector<IntVec> e;
        for (const auto& t : terms_) e.push_back(t.exp);
        return e;
    }

    /// Same coefficients with every exponent shifted by `shift`.
    MonomialSupport translated(const IntVec& shift) const {
        auto t = terms_;
        for (auto& term : t)
            for (int i = 0; i < n_; ++i) term.exp[i] += shift[i];
        return MonomialSupport(n_, std::move(t));
    }

private:
    int n_ = 0;
    std::vector<Term<Coeff>> terms_;
};

using LaurentPolynomial = MonomialSupport<Rational>;

/// Newton polytope of the support (possibly lower-dimensional).
template <class Coeff>
LatticePolytope newton_polytope(const MonomialSupport<Coeff>& f, bool allow_lower_dim = false) {
    return convex_hull(f.exponents(), allow_lower_dim);
}

}  // namespace ntw
