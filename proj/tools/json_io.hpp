#pragma once

// JSON encodings shared by the command line front end. Rationals travel as
// "p/q" strings; integers as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise.

#include <json.hpp>

#include "ntw/ntw.hpp"

namespace ntw::io {

using json = nlohmann::json;

inline json to_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(double x) { return x; }

inline json to_json(long double x) { return static_cast<double>(x); }

inline json weights_to_json(const std::vector<Integer>& m, int first_weight = 0) {
    json out = json::object();
    for (std::size_t w = 0; w < m.size(); ++w) out[std::to_string(first_weight + static_cast<int>(w))] = to_json(m[w]);
    return out;
}

inline json weights_to_json(const WeightVector& w) { return weights_to_json(w.m); }

inline std::string tuple_string(const std::vector<Integer>& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + m[i].get_str();
    return s + ")";
}

inline Integer integer_from(const json& j, const char* what) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput(std::string("malformed integer for ") + what);
        return z;
    }
    throw InvalidInput(std::string("expected an integer for ") + what);
}

inline Int int_from(const json& j, const char* what) {
    if (!j.is_number_integer()) throw InvalidInput(std::string("expected an integer for ") + what);
    return j.get<Int>();
}

inline Rational rational_from(const json& j, const char* what) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InvalidInput(std::string("expected a rational (string \"p/q\" or integer) for ") + what);
}

inline IntVec intvec_from(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string("expected an integer array for ") + what);
    IntVec v;
    for (const auto& x : j) v.push_back(int_from(x, what));
    return v;
}

/// {"dim": n, "vertices": [...]} or a family description.
inline LatticePolytope polytope_from(const json& j) {
    if (!j.is_object()) throw InvalidInput("polytope must be a JSON object");
    if (j.contains("family")) {
        const std::string fam = j.at("family").get<std::string>();
        if (fam == "prism") return prism(intvec_from(j.at("sides"), "sides"));
        if (fam == "truncated_prism")
            return truncated_prism(intvec_from(j.at("sides"), "sides"), intvec_from(j.at("corner"), "corner"));
        if (fam == "pyramid") {
            auto p = intvec_from(j.at("params"), "params");
            if (p.size() != 5) throw InvalidInput("pyramid params are a, b, c, d, e");
            return pyramid(p[0], p[1], p[2], p[3], p[4]);
        }
        throw InvalidInput("unknown polytope family '" + fam + "'");
    }
    if (!j.contains("vertices")) throw InvalidInput("polytope needs 'vertices' or 'family'");
    std::vector<IntVec> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(intvec_from(v, "vertex"));
    if (pts.empty()) throw InvalidInput("polytope has no vertices");
    if (j.contains("dim") && int_from(j.at("dim"), "dim") != static_cast<Int>(pts[0].size()))
        throw InvalidInput("'dim' does not match the vertex length");
    return convex_hull(pts);
}

/// {"terms": [{"exp": [...], "coeff": "3"}, ...]}
inline LaurentPolynomial laurent_from(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
        throw InvalidInput("polynomial needs a 'terms' array");
    std::vector<Term<Rational>> terms;
    for (const auto& t : j.at("terms")) {
        if (!t.contains("exp")) throw InvalidInput("term without 'exp'");
        terms.push_back({intvec_from(t.at("exp"), "exp"), t.contains("coeff") ? rational_from(t.at("coeff"), "coeff")
                                                                              : Rational(1)});
    }
    if (terms.empty()) throw InvalidSupport("polynomial has no terms");
    const int n = static_cast<int>(terms[0].exp.size());
    return LaurentPolynomial(n, std::move(terms));
}

inline json laurent_to_json(const LaurentPolynomial& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back({{"exp", t.exp}, {"coeff", to_string(t.coeff)}});
    return {{"terms", terms}};
}

/// Either a polytope or a polynomial whose Newton polytope is meant.
inline LatticePolytope polytope_or_newton(const json& j) {
    if (j.is_object() && j.contains("terms")) return newton_polytope(laurent_from(j));
    return polytope_from(j);
}

}  // namespace ntw::io
