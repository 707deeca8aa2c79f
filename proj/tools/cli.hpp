#pragma once

// Command line front end. Every invocation is first turned into a canonical
// request (subcommand name plus arguments, with input files inlined), which is
// then executed without touching the filesystem. Reports carry the request so
// `verify` can re-run it.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "json_io.hpp"

namespace ntw::cli {

using io::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VerificationFailed : public Error {
public:
    explicit VerificationFailed(const std::string& message) : Error("VerificationFailed", message) {}
};

struct Context {
    unsigned threads = 1;
};

struct Outcome {
    json result;
    std::vector<std::string> table;
    int exit_code = 0;
};

inline std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

namespace detail {

inline const json& arg(const json& args, const char* key) {
    if (!args.contains(key)) throw InvalidInput(std::string("request is missing '") + key + "'");
    return args.at(key);
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class T>
json number_json(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) return to_string(x);
    else return static_cast<double>(x);
}

template <class T>
std::string number_text(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) {
        std::ostringstream os;
        const std::string exact = to_string(x);
        if (exact.size() > 40) os << "~" << std::setprecision(10) << x.get_d();
        else os << exact << " (~" << std::setprecision(6) << x.get_d() << ")";
        return os.str();
    } else {
        std::ostringstream os;
        os << std::setprecision(10) << static_cast<double>(x);
        return os.str();
    }
}

inline CountOptions count_options(const Context& ctx) {
    CountOptions o;
    o.threads = ctx.threads;
    return o;
}

inline OracleOptions oracle_options(const Context& ctx) {
    OracleOptions o;
    o.threads = ctx.threads;
    return o;
}

// ---------------------------------------------------------------------------

inline Outcome polytope_info(const json& a, const Context& ctx) {
    auto P = io::polytope_from(arg(a, "polytope"));
    Outcome o;
    json& r = o.result;
    r["dim"] = P.dim();
    r["vertices"] = P.vertices();
    r["facets"] = P.facets().size();
    r["normalized_volume"] = io::to_json(normalized_volume(P));
    if (P.has_face_lattice()) {
        json fv = json::array();
        for (int d = 0; d <= P.affine_dim(); ++d) fv.push_back(P.faces(d).size());
        r["f_vector"] = fv;
    }
    if (P.has_face_lattice() && P.dim() <= 4) {
        auto v = face_volumes(P);
        json U = json::array();
        for (const auto& u : v.U) U.push_back(io::to_json(u));
        r["face_volumes"] = {{"U", U}, {"V", v.V}, {"E", v.E}, {"F", v.F}, {"W1", v.W1}};
    }
    r["lattice_points"] = lattice_points(P, 1, count_options(ctx));
    r["interior_points"] = interior_points(P, 1, count_options(ctx));
    o.table = {"dimension          " + std::to_string(P.dim()),
               "vertices           " + std::to_string(P.vertices().size()),
               "facets             " + std::to_string(P.facets().size()),
               "normalized volume  " + normalized_volume(P).get_str(),
               "lattice points     " + r["lattice_points"].dump(),
               "interior points    " + r["interior_points"].dump()};
    return o;
}

inline json chain_json(const std::vector<ChainEdge>& chain) {
    json out = json::array();
    for (const auto& e : chain)
        out.push_back({{"run", e.dj}, {"rise", e.di}, {"volume", e.volume}, {"slope", to_string(e.slope)}});
    return out;
}

inline Outcome curve_weights_cmd(const json& a, const Context&) {
    auto f = io::laurent_from(arg(a, "poly"));
    const std::string method = a.value("method", std::string("both"));
    Outcome o;
    json& r = o.result;
    WeightVector w;
    if (method == "both") {
        auto s = curve_weights_slopes(f);
        auto t = curve_weights_strata(f);
        r["slopes"] = io::weights_to_json(s);
        r["strata"] = io::weights_to_json(t);
        r["agree"] = s == t;
        o.table.push_back("slopes  " + io::tuple_string(s.m));
        o.table.push_back("strata  " + io::tuple_string(t.m));
        if (!(s == t))
            throw MethodDisagreement("slopes give " + io::tuple_string(s.m) + ", strata give " + io::tuple_string(t.m));
        o.table.push_back("AGREE");
        w = s;
    } else if (method == "slopes" || method == "strata") {
        w = method == "slopes" ? curve_weights_slopes(f) : curve_weights_strata(f);
        o.table.push_back(method + "  " + io::tuple_string(w.m));
    } else {
        throw InvalidInput("method must be slopes, strata or both");
    }
    r["method"] = method;
    r["weights"] = io::weights_to_json(w);
    r["total"] = io::to_json(w.total());
    auto sd = slope_data(f);
    r["slope_data"] = {{"S0", chain_json(sd.S0)}, {"Sinf", chain_json(sd.Sinf)}, {"n0", sd.n0}, {"ninf", sd.ninf}};
    auto sc = stratum_counts(f);
    r["strata_counts"] = {{"n1", sc.n1}, {"n2", sc.n2}, {"r1", sc.r1}, {"r2", sc.r2}};
    if (a.contains("expect") && !a.at("expect").is_null()) {
        std::vector<Integer> claimed;
        for (const auto& x : a.at("expect")) claimed.push_back(io::integer_from(x, "expect"));
        std::optional<Integer> total;
        if (a.contains("expect_total") && !a.at("expect_total").is_null())
            total = io::integer_from(a.at("expect_total"), "expect_total");
        auto c = compare_with_claim(w, claimed, total);
        r["claim"] = {{"claimed", io::weights_to_json(claimed)}, {"consistent", c.consistent}, {"flags", c.flags}};
        o.table.push_back("claim   " + io::tuple_string(claimed) + (c.consistent ? "  consistent" : "  FLAGGED"));
        for (const auto& fl : c.flags) o.table.push_back("  " + fl);
    }
    return o;
}

inline Outcome surface_weights_cmd(const json& a, const Context&) {
    LatticePolytope P;
    std::optional<WeightVector> closed;
    Outcome o;
    if (a.contains("family")) {
        const std::string fam = a.at("family");
        auto p = io::intvec_from(arg(a, "params"), "params");
        if (p.size() != 3) throw InvalidInput("family parameters are a b c");
        if (fam == "prism") {
            P = prism(p);
            closed = prism_weights(p[0], p[1], p[2]);
        } else if (fam == "pyramid") {
            std::pair<Int, Int> apex;
            if (a.contains("apex") && !a.at("apex").is_null()) {
                auto ap = io::intvec_from(a.at("apex"), "apex");
                if (ap.size() != 2) throw InvalidInput("apex is d,e");
                apex = {ap[0], ap[1]};
            } else {
                auto found = pyramid_apex(p[0], p[1], p[2]);
                if (!found) throw NotFound("no apex offset makes the slanted edges primitive");
                apex = *found;
            }
            o.result["apex"] = {apex.first, apex.second};
            P = pyramid(p[0], p[1], p[2], apex.first, apex.second);
            closed = pyramid_weights(p[0], p[1], p[2]);
        } else {
            throw InvalidInput("family must be prism or pyramid");
        }
    } else {
        P = io::polytope_from(arg(a, "polytope"));
    }
    auto asm_ = assemble_surface_weights(P);
    json& r = o.result;
    r["weights"] = io::weights_to_json(asm_.weights);
    r["total"] = io::to_json(asm_.weights.total());
    r["normalized_volume"] = io::to_json(normalized_volume(P));
    json contrib = json::array();
    for (const auto& c : asm_.contributions) {
        if (c.kind == StratumKind::zero_coordinate || c.kind == StratumKind::empty) continue;
        contrib.push_back({{"stratum", to_string(c.stratum)},
                           {"kind", to_string(c.kind)},
                           {"multiplicity", c.multiplicity},
                           {"weights", io::weights_to_json(c.weights.f)}});
    }
    r["contributions"] = contrib;
    o.table.push_back("weights  " + io::tuple_string(asm_.weights.m));
    o.table.push_back("total    " + asm_.weights.total().get_str() + " (6 U3 = " + normalized_volume(P).get_str() + ")");
    if (closed) {
        r["closed_form"] = io::weights_to_json(*closed);
        r["matches_closed_form"] = *closed == asm_.weights;
        o.table.push_back("closed   " + io::tuple_string(closed->m) +
                          (*closed == asm_.weights ? "  MATCH" : "  MISMATCH"));
    }
    return o;
}

inline Outcome surface_top_weight_cmd(const json& a, const Context&) {
    auto sides = io::intvec_from(arg(a, "sides"), "sides");
    Outcome o;
    auto top = truncated_prism_top_weight(sides);
    auto by = truncated_prism_top_weight_by_strata(sides);
    o.result = {{"top_weight", io::to_json(top)}, {"by_strata", io::to_json(by)}, {"agree", top == by}};
    o.table = {"top weight  " + top.get_str(), "by strata   " + by.get_str() + (top == by ? "  AGREE" : "  DISAGREE")};
    bool assemble = sides.size() == 3;
    for (Int s : sides) assemble = assemble && s >= 2;
    if (assemble) {
        auto w = assemble_surface_weights(truncated_prism(sides, {1, 1, 1})).weights;
        o.result["assembled_top_weight"] = io::to_json(w.m[4]);
        o.result["assembled_weights"] = io::weights_to_json(w);
        o.table.push_back("assembled   " + w.m[4].get_str() + "  " + io::tuple_string(w.m));
    }
    return o;
}

inline Outcome dl_cmd(const json& a, const Context&, bool surface) {
    auto P = io::polytope_or_newton(arg(a, "input"));
    auto fv = face_volumes(P);
    Outcome o;
    if (!surface) {
        auto f = curve_signed_weights(fv);
        o.result = {{"f", io::weights_to_json(f.f)}, {"total", io::to_json(f.total())}};
        o.table = {"f (weights 0..2)  " + io::tuple_string(f.f)};
    } else {
        auto f = surface_signed_weights(fv);
        auto e = gm4_e_vector(fv);
        o.result = {{"f", io::weights_to_json(f.f)}, {"total", io::to_json(f.total())}, {"e", io::weights_to_json(e)}};
        o.table = {"f (weights 0..4)  " + io::tuple_string(f.f), "e (G_m^4)         " + io::tuple_string(e)};
    }
    return o;
}

inline TorusCorrection correction_from(const std::string& s) {
    if (s == "none") return TorusCorrection::none;
    if (s == "trivial") return TorusCorrection::trivial_class;
    if (s == "all") return TorusCorrection::all;
    throw InvalidInput("correction must be none, trivial or all");
}

inline Outcome hodge_cmd(const json& a, const Context& ctx) {
    auto P = io::polytope_from(arg(a, "polytope"));
    const Int m = io::int_from(arg(a, "m"), "m");
    if (m < 1) throw InvalidInput("m must be positive");
    auto lambda = io::intvec_from(arg(a, "lambda"), "lambda");
    auto policy = correction_from(a.value("correction", std::string("trivial")));
    auto raw = alternating_class_counts(P, m, lambda, count_options(ctx));
    Outcome o;
    o.result["raw"] = raw;
    o.result["normalized_volume"] = io::to_json(normalized_volume(P));
    auto t = hodge_numbers(P, m, lambda, policy, count_options(ctx));
    o.result["h"] = t.h;
    o.result["total"] = t.total();
    o.result["corrected"] = t.corrected;
    std::vector<Integer> hz(t.h.begin(), t.h.end());
    o.table = {"h        " + io::tuple_string(hz), "total    " + std::to_string(t.total()),
               "corrected " + yes_no(t.corrected)};
    return o;
}

template <class T>
void moments_into(Outcome& o, const EulerianMoments<T>& m) {
    o.result["beta0"] = number_json(m.beta0);
    o.result["first_moment"] = number_json(m.first);
    o.result["second_moment"] = number_json(m.second);
    o.table.push_back("beta_0                " + number_text(m.beta0));
    o.table.push_back("sum_{p>0} p beta_p    " + number_text(m.first));
    o.table.push_back("sum_{p>0} p^2 beta_p  " + number_text(m.second));
}

inline Outcome eulerian_cmd(const json& a, const Context&) {
    const int n = static_cast<int>(io::int_from(arg(a, "n"), "n"));
    std::string mode = a.value("mode", std::string("auto"));
    if (mode == "auto") mode = n <= kExactEulerianLimit ? "exact" : "float";
    const bool full = a.value("full", false);
    Outcome o;
    o.result["n"] = n;
    o.result["mode"] = mode;
    o.table.push_back("n = " + std::to_string(n) + " (" + mode + ")");
    json beta = json::object();
    if (mode == "exact") {
        auto d = eulerian_distribution_exact(n);
        auto m = eulerian_moments(d);
        moments_into(o, m);
        auto c = check_eulerian_bounds(m, n);
        o.result["bounds"] = {{"beta0", c.beta0_bound},
                              {"first_moment", c.first_moment_bound},
                              {"second_moment", c.second_moment_bound},
                              {"second_moment_equals_(n+1)/12", c.second_moment_equality}};
        o.table.push_back("beta_0 <= sqrt(3)/sqrt(n+4)            " + yes_no(c.beta0_bound));
        o.table.push_back("first moment > sqrt(n)/(4 sqrt 3) - 1/2 " + yes_no(c.first_moment_bound));
        o.table.push_back("second moment <= (n+1)/12               " + yes_no(c.second_moment_bound) +
                          (c.second_moment_equality ? " (equal)" : ""));
        if (full || n <= 12)
            for (int p = -(n - 1); p <= n - 1; ++p) beta[std::to_string(p)] = to_string(d.beta(p));
    } else if (mode == "float") {
        auto d = eulerian_distribution_float(n);
        auto m = eulerian_moments(d);
        moments_into(o, m);
        const double N = n;
        o.result["bounds"] = {{"beta0", m.beta0 <= std::sqrt(3.0) / std::sqrt(N + 4)},
                              {"first_moment", m.first > std::sqrt(N) / (4 * std::sqrt(3.0)) - 0.5},
                              {"second_moment", m.second <= (N + 1) / 12 * (1 + 1e-12)}};
        if (full || n <= 12)
            for (int p = -(n - 1); p <= n - 1; ++p) beta[std::to_string(p)] = d.beta(p);
    } else {
        throw InvalidInput("mode must be exact or float");
    }
    if (!beta.empty()) o.result["beta"] = beta;
    return o;
}

inline Group group_from(const std::string& g) {
    if (g == "gl" || g == "GL") return Group::GL;
    if (g == "go" || g == "GO" || g == "so" || g == "SO") return Group::GO;
    throw InvalidInput("group must be gl or go");
}

template <class T>
json adjoint_json(const AdjointHodgeVector<T>& a) {
    json ha = json::object();
    for (int p = -(a.n - 1); p <= a.n - 1; ++p) ha[std::to_string(p)] = number_json(a.at(p));
    return {{"group", to_string(a.group)}, {"ha", ha}, {"total", number_json(a.total())}, {"t", a.t}};
}

inline std::vector<Rational> rational_list(const json& j, const char* what) {
    std::vector<Rational> v;
    if (!j.is_array()) throw InvalidInput(std::string(what) + " must be a list");
    for (const auto& x : j) v.push_back(io::rational_from(x, what));
    return v;
}

inline Outcome adjoint_cmd(const json& a, const Context&) {
    auto h = rational_list(arg(a, "hodge"), "hodge");
    const int sign = static_cast<int>(a.value("sign", 1));
    auto adj = adjoint_hodge(h, group_from(a.value("group", std::string("gl"))), sign);
    Outcome o;
    o.result = adjoint_json(adj);
    o.result["sign"] = sign;
    std::string line;
    for (int p = -(adj.n - 1); p <= adj.n - 1; ++p) line += (line.empty() ? "" : ", ") + to_string(adj.at(p));
    o.table = {std::string(to_string(adj.group)) + " ha(p), p = " + std::to_string(-(adj.n - 1)) + ".." +
                   std::to_string(adj.n - 1) + ":  " + line,
               "total  " + to_string(adj.total())};
    return o;
}

template <class T>
void report_into(Outcome& o, const ConditionReport<T>& rep) {
    json ineq = json::array();
    for (const auto& q : rep.inequalities) {
        ineq.push_back({{"name", q.name},
                        {"lhs", number_json(q.lhs)},
                        {"rhs", number_json(q.rhs)},
                        {"strict", q.strict},
                        {"holds", q.holds},
                        {"note", q.note}});
        o.table.push_back(q.name + ": " + number_text(q.lhs) + (q.strict ? " > " : " >= ") + number_text(q.rhs) +
                          "  " + (q.holds ? "HOLDS" : "FAILS") + (q.note.empty() ? "" : "  (" + q.note + ")"));
    }
    o.result["mode"] = rep.mode == ConditionMode::full ? "full" : "simplified";
    o.result["inequalities"] = ineq;
    o.result["holds"] = rep.holds;
}

inline Outcome conditions_cmd(const json& a, const Context& ctx) {
    const std::string source = arg(a, "source");
    const ConditionMode mode = a.value("simplified", false) ? ConditionMode::simplified : ConditionMode::full;
    Outcome o;
    o.result["source"] = source;
    if (source == "analytic") {
        const long n = static_cast<long>(io::int_from(arg(a, "n"), "n"));
        const std::string g = a.value("group", std::string("gl"));
        auto rep = analytic_condition_check(n, group_from(g));
        o.result["group"] = to_string(rep.group);
        o.result["h0_bound"] = io::to_json(rep.h0_bound);
        o.result["first_moment_lower_bound"] = io::to_json(rep.first_moment_lb);
        o.result["second_moment"] = io::to_json(rep.second_moment);
        o.result["tg_upper_bound"] = io::to_json(rep.tg_bound);
        o.result["bounds_applicable"] = rep.bounds_applicable;
        o.result["holds"] = rep.holds;
        o.table = {"analytic bound path, n = " + std::to_string(n),
                   "2 T_G upper bound   " + number_text(2 * rep.tg_bound),
                   "sum p h lower bound " + number_text(rep.first_moment_lb),
                   std::string(rep.holds ? "HOLDS" : "NOT CERTIFIED")};
        return o;
    }
    if (source == "eulerian") {
        const int n = static_cast<int>(io::int_from(arg(a, "n"), "n"));
        std::string emode = a.value("eulerian_mode", std::string("auto"));
        if (emode == "auto") emode = n <= kExactEulerianLimit ? "exact" : "float";
        o.result["n"] = n;
        o.result["eulerian_mode"] = emode;
        if (emode == "exact") {
            auto adj = adjoint_from_distribution(eulerian_distribution_exact(n));
            Rational dimx = a.contains("dimx") && !a.at("dimx").is_null() ? io::rational_from(a.at("dimx"), "dimx")
                                                                          : Rational(0);
            if (mode == ConditionMode::full && dimx == 0) throw InvalidInput("full mode needs --dimx");
            report_into(o, check_conditions(adj, dimx, mode));
        } else {
            auto adj = adjoint_from_distribution(eulerian_distribution_float(n));
            double dimx = a.contains("dimx") && !a.at("dimx").is_null()
                              ? io::rational_from(a.at("dimx"), "dimx").get_d()
                              : 0.0;
            if (mode == ConditionMode::full && dimx == 0) throw InvalidInput("full mode needs --dimx");
            report_into(o, check_conditions(adj, dimx, mode));
        }
        return o;
    }
    std::vector<Rational> h;
    std::optional<Rational> default_dimx;
    if (source == "hodge") {
        h = rational_list(arg(a, "hodge"), "hodge");
    } else if (source == "polytope") {
        auto P = io::polytope_from(arg(a, "polytope"));
        auto t = hodge_numbers(P, io::int_from(arg(a, "m"), "m"), io::intvec_from(arg(a, "lambda"), "lambda"),
                               correction_from(a.value("correction", std::string("trivial"))), count_options(ctx));
        for (Int x : t.h) h.emplace_back(static_cast<long>(x));
        default_dimx = Rational(static_cast<long>(lattice_points(P, 1, count_options(ctx))));
        o.result["h"] = t.h;
    } else {
        throw InvalidInput("source must be hodge, polytope, eulerian or analytic");
    }
    auto adj = adjoint_hodge(h, group_from(a.value("group", std::string("gl"))), static_cast<int>(a.value("sign", 1)));
    Rational dimx;
    if (a.contains("dimx") && !a.at("dimx").is_null()) dimx = io::rational_from(a.at("dimx"), "dimx");
    else if (default_dimx) dimx = *default_dimx;
    else if (mode == ConditionMode::full) throw InvalidInput("full mode needs --dimx");
    o.result["dimx"] = to_string(dimx);
    o.result["adjoint"] = adjoint_json(adj);
    report_into(o, check_conditions(adj, dimx, mode));
    return o;
}

inline Outcome thm_a_cmd(const json& a, const Context&) {
    std::vector<Integer> parts;
    for (const auto& x : arg(a, "partition")) parts.push_back(io::integer_from(x, "partition"));
    const Integer r = io::integer_from(arg(a, "r"), "r");
    auto res = theorem_a_check(WeightPartition(parts), r);
    Outcome o;
    o.result = {{"large", res.large}, {"failed_conditions", res.failed_conditions}, {"notes", res.notes}};
    o.table = {std::string("large = ") + (res.large ? "true" : "false")};
    if (!res.failed_conditions.empty()) o.table.push_back("failed: " + join(res.failed_conditions, ", "));
    for (const auto& n : res.notes) o.table.push_back(n);
    return o;
}

inline Outcome gabber_cmd(const json& a, const Context&) {
    WeightVector w;
    Outcome o;
    if (a.contains("sides") && !a.at("sides").is_null()) {
        auto sides = io::intvec_from(a.at("sides"), "sides");
        const Int b = a.contains("corner") ? io::int_from(a.at("corner"), "corner") : 1;
        if (sides.size() != 2) throw UnsupportedDimension("weights from sides are available for n = 2");
        auto P = truncated_prism(sides, {b, 1});
        std::vector<Term<Rational>> terms;
        for (const auto& v : P.vertices()) terms.push_back({v, Rational(1)});
        w = curve_weights_checked(LaurentPolynomial(2, terms));
        o.result["weights_source"] = "truncated prism curve";
    } else {
        std::vector<Integer> m;
        for (const auto& x : arg(a, "weights")) m.push_back(io::integer_from(x, "weights"));
        w = WeightVector{static_cast<int>((m.size() + 2) / 2), m};
    }
    Integer R = a.contains("R") && !a.at("R").is_null() ? io::integer_from(a.at("R"), "R") : w.total();
    auto rep = gabber_check(R, w, a.value("waive_g2", false));
    o.result["R"] = io::to_json(R);
    o.result["weights"] = io::weights_to_json(w);
    o.result["verdict"] = to_string(rep.verdict);
    o.result["reasons"] = rep.reasons;
    o.result["probabilistic_primality"] = rep.probabilistic;
    o.table = {"R = " + R.get_str() + ", weights " + io::tuple_string(w.m), to_string(rep.verdict)};
    for (const auto& r : rep.reasons) o.table.push_back("  " + r);
    return o;
}

inline Outcome curve_monodromy_cmd(const json& a, const Context&) {
    auto rep = curve_monodromy_check(io::laurent_from(arg(a, "poly")));
    Outcome o;
    json parts = json::array();
    for (const auto& c : rep.partition.c) parts.push_back(io::to_json(c));
    json gcds = json::array();
    for (const auto& g : rep.side_gcds) gcds.push_back(io::to_json(g));
    o.result = {{"weights", io::weights_to_json(rep.weights)},
                {"partition", parts},
                {"r", io::to_json(rep.r)},
                {"large", rep.direct.large},
                {"failed_conditions", rep.direct.failed_conditions},
                {"is_triangle", rep.is_triangle},
                {"side_gcds", gcds},
                {"area", to_string(rep.area)},
                {"sufficient_configuration", rep.sufficient_configuration}};
    o.table = {"weights " + io::tuple_string(rep.weights.m) + ", r = " + rep.r.get_str(),
               std::string("direct criterion: ") + (rep.direct.large ? "large" : "not large") +
                   (rep.direct.failed_conditions.empty() ? "" : " (" + join(rep.direct.failed_conditions, ", ") + ")"),
               "triangle " + yes_no(rep.is_triangle) + ", area " + to_string(rep.area),
               "sufficient triangle configuration: " + yes_no(rep.sufficient_configuration)};
    return o;
}

inline Outcome pyramid_monodromy_cmd(const json& a, const Context&) {
    auto p = io::intvec_from(arg(a, "params"), "params");
    if (p.size() != 3) throw InvalidInput("pyramid parameters are a b c");
    auto rep = pyramid_monodromy_check(p[0], p[1], p[2]);
    Outcome o;
    o.result = {{"r", io::to_json(rep.r)},
                {"R", io::to_json(rep.R)},
                {"r_at_least_two", rep.r_at_least_two},
                {"verbatim_bound", io::to_json(rep.verbatim_bound)},
                {"verbatim_holds", rep.verbatim_holds},
                {"canonical_bound", io::to_json(rep.canonical_bound)},
                {"canonical_holds", rep.canonical_holds}};
    o.table = {"r = " + rep.r.get_str() + ", R = 2abc = " + rep.R.get_str(),
               "r >= 2                       " + yes_no(rep.r_at_least_two),
               "R > (72 r^2 + 1)^2 = " + rep.verbatim_bound.get_str() + "  " + yes_no(rep.verbatim_holds),
               "R > 72 (r^2 + 1)^2 = " + rep.canonical_bound.get_str() + "  " + yes_no(rep.canonical_holds)};
    return o;
}

inline Outcome prime_truncation_cmd(const json& a, const Context&) {
    auto r = find_prime_truncation(io::intvec_from(arg(a, "sides"), "sides"));
    Outcome o;
    o.result = {{"b", r.b}, {"N", io::to_json(r.N)}, {"probabilistic", r.probabilistic}};
    o.table = {"b = " + std::to_string(r.b) + ", N = " + r.N.get_str() + (r.probabilistic ? " (probable prime)" : "")};
    return o;
}

inline FiniteFieldPoly ff_poly(const json& a) {
    const json& pj = arg(a, "poly");
    Int q = 0;
    if (a.contains("q") && !a.at("q").is_null()) q = io::int_from(a.at("q"), "q");
    else if (pj.contains("q")) q = io::int_from(pj.at("q"), "q");
    else throw InvalidInput("field size q is required");
    return FiniteFieldPoly::reduce(io::laurent_from(pj), q);
}

inline int ff_ext(const json& a) {
    if (a.contains("ext") && !a.at("ext").is_null()) return static_cast<int>(io::int_from(a.at("ext"), "ext"));
    const json& pj = arg(a, "poly");
    if (pj.contains("ext")) return static_cast<int>(io::int_from(pj.at("ext"), "ext"));
    return 1;
}

inline Outcome oracle_cmd(const std::string& sub, const json& a, const Context& ctx) {
    Outcome o;
    if (sub == "weil-suite") {
        const auto seed = a.value("seed", std::uint64_t(20240611));
        const int curves = static_cast<int>(a.value("curves", 100));
        auto rep = weil_suite(seed, curves, 8, 6, oracle_options(ctx));
        o.result = {{"seed", rep.seed},
                    {"curves", rep.curves},
                    {"checks", rep.checks},
                    {"violations", rep.violations},
                    {"min_margin", rep.min_margin},
                    {"violation_details", rep.violation_details}};
        o.table = {std::to_string(rep.curves) + " curves, " + std::to_string(rep.checks) + " checks, " +
                       std::to_string(rep.violations) + " violations",
                   "smallest margin " + number_text(rep.min_margin)};
        for (const auto& d : rep.violation_details) o.table.push_back("  VIOLATION " + d);
        if (rep.violations) o.exit_code = 3;
        return o;
    }
    auto f = ff_poly(a);
    o.result["q"] = f.q;
    if (sub == "nondeg") {
        const int ext = ff_ext(a);
        auto rep = nondegeneracy_report(f, ext, oracle_options(ctx));
        o.result["ext"] = ext;
        o.result["nondegenerate"] = rep.nondegenerate;
        if (!rep.nondegenerate)
            o.result["witness"] = {{"face_dim", rep.witness_face_dim},
                                   {"face_exponents", rep.witness_face},
                                   {"point", rep.witness_point}};
        o.table = {std::string(rep.nondegenerate ? "nondegenerate" : "DEGENERATE") + " over GF(" +
                   std::to_string(f.q) + "^" + std::to_string(ext) + ")"};
        if (!rep.nondegenerate)
            o.table.push_back("witness on a " + std::to_string(rep.witness_face_dim) + "-face at point " +
                              json(rep.witness_point).dump());
    } else if (sub == "count") {
        const int ext = ff_ext(a);
        const Int n = count_points(f, ext, oracle_options(ctx));
        o.result["ext"] = ext;
        o.result["count"] = n;
        o.table = {"N = " + std::to_string(n) + " over GF(" + std::to_string(f.q) + "^" + std::to_string(ext) + ")"};
    } else if (sub == "weil") {
        std::vector<int> degrees{1, 2};
        if (a.contains("degrees") && !a.at("degrees").is_null()) degrees = a.at("degrees").get<std::vector<int>>();
        auto rep = weil_bound_check(f, degrees, oracle_options(ctx), true);
        json ds = json::array();
        for (const auto& d : rep.degrees) {
            ds.push_back({{"d", d.d}, {"count", d.count}, {"q^d", io::to_json(d.q_power)}, {"window", d.window},
                          {"margin", d.margin}, {"holds", d.holds}});
            o.table.push_back("d=" + std::to_string(d.d) + "  N=" + std::to_string(d.count) + "  q^d=" +
                              d.q_power.get_str() + "  window " + number_text(d.window) + "  margin " +
                              number_text(d.margin));
        }
        o.result["f0"] = io::to_json(rep.f0);
        o.result["f1"] = io::to_json(rep.f1);
        o.result["degrees"] = ds;
        o.result["holds"] = rep.holds;
    } else {
        throw InvalidInput("unknown oracle subcommand " + sub);
    }
    return o;
}

}  // namespace detail

/// Executes a canonical request.
inline Outcome execute(const json& request, const Context& ctx) {
    using namespace detail;
    const std::string cmd = arg(request, "command");
    const json& a = request.contains("args") ? request.at("args") : json::object();
    if (cmd == "polytope info") return polytope_info(a, ctx);
    if (cmd == "curve weights") return curve_weights_cmd(a, ctx);
    if (cmd == "surface weights") return surface_weights_cmd(a, ctx);
    if (cmd == "surface top-weight") return surface_top_weight_cmd(a, ctx);
    if (cmd == "dl curve") return dl_cmd(a, ctx, false);
    if (cmd == "dl surface") return dl_cmd(a, ctx, true);
    if (cmd == "hodge") return hodge_cmd(a, ctx);
    if (cmd == "eulerian") return eulerian_cmd(a, ctx);
    if (cmd == "adjoint") return adjoint_cmd(a, ctx);
    if (cmd == "conditions") return conditions_cmd(a, ctx);
    if (cmd == "monodromy thm-a") return thm_a_cmd(a, ctx);
    if (cmd == "monodromy gabber") return gabber_cmd(a, ctx);
    if (cmd == "monodromy curve") return curve_monodromy_cmd(a, ctx);
    if (cmd == "monodromy pyramid") return pyramid_monodromy_cmd(a, ctx);
    if (cmd == "search prime-truncation") return prime_truncation_cmd(a, ctx);
    if (cmd.rfind("oracle ", 0) == 0) return oracle_cmd(cmd.substr(7), a, ctx);
    throw InvalidInput("unknown command '" + cmd + "'");
}

inline json make_report(const json& request, const Outcome& o) {
    json seed = request.contains("args") && request.at("args").contains("seed") ? request.at("args").at("seed")
                                                                                : json(nullptr);
    return {{"manifest",
             {{"command", request.at("command")},
              {"inputs", request},
              {"version", kVersion},
              {"seed", seed},
              {"sha256", sha256_hex(o.result.dump())}}},
            {"result", o.result}};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + " is not valid JSON: " + e.what());
    }
}

/// Re-executes the request stored in a report and compares results.
inline Outcome verify(const json& report, const Context& ctx) {
    if (!report.contains("manifest") || !report.at("manifest").contains("inputs"))
        throw InvalidInput("report has no manifest inputs");
    const json& m = report.at("manifest");
    auto again = execute(m.at("inputs"), ctx);
    const std::string digest = sha256_hex(again.result.dump());
    const std::string recorded = m.value("sha256", std::string());
    const bool same = report.contains("result") && report.at("result") == again.result && digest == recorded;
    Outcome o;
    o.result = {{"command", m.at("command")}, {"verified", same}, {"recorded_sha256", recorded}, {"sha256", digest}};
    o.table = {std::string(same ? "VERIFIED " : "MISMATCH ") + m.at("command").get<std::string>(), "sha256 " + digest};
    if (!same) throw VerificationFailed("re-execution of '" + m.at("command").get<std::string>() + "' differs");
    return o;
}

/// Parses argv, runs the command and writes the report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact weight computations for Newton polytopes", "ntw"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table";
    unsigned threads = 1;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--threads", threads, "Worker thread cap")->check(CLI::Range(1u, 256u));

    json request;
    std::string file;
    auto set = [&](const std::string& cmd, json args) { request = {{"command", cmd}, {"args", std::move(args)}}; };

    // polytope info
    auto* polytope = app.add_subcommand("polytope", "Polytope data")->require_subcommand(1);
    auto* pinfo = polytope->add_subcommand("info", "Vertices, facets, volumes and point counts");
    pinfo->add_option("file", file, "Polytope JSON")->required();
    pinfo->callback([&] { set("polytope info", {{"polytope", read_json_file(file)}}); });

    // curve weights
    auto* curve = app.add_subcommand("curve", "Curves in G_m^2")->require_subcommand(1);
    auto* cweights = curve->add_subcommand("weights", "Weight multiplicities of the fiber functor");
    std::string method = "both";
    std::vector<std::string> expect;
    std::string expect_total;
    cweights->add_option("file", file, "Laurent polynomial JSON")->required();
    cweights->add_option("--method", method)->check(CLI::IsMember({"slopes", "strata", "both"}));
    cweights->add_option("--expect", expect, "Claimed w0,w1,w2")->delimiter(',');
    cweights->add_option("--expect-total", expect_total, "Claimed total");
    cweights->callback([&] {
        json args{{"poly", read_json_file(file)}, {"method", method}};
        if (!expect.empty()) args["expect"] = expect;
        if (!expect_total.empty()) args["expect_total"] = expect_total;
        set("curve weights", args);
    });

    // surface
    auto* surface = app.add_subcommand("surface", "Surfaces in G_m^3")->require_subcommand(1);
    auto* sweights = surface->add_subcommand("weights", "Stratum-by-stratum weight assembly");
    std::vector<std::string> family;
    std::vector<Int> apex;
    sweights->add_option("--family", family, "prism a b c | pyramid a b c")->expected(4);
    sweights->add_option("--apex", apex, "Pyramid apex offset d,e")->delimiter(',')->expected(2);
    sweights->add_option("file", file, "Polytope JSON");
    sweights->callback([&] {
        if (!family.empty()) {
            json params = json::array();
            for (std::size_t i = 1; i < family.size(); ++i) {
                try {
                    params.push_back(std::stoll(family[i]));
                } catch (const std::exception&) {
                    throw UsageError("family parameters must be integers");
                }
            }
            json args{{"family", family[0]}, {"params", params}};
            if (!apex.empty()) args["apex"] = apex;
            set("surface weights", args);
        } else if (!file.empty()) {
            set("surface weights", {{"polytope", read_json_file(file)}});
        } else {
            throw UsageError("surface weights needs --family or a polytope file");
        }
    });
    auto* stop = surface->add_subcommand("top-weight", "Top weight of the truncated prism family");
    std::vector<Int> sides;
    stop->add_option("--sides", sides, "b1,...,bn")->delimiter(',')->required();
    stop->callback([&] { set("surface top-weight", {{"sides", sides}}); });

    // dl
    auto* dl = app.add_subcommand("dl", "Signed weights from face data")->require_subcommand(1);
    auto* dlc = dl->add_subcommand("curve", "Curve formula");
    auto* dls = dl->add_subcommand("surface", "Surface formula");
    dlc->add_option("file", file, "Polytope or polynomial JSON")->required();
    dls->add_option("file", file, "Polytope or polynomial JSON")->required();
    dlc->callback([&] { set("dl curve", {{"input", read_json_file(file)}}); });
    dls->callback([&] { set("dl surface", {{"input", read_json_file(file)}}); });

    // hodge
    auto* hodge = app.add_subcommand("hodge", "Per-character Hodge numbers");
    Int m = 1;
    std::vector<Int> lambda;
    std::string correction = "trivial";
    hodge->add_option("--polytope", file, "Polytope JSON")->required();
    hodge->add_option("--m", m, "Modulus")->required();
    hodge->add_option("--lambda", lambda, "Residue class l1,...,ln")->delimiter(',')->required();
    hodge->add_option("--correction", correction)->check(CLI::IsMember({"none", "trivial", "all"}));
    hodge->callback([&] {
        set("hodge", {{"polytope", read_json_file(file)}, {"m", m}, {"lambda", lambda}, {"correction", correction}});
    });

    // eulerian
    auto* eul = app.add_subcommand("eulerian", "Distribution of the sum of two centred descent counts");
    int n = 0;
    bool exact = false, floating = false, full = false;
    eul->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    auto* ex = eul->add_flag("--exact", exact);
    eul->add_flag("--float", floating)->excludes(ex);
    eul->add_flag("--full", full, "Print every beta_p");
    eul->callback([&] {
        set("eulerian", {{"n", n}, {"mode", exact ? "exact" : floating ? "float" : "auto"}, {"full", full}});
    });

    // adjoint
    auto* adj = app.add_subcommand("adjoint", "Adjoint Hodge numbers");
    std::vector<std::string> hvals;
    std::string group = "gl", sign = "+";
    adj->add_option("--hodge", hvals, "h0,...,h_{n-1}")->delimiter(',')->required();
    adj->add_option("--group", group)->check(CLI::IsMember({"gl", "go"}));
    adj->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
    adj->callback([&] { set("adjoint", {{"hodge", hvals}, {"group", group}, {"sign", sign == "-" ? -1 : 1}}); });

    // conditions
    auto* cond = app.add_subcommand("conditions", "Numerical conditions on adjoint Hodge numbers");
    std::string source;
    std::string dimx;
    bool simplified = false;
    cond->add_option("--adjoint-from", source, "hodge | polytope | eulerian | analytic")
        ->required()
        ->check(CLI::IsMember({"hodge", "polytope", "eulerian", "analytic"}));
    cond->add_option("--hodge", hvals, "h0,...,h_{n-1}")->delimiter(',');
    cond->add_option("--polytope", file, "Polytope JSON");
    cond->add_option("--m", m);
    cond->add_option("--lambda", lambda)->delimiter(',');
    cond->add_option("--n", n);
    cond->add_option("--group", group)->check(CLI::IsMember({"gl", "go", "so"}));
    cond->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
    cond->add_option("--dimx", dimx);
    cond->add_flag("--simplified", simplified);
    auto* cexact = cond->add_flag("--exact", exact);
    cond->add_flag("--float", floating)->excludes(cexact);
    cond->callback([&] {
        json args{{"source", source}, {"simplified", simplified}, {"group", group}, {"sign", sign == "-" ? -1 : 1}};
        if (!dimx.empty()) args["dimx"] = dimx;
        if (source == "hodge") {
            if (hvals.empty()) throw UsageError("--adjoint-from hodge needs --hodge");
            args["hodge"] = hvals;
        } else if (source == "polytope") {
            if (file.empty() || lambda.empty()) throw UsageError("--adjoint-from polytope needs --polytope, --m, --lambda");
            args["polytope"] = read_json_file(file);
            args["m"] = m;
            args["lambda"] = lambda;
            args["correction"] = correction;
        } else {
            if (n <= 0) throw UsageError("--adjoint-from " + source + " needs --n");
            args["n"] = n;
            if (source == "eulerian") args["eulerian_mode"] = exact ? "exact" : floating ? "float" : "auto";
        }
        set("conditions", args);
    });

    // monodromy
    auto* mono = app.add_subcommand("monodromy", "Monodromy certificates")->require_subcommand(1);
    auto* tha = mono->add_subcommand("thm-a", "Eigenvalue-partition criterion");
    std::vector<std::string> partition;
    std::string r;
    tha->add_option("--partition", partition, "c1,c2,... descending")->delimiter(',')->required();
    tha->add_option("--r", r)->required();
    tha->callback([&] { set("monodromy thm-a", {{"partition", partition}, {"r", r}}); });
    auto* gab = mono->add_subcommand("gabber", "Prime-dimension criterion");
    std::vector<std::string> weights;
    std::string R;
    Int corner = 1;
    bool waive = false;
    gab->add_option("--weights", weights, "Multiplicities m0,m1,...")->delimiter(',');
    gab->add_option("--R", R, "Dimension (defaults to the weight total)");
    gab->add_option("--sides", sides, "Truncated prism sides a,b (curve case)")->delimiter(',');
    gab->add_option("--corner", corner, "Truncation leg b");
    gab->add_flag("--waive-g2", waive, "Accept R = 7");
    gab->callback([&] {
        json args{{"waive_g2", waive}};
        if (!R.empty()) args["R"] = R;
        if (!sides.empty()) {
            args["sides"] = sides;
            args["corner"] = corner;
        } else if (!weights.empty()) {
            args["weights"] = weights;
        } else {
            throw UsageError("gabber needs --weights or --sides");
        }
        set("monodromy gabber", args);
    });
    auto* mcurve = mono->add_subcommand("curve", "Criterion applied to a curve");
    mcurve->add_option("file", file, "Laurent polynomial JSON")->required();
    mcurve->callback([&] { set("monodromy curve", {{"poly", read_json_file(file)}}); });
    auto* mpyr = mono->add_subcommand("pyramid", "Pyramid family bounds");
    std::vector<Int> abc;
    mpyr->add_option("abc", abc, "a b c")->required()->expected(3);
    mpyr->callback([&] { set("monodromy pyramid", {{"params", abc}}); });

    // search
    auto* search = app.add_subcommand("search", "Searches")->require_subcommand(1);
    auto* ptr = search->add_subcommand("prime-truncation", "Smallest b with n! prod(a) - b prime");
    ptr->add_option("--sides", sides, "a1,...,an")->delimiter(',')->required();
    ptr->callback([&] { set("search prime-truncation", {{"sides", sides}}); });

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Finite-field brute force")->require_subcommand(1);
    Int q = 0;
    int ext = 0;
    std::vector<int> degrees;
    std::uint64_t seed = 20240611;
    int curves = 100;
    for (const char* name : {"nondeg", "count", "weil"}) {
        auto* sub = oracle->add_subcommand(name, std::string("oracle ") + name);
        sub->add_option("file", file, "Laurent polynomial JSON")->required();
        sub->add_option("--q", q, "Prime field size");
        if (std::string(name) == "weil") sub->add_option("--degrees", degrees, "d1,d2,...")->delimiter(',');
        else sub->add_option("--ext", ext, "Extension degree")->check(CLI::Range(1, 3));
        sub->callback([&, name] {
            json args{{"poly", read_json_file(file)}};
            if (q) args["q"] = q;
            if (ext) args["ext"] = ext;
            if (!degrees.empty()) args["degrees"] = degrees;
            set(std::string("oracle ") + name, args);
        });
    }
    auto* suite = oracle->add_subcommand("weil-suite", "Randomized weight-bound suite");
    suite->add_option("--seed", seed);
    suite->add_option("--curves", curves)->check(CLI::PositiveNumber);
    suite->callback([&] { set("oracle weil-suite", {{"seed", seed}, {"curves", curves}}); });

    // verify
    auto* ver = app.add_subcommand("verify", "Re-run a JSON report and compare");
    ver->add_option("report", file, "Report JSON")->required();
    bool verifying = false;
    ver->callback([&] {
        verifying = true;
        request = read_json_file(file);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return e.name() == "BoundViolated" ? 3 : 1;
    }

    Context ctx{threads};
    try {
        Outcome o = verifying ? verify(request, ctx) : execute(request, ctx);
        if (format == "json") {
            json doc = verifying ? json{{"result", o.result}} : make_report(request, o);
            out << doc.dump(2) << "\n";
        } else {
            for (const auto& line : o.table) out << line << "\n";
        }
        return o.exit_code;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return e.name() == "BoundViolated" ? 3 : 1;
    } catch (const json::exception& e) {
        err << "InvalidInput: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ntw::cli
