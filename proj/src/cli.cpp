#include "monomap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "monomap/divisor.hpp"
#include "monomap/dynamics.hpp"
#include "monomap/poly.hpp"
#include "monomap/stability.hpp"

namespace monomap::cli {

using json = nlohmann::ordered_json;

namespace {

const char* kVersion = "monomap 0.1.0";

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// U+2212 MINUS SIGN shows up when examples are pasted from typeset text
std::string normalize_minus(std::string s) {
    const std::string minus = "\xE2\x88\x92";
    for (std::size_t k = s.find(minus); k != std::string::npos; k = s.find(minus, k)) s.replace(k, minus.size(), "-");
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t k = s.find(sep, start);
        out.push_back(s.substr(start, k == std::string::npos ? std::string::npos : k - start));
        if (k == std::string::npos) break;
        start = k + 1;
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read input file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return normalize_minus(ss.str());
}

json load_json(const std::string& spec) {
    std::string t = trim(spec);
    std::string text = (!t.empty() && (t[0] == '[' || t[0] == '{')) ? t : slurp(t);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte, "");
    }
}

Rational rational_of(const json& v, const char* what) {
    if (v.is_number_integer()) return v.is_number_unsigned() ? Rational(v.get<std::uint64_t>()) : Rational(v.get<std::int64_t>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_float())
        throw DomainError(std::string(what) + ": floating point entry " + v.dump() + " (write rationals as \"p/q\")");
    throw DomainError(std::string(what) + ": expected an integer or a \"p/q\" string, got " + v.dump());
}

long long_of(const json& v, const char* what) {
    if (!v.is_number_integer()) throw DomainError(std::string(what) + ": expected an integer, got " + v.dump());
    return v.get<long>();
}

// structural integers stay JSON numbers; values beyond 64 bits fall back to strings
json small(const Integer& a) {
    if (a >= std::numeric_limits<long long>::min() && a <= std::numeric_limits<long long>::max())
        return a.convert_to<long long>();
    return to_string(a);
}

json int_matrix_json(const IntMatrix& A) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < A.cols(); ++j) r.push_back(small(A(i, j)));
        rows.push_back(r);
    }
    return rows;
}

json vec_json(const IntVector& v) {
    json r = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) r.push_back(small(v(i)));
    return r;
}

json cone_json(const ConeId& c) {
    json r = json::array();
    for (int i : c) r.push_back(i);
    return r;
}

json fan_json(const Fan& f) {
    json rays = json::array();
    for (auto& r : f.rays) rays.push_back(vec_json(r));
    json cones = json::array();
    for (auto& c : f.max_cones) cones.push_back(cone_json(c));
    return json{{"dim", f.dim}, {"rays", rays}, {"max_cones", cones}};
}

json exponent_json(const std::optional<Exponent>& e) {
    if (!e) return nullptr;
    return json(*e);
}

// 12 significant digits; golden files compare the text
json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return json::parse(s.str());
}

std::string divisor_text(const TWeilDivisor& D) {
    std::string out;
    for (std::size_t i = 0; i < D.coeffs.size(); ++i) {
        const Rational& c = D.coeffs[i];
        if (c == 0) continue;
        std::string mag = to_string(c < 0 ? Rational(-c) : c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (mag != "1") out += mag;
        out += "V(tau_" + std::to_string(i) + ")";
    }
    return out.empty() ? "0" : out;
}

IntMatrix int_matrix(const std::string& spec, const char* op) { return to_int(read_matrix(spec), op); }

// the matrix in the coordinates of the fan's lattice
RatMatrix fan_coords(const RatMatrix& A, const FanSpec& fs, const char* op) {
    if (!fs.lattice) return A;
    if (A.rows() != fs.fan.dim || A.cols() != fs.fan.dim)
        throw DimensionError(std::string(op) + ": matrix size does not match the fan dimension");
    if (!preserves_lattice(A, *fs.lattice))
        throw DomainError(std::string(op) + ": matrix does not preserve the weighted lattice");
    return to_lattice_coords(A, *fs.lattice);
}

void require_fan_dim(const Eigen::Index n, const Fan& f, const char* op) {
    if (n != f.dim)
        throw DimensionError(std::string(op) + ": " + std::to_string(n) + "x" + std::to_string(n) +
                             " matrix on a fan of dimension " + std::to_string(f.dim));
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string fmt_double(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

// ---- subcommands ----

int cmd_fan(const RunConfig& c, std::ostream& out) {
    FanSpec fs = read_fan(c.fan);
    json j = fan_json(fs.fan);
    j["kind"] = fs.kind;
    j["n_cones"] = fs.fan.n_cones();
    j["complete"] = fs.fan.complete;
    if (fs.lattice) {
        json w = json::array();
        for (auto& d : fs.lattice->weights) w.push_back(small(d));
        j["weights"] = w;
        j["well_formed"] = fs.lattice->well_formed;
    }
    if (c.format == "table") {
        out << "fan " << fs.kind << ", dim " << fs.fan.dim << ", " << fs.fan.rays.size() << " rays, "
            << fs.fan.max_cones.size() << " maximal cones\n";
        for (std::size_t i = 0; i < fs.fan.rays.size(); ++i) out << "  tau_" << i << "  " << j["rays"][i].dump() << '\n';
        return 0;
    }
    emit(out, j);
    return 0;
}

int cmd_pullback(const RunConfig& c, std::ostream& out) {
    FanSpec fs = read_fan(c.fan);
    RatMatrix A = read_matrix(c.matrix);
    require_fan_dim(A.rows(), fs.fan, "pullback");
    RatMatrix C = fan_coords(A, fs, "pullback");
    json dj = load_json(c.divisor);
    const json& arr = dj.is_object() ? dj.at("coeffs") : dj;
    if (!arr.is_array()) throw DomainError("pullback: divisor must be {\"coeffs\": [...]}");
    TWeilDivisor D;
    for (auto& v : arr) D.coeffs.push_back(rational_of(v, "pullback divisor"));
    if (D.coeffs.size() != fs.fan.rays.size())
        throw DimensionError("pullback: divisor has " + std::to_string(D.coeffs.size()) + " coefficients for " +
                             std::to_string(fs.fan.rays.size()) + " rays");
    TWeilDivisor P = pullback_divisor(C, fs.fan, fs.fan, D);
    json coeffs = json::array();
    for (auto& q : P.coeffs) coeffs.push_back(to_string(q));
    json j{{"coeffs", coeffs}, {"divisor", divisor_text(P)}};
    if (fs.lattice)
        j["weighted_degree"] = to_string(weighted_degree(P, *fs.lattice));
    else if (fs.kind == "pn")
        j["degree"] = to_string(degree_Pn(fs.fan, P));
    if (c.format == "table") {
        out << divisor_text(P) << '\n';
        return 0;
    }
    emit(out, j);
    return 0;
}

json growth_json(const GrowthExponent& g) {
    return json{{"ell", g.ell}, {"provenance", to_string(g.provenance)}, {"slope", num(g.slope)}, {"residual", num(g.residual)}};
}

int cmd_degseq(const RunConfig& c, std::ostream& out) {
    const long K = c.k_max > 0 ? c.k_max : 20;
    RatMatrix R = read_matrix(c.matrix);
    std::vector<std::string> degs;
    std::vector<double> normalized;
    json summary;
    summary["k_max"] = K;
    if (!c.weights.empty()) {
        WeightedLattice w = weighted_lattice(read_weights(c.weights));
        auto seq = degree_sequence(R, K, w);
        SpectrumReport s = spectral_radius(R);
        for (long k = 1; k <= K; ++k) {
            degs.push_back(to_string(seq[k - 1]));
            normalized.push_back(std::exp(log_abs(seq[k - 1]) - k * std::log(s.rho)));
        }
        summary["weights"] = split(c.weights, ',');
        summary["rho"] = num(s.rho);
    } else {
        IntMatrix A = to_int(R, "degseq");
        DegreeSequenceReport rep = degree_report(A, K);
        for (auto& d : rep.degrees) degs.push_back(to_string(d));
        normalized = rep.normalized;
        summary["rho"] = num(rep.rho);
        summary["growth"] = rep.ell ? growth_json(*rep.ell) : json(nullptr);
        summary["c_min"] = num(rep.c_min);
        summary["c_max"] = num(rep.c_max);
        if (c.oracle_check > 0) {
            json checks = json::array();
            bool all = true;
            for (long k = 1; k <= std::min(c.oracle_check, K); ++k) {
                Integer o = oracle_degree_by_composition(A, k);
                bool eq = o == rep.degrees[k - 1];
                all = all && eq;
                checks.push_back(json{{"k", k}, {"oracle", to_string(o)}, {"agree", eq}});
            }
            summary["oracle_check"] = json{{"agree", all}, {"values", checks}};
        }
        if (c.period > 0) {
            AsymptoticConstants ac = asymptotic_constants(A, rep.degrees, c.period, c.tol);
            json cross = json::array();
            for (auto& x : ac.cross) cross.push_back(x ? num(*x) : json(nullptr));
            json C = json::array(), cauchy = json::array();
            for (double x : ac.C) C.push_back(num(x));
            for (double x : ac.cauchy) cauchy.push_back(num(x));
            summary["constants"] = json{{"period", ac.period}, {"tol", num(c.tol)}, {"C", C}, {"cauchy", cauchy}, {"cross", cross}};
        }
    }
    if (c.format == "csv" || c.format == "table") {
        const bool csv = c.format == "csv";
        out << (csv ? "k,degree,normalized\n" : "   k  degree  normalized\n");
        for (long k = 1; k <= K; ++k) {
            if (csv)
                out << k << ',' << degs[k - 1] << ',' << fmt_double(normalized[k - 1]) << '\n';
            else
                out << std::setw(4) << k << "  " << degs[k - 1] << "  " << fmt_double(normalized[k - 1]) << '\n';
        }
        if (!c.summary.empty()) {
            std::ofstream s(c.summary);
            if (!s) throw DomainError("degseq: cannot write summary file '" + c.summary + "'");
            s << summary.dump(2) << '\n';
        }
        return 0;
    }
    json rows = json::array();
    for (long k = 1; k <= K; ++k) rows.push_back(json{{"k", k}, {"degree", degs[k - 1]}, {"normalized", num(normalized[k - 1])}});
    summary["sequence"] = rows;
    emit(out, summary);
    return 0;
}

int cmd_dyndeg(const RunConfig& c, std::ostream& out) {
    const long K = c.k_max > 0 ? c.k_max : 60;
    IntMatrix A = int_matrix(c.matrix, "dyndeg");
    DynDegEstimate e = dynamical_degree_estimate(A, K);
    if (c.format == "csv") {
        out << "k,root\n";
        for (long k = 1; k <= K; ++k) out << k << ',' << fmt_double(e.roots[k - 1]) << '\n';
        return 0;
    }
    if (c.format == "table") {
        out << "rho " << fmt_double(e.rho) << "  ||A^k||^(1/k) at k=" << K << ": " << fmt_double(e.roots.back())
            << "  tail estimate " << fmt_double(e.limit) << '\n';
        return 0;
    }
    json roots = json::array();
    for (double r : e.roots) roots.push_back(num(r));
    emit(out, json{{"k_max", K},
                   {"rho", num(e.rho)},
                   {"root_at_kmax", num(e.roots.back())},
                   {"error_at_kmax", num(std::abs(e.roots.back() - e.rho))},
                   {"limit", num(e.limit)},
                   {"roots", roots}});
    return 0;
}

int cmd_scan(const RunConfig& c, std::ostream& out) {
    const long K = c.k_max > 0 ? c.k_max : 2000;
    IntMatrix A = int_matrix(c.matrix, "scan");
    ScanStats s = normalized_degree_scan(A, K);
    if (c.format == "csv") {
        out << "k,normalized\n";
        for (std::size_t k = 0; k < s.values.size(); ++k) out << k + 1 << ',' << fmt_double(s.values[k]) << '\n';
        return 0;
    }
    json j{{"k_max", s.k_max}, {"min", num(s.min)}, {"max", num(s.max)}, {"distinct", s.distinct},
           {"max_gap", num(s.max_gap)}, {"note", s.note}};
    if (c.format == "table") {
        out << "k_max " << s.k_max << "  min " << fmt_double(s.min) << "  max " << fmt_double(s.max) << "  distinct "
            << s.distinct << "  max gap " << fmt_double(s.max_gap) << '\n'
            << s.note << '\n';
        return 0;
    }
    emit(out, j);
    return 0;
}

json witness_json(const StabilityWitness& w) {
    return json{{"ray", w.ray}, {"step", w.step}, {"cone", cone_json(w.cone)}};
}

int cmd_stability(const RunConfig& c, std::ostream& out) {
    FanSpec fs = read_fan(c.fan);
    RatMatrix R = read_matrix(c.matrix);
    require_fan_dim(R.rows(), fs.fan, "stability");
    IntMatrix A = to_int(fan_coords(R, fs, "stability"), "stability");
    StabilityReport rep = is_strongly_stable(A, fs.fan);
    json failures = json::array();
    for (auto& w : rep.failures) failures.push_back(witness_json(w));
    json traces = json::array();
    for (auto& t : rep.traces) {
        json cones = json::array();
        for (auto& s : t.cones) cones.push_back(cone_json(s));
        traces.push_back(json{{"ray", t.ray}, {"certified", t.certified}, {"cycle_start", t.cycle_start}, {"cones", cones}});
    }
    json j{{"verdict", rep.strongly_stable ? "StronglyStable" : "NotStronglyStable"},
           {"fan", fs.kind},
           {"witness", rep.witness ? witness_json(*rep.witness) : json(nullptr)},
           {"failures", failures},
           {"steps_to_certify", rep.steps_to_certify},
           {"max_steps_per_ray", rep.max_steps_per_ray},
           {"traces", traces}};
    if (c.format == "table") {
        out << j["verdict"].get<std::string>();
        if (rep.witness)
            out << ": tau_" << rep.witness->ray << " fails at step " << rep.witness->step << ", cone "
                << cone_json(rep.witness->cone).dump();
        out << '\n';
        return 0;
    }
    emit(out, j);
    return 0;
}

int cmd_stabilize(const RunConfig& c, std::ostream& out) {
    const long K = c.k_max > 0 ? c.k_max : 10;
    IntMatrix A = int_matrix(c.matrix, "stabilize");
    json j;
    if (A.rows() == 2 && A.cols() == 2) {
        Stabilizability2x2 s = non_stabilizable_2x2(A);
        if (s.kind != Stabilizability::NotApplicable) {
            j["result"] = "NotStabilizable";
            j["classification"] = to_string(s.kind);
            if (s.kind == Stabilizability::RatioRootOfUnity) j["order"] = s.order;
            emit(out, j);
            return 0;
        }
    }
    auto sf = stabilizing_fan(A, c.max_den, K);
    if (!sf) throw ResourceError("stabilize: no stabilizing fan found with k <= " + std::to_string(K) +
                                 " and denominators <= " + std::to_string(c.max_den));
    json basis = json::array();
    for (auto& v : sf->basis) basis.push_back(vec_json(v));
    bool verified = is_strongly_stable(mat_pow(A, sf->k), sf->fan).strongly_stable;
    j["result"] = "Stabilized";
    j["k"] = sf->k;
    j["basis"] = basis;
    j["fan"] = fan_json(sf->fan);
    j["verified"] = verified;
    emit(out, j);
    return 0;
}

int cmd_star(const RunConfig& c, std::ostream& out) {
    IntMatrix A = int_matrix(c.a, "star");
    IntMatrix B = int_matrix(c.b, "star");
    StarResult r = star_condition(A, B);
    IntMatrix AB = mat_mul(A, B);
    bool cdiv = equal(cdiv_pullback_matrix_p1n(AB), mat_mul(cdiv_pullback_matrix_p1n(B), cdiv_pullback_matrix_p1n(A)));
    bool pic = equal(pic_pullback_matrix_p1n(AB), mat_mul(pic_pullback_matrix_p1n(B), pic_pullback_matrix_p1n(A)));
    json w = nullptr;
    if (r.witness) {
        auto& x = *r.witness;
        w = json{{"j", x[0]}, {"i", x[1]}, {"k1", x[2]}, {"k2", x[3]}};
    }
    emit(out, json{{"holds", r.holds}, {"witness", w}, {"cdiv_functorial", cdiv}, {"pic_functorial", pic}});
    return 0;
}

int cmd_nu(const RunConfig& c, std::ostream& out) {
    RatMatrix A = read_matrix(c.matrix);
    Rational v = nu(A);
    json j{{"nu", to_string(v)}};
    if (!c.weights.empty()) {
        auto [fw, w] = fan_weighted(read_weights(c.weights));
        FanSpec fs{fw, w, "weighted"};
        require_fan_dim(A.rows(), fw, "nu");
        RatMatrix C = fan_coords(A, fs, "nu");
        TWeilDivisor D = pullback_divisor(C, fw, fw, basis_divisor(fw, 0));
        j["weighted_degree"] = to_string(weighted_degree(D, w));
    }
    if (c.format == "table") {
        out << to_string(v) << '\n';
        return 0;
    }
    emit(out, j);
    return 0;
}

int cmd_endo(const RunConfig& c, std::ostream& out) {
    FanSpec fs = read_fan(c.fan);
    RatMatrix R = read_matrix(c.matrix);
    require_fan_dim(R.rows(), fs.fan, "endo");
    IntMatrix A = to_int(fan_coords(R, fs, "endo"), "endo");
    EndomorphismReport e = analyze_endomorphism(A, fs.fan);
    json mult = json::array();
    for (auto& m : e.multipliers) mult.push_back(small(m));
    emit(out, json{{"is_morphism", e.is_morphism}, {"ray_permutation", e.ray_permutation}, {"period", e.period},
                   {"multipliers", mult}});
    return 0;
}

PolynomialMap read_map(const std::string& text, const std::string& vars) {
    if (vars.empty()) return parse_map(text);
    std::vector<std::string> names;
    for (auto& v : split(vars, ',')) names.push_back(trim(v));
    return parse_map(split(text, ';'), names);
}

std::vector<std::string> names_for(const RunConfig& c, int n) {
    if (c.vars.empty()) return default_var_names(n);
    std::vector<std::string> names;
    for (auto& v : split(c.vars, ',')) names.push_back(trim(v));
    return names;
}

std::string map_text(const PolynomialMap& f, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t j = 0; j < f.comps.size(); ++j) s += (j ? " ; " : "") + to_string(f.comps[j], names);
    return s;
}

json evidence_json(const std::vector<DegreeEvidence>& ev) {
    json a = json::array();
    for (auto& e : ev)
        a.push_back(json{{"k", e.k}, {"actual", int_matrix_json(e.actual)}, {"predicted", int_matrix_json(e.predicted)},
                         {"equal", e.equal}});
    return a;
}

int cmd_poly_deg(const RunConfig& c, std::ostream& out) {
    PolynomialMap f = read_map(c.map, c.vars);
    json dom = json::array();
    for (auto& p : f.comps) dom.push_back(p.is_laurent() ? json(nullptr) : exponent_json(dominant_term(p)));
    emit(out, json{{"n_vars", f.n_vars}, {"degree_matrix", int_matrix_json(degree_matrix(f))}, {"dominant_terms", dom}});
    return 0;
}

int cmd_poly_stable(const RunConfig& c, std::ostream& out) {
    const long K = c.k_max > 0 ? c.k_max : 4;
    PolynomialMap f = read_map(c.map, c.vars);
    PolyStabilityReport r = is_stable_poly(f, K, c.budget);
    json dom = json::array();
    for (auto& d : r.dominant_terms) dom.push_back(exponent_json(d));
    json j{{"verdict", to_string(r.verdict)}};
    if (r.verdict == PolyVerdict::UnstableCertified) j["N"] = r.N;
    j["dominant_terms"] = dom;
    j["evidence"] = evidence_json(r.verdict == PolyVerdict::StableCertified ? degree_evidence(f, K, c.budget) : r.evidence);
    emit(out, j);
    return 0;
}

int cmd_poly_compose(const RunConfig& c, std::ostream& out) {
    PolynomialMap f = read_map(c.f, c.vars), g = read_map(c.g, c.vars);
    PolynomialMap h = compose(f, g, c.budget);
    auto names = names_for(c, h.n_vars);
    json comps = json::array();
    for (auto& p : h.comps) comps.push_back(to_string(p, names));
    emit(out, json{{"map", map_text(h, names)}, {"components", comps}, {"degree_matrix", int_matrix_json(degree_matrix(h))}});
    return 0;
}

int cmd_poly_homogenize(const RunConfig& c, std::ostream& out) {
    PolynomialMap f = read_map(c.map, c.vars);
    auto names = pair_var_names(f.n_vars);
    json comps = json::array();
    for (auto& h : homogenize(f))
        comps.push_back(json{{"P", to_string(h.P, names)}, {"Q", to_string(h.Q, names)}, {"degrees", h.degrees}});
    emit(out, json{{"vars", names}, {"components", comps}});
    return 0;
}

}  // namespace

RatMatrix read_matrix(const std::string& spec) {
    json j = load_json(spec);
    const json& rows = j.is_object() ? j.at("matrix") : j;
    if (!rows.is_array() || rows.empty()) throw DimensionError("matrix: expected a nonempty array of rows");
    const std::size_t n = rows.size();
    if (!rows[0].is_array() || rows[0].empty()) throw DimensionError("matrix: rows must be nonempty arrays");
    const std::size_t m = rows[0].size();
    RatMatrix A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != m)
            throw DimensionError("matrix: row " + std::to_string(i) + " has a different length");
        for (std::size_t k = 0; k < m; ++k) A(i, k) = rational_of(rows[i][k], "matrix");
    }
    return A;
}

std::vector<Integer> read_weights(const std::string& csv) {
    std::vector<Integer> w;
    for (auto& part : split(csv, ',')) {
        Rational q = parse_rational(part);
        if (!is_integral(q)) throw DomainError("weights: '" + trim(part) + "' is not an integer");
        w.push_back(numer(q));
    }
    return w;
}

FanSpec read_fan(const std::string& spec) {
    std::string s = trim(spec);
    auto colon = s.find(':');
    if (colon != std::string::npos && s[0] != '{' && s[0] != '[') {
        std::string kind = s.substr(0, colon), arg = s.substr(colon + 1);
        if (kind == "weighted") {
            auto [f, w] = fan_weighted(read_weights(arg));
            return FanSpec{f, w, "weighted"};
        }
        if (kind == "pn" || kind == "p1n") {
            Rational q = parse_rational(arg);
            if (!is_integral(q) || q < 1) throw DomainError("fan: dimension must be a positive integer");
            long n = numer(q).convert_to<long>();
            return FanSpec{kind == "pn" ? fan_projective(n) : fan_p1n(n), std::nullopt, kind};
        }
        if (kind.size() > 1) throw DomainError("fan: unknown builtin '" + kind + "' (pn:N, p1n:N, weighted:d0,...,dn)");
    }
    json j = load_json(s);
    if (!j.is_object() || !j.contains("rays") || !j.contains("max_cones"))
        throw DomainError("fan: JSON must have \"rays\" and \"max_cones\"");
    std::vector<IntVector> rays;
    for (auto& r : j["rays"]) {
        IntVector v(static_cast<Eigen::Index>(r.size()));
        for (std::size_t i = 0; i < r.size(); ++i) v(i) = long_of(r[i], "fan ray");
        rays.push_back(v);
    }
    std::vector<std::vector<int>> cones;
    for (auto& c : j["max_cones"]) {
        std::vector<int> ids;
        for (auto& i : c) ids.push_back(static_cast<int>(long_of(i, "fan cone")));
        cones.push_back(ids);
    }
    return FanSpec{fan_custom(rays, cones), std::nullopt, "custom"};
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact stability and degree growth of toric monomial maps", "monomap"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto add_format = [&](CLI::App* s, std::vector<std::string> allowed) {
        s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(allowed))->capture_default_str();
    };
    auto add_matrix = [&](CLI::App* s) {
        s->add_option("--matrix", cfg.matrix, "matrix JSON (inline or file); rationals as \"p/q\"")->required();
    };
    // --fan, or the shorthands --pn N, --p1n N, --weighted d0,...,dn
    std::string pn, p1n, weighted;
    auto add_fan = [&](CLI::App* s) {
        auto* f = s->add_option("--fan", cfg.fan, "pn:N | p1n:N | weighted:d0,...,dn | fan JSON");
        auto* a = s->add_option("--pn", pn, "projective space P^N");
        auto* b = s->add_option("--p1n", p1n, "(P^1)^N");
        auto* w = s->add_option("--weighted", weighted, "weighted projective space P(d0,...,dn)");
        f->excludes(a, b, w);
        a->excludes(b, w);
        b->excludes(w);
    };

    auto* fan = app.add_subcommand("fan", "describe a fan");
    add_fan(fan);
    add_format(fan, {"json", "table"});

    auto* pullback = app.add_subcommand("pullback", "pull back a T-Weil divisor");
    add_matrix(pullback);
    add_fan(pullback);
    pullback->add_option("--divisor", cfg.divisor, "{\"coeffs\": [...]} in ray order")->required();
    add_format(pullback, {"json", "table"});

    auto* degseq = app.add_subcommand("degseq", "degree sequence deg(f^k) = nu(A^k)");
    add_matrix(degseq);
    degseq->add_option("--kmax", cfg.k_max, "last iterate (default 20)");
    degseq->add_option("--weights", cfg.weights, "weighted projective space d0,...,dn");
    degseq->add_option("--oracle-check", cfg.oracle_check, "recompute k <= K by composing homogenized maps");
    degseq->add_option("--period", cfg.period, "estimate deg_k / (k^l rho^k) per residue class mod p");
    degseq->add_option("--tol", cfg.tol, "convergence tolerance for --period")->capture_default_str();
    degseq->add_option("--summary", cfg.summary, "with csv output: write the JSON summary here");
    add_format(degseq, {"json", "csv", "table"});

    auto* dyndeg = app.add_subcommand("dyndeg", "||A^k||^(1/k) against the spectral radius");
    add_matrix(dyndeg);
    dyndeg->add_option("--kmax", cfg.k_max, "last iterate (default 60)");
    add_format(dyndeg, {"json", "csv", "table"});

    auto* scan = app.add_subcommand("scan", "normalized degrees for a complex pair of eigenvalues");
    add_matrix(scan);
    scan->add_option("--kmax", cfg.k_max, "last iterate (default 2000)");
    add_format(scan, {"json", "csv", "table"});

    auto* stability = app.add_subcommand("stability", "decide strong algebraic stability");
    add_matrix(stability);
    add_fan(stability);
    add_format(stability, {"json", "table"});

    auto* stabilize = app.add_subcommand("stabilize", "search for a fan on which an iterate is stable");
    add_matrix(stabilize);
    stabilize->add_option("--kmax", cfg.k_max, "largest iterate tried (default 10)");
    stabilize->add_option("--max-den", cfg.max_den, "denominator bound for the eigenvector")->capture_default_str();

    auto* star = app.add_subcommand("star", "sign condition for pullback functoriality on (P^1)^n");
    star->add_option("--a", cfg.a, "matrix A")->required();
    star->add_option("--b", cfg.b, "matrix B")->required();

    auto* nu_cmd = app.add_subcommand("nu", "degree functional nu(A)");
    add_matrix(nu_cmd);
    nu_cmd->add_option("--weights", cfg.weights, "also the weighted degree on P(d0,...,dn)");
    add_format(nu_cmd, {"json", "table"});

    auto* endo = app.add_subcommand("endo", "is f_A a morphism of the toric variety");
    add_matrix(endo);
    add_fan(endo);

    auto* poly = app.add_subcommand("poly", "polynomial maps of (P^1)^n");
    poly->require_subcommand(1);
    auto add_vars = [&](CLI::App* s) { s->add_option("--vars", cfg.vars, "variable names, comma separated (default z1..zn)"); };
    auto* pdeg = poly->add_subcommand("deg", "degree matrix and dominant terms");
    pdeg->add_option("--map", cfg.map, "components separated by ';'")->required();
    add_vars(pdeg);
    auto* pstable = poly->add_subcommand("stable", "dominant-term stability test");
    pstable->add_option("--map", cfg.map, "components separated by ';'")->required();
    pstable->add_option("--kmax", cfg.k_max, "iterates scanned (default 4)");
    pstable->add_option("--budget", cfg.budget, "term budget for composition")->capture_default_str();
    add_vars(pstable);
    auto* pcompose = poly->add_subcommand("compose", "f o g");
    pcompose->add_option("--f", cfg.f, "outer map")->required();
    pcompose->add_option("--g", cfg.g, "inner map")->required();
    pcompose->add_option("--budget", cfg.budget, "term budget")->capture_default_str();
    add_vars(pcompose);
    auto* phom = poly->add_subcommand("homogenize", "multi-homogeneous lift P/Q");
    phom->add_option("--map", cfg.map, "components separated by ';'")->required();
    add_vars(phom);

    std::vector<std::string> args;
    for (auto it = args_in.rbegin(); it != args_in.rend(); ++it) args.push_back(normalize_minus(*it));
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    std::string name = app.get_subcommands().front()->get_name();
    cfg.subcommand = name;
    const bool takes_fan = name == "fan" || name == "pullback" || name == "stability" || name == "endo";
    if (takes_fan) {
        if (!pn.empty()) cfg.fan = "pn:" + pn;
        if (!p1n.empty()) cfg.fan = "p1n:" + p1n;
        if (!weighted.empty()) cfg.fan = "weighted:" + weighted;
        if (cfg.fan.empty()) {
            err << "error: " << name << ": one of --fan, --pn, --p1n, --weighted is required\n";
            return 1;
        }
    }
    // library messages already name their operation; the subcommand is added unless it is the same word
    auto report = [&](const std::string& msg) {
        err << "error: ";
        if (msg.rfind(cfg.subcommand + ":", 0) != 0) err << cfg.subcommand << ": ";
        err << msg << '\n';
    };
    try {
        if (name == "fan") return cmd_fan(cfg, out);
        if (name == "pullback") return cmd_pullback(cfg, out);
        if (name == "stability") return cmd_stability(cfg, out);
        if (name == "endo") return cmd_endo(cfg, out);
        if (name == "degseq") return cmd_degseq(cfg, out);
        if (name == "dyndeg") return cmd_dyndeg(cfg, out);
        if (name == "scan") return cmd_scan(cfg, out);
        if (name == "stabilize") return cmd_stabilize(cfg, out);
        if (name == "star") return cmd_star(cfg, out);
        if (name == "nu") return cmd_nu(cfg, out);
        if (name == "poly") {
            std::string sub = poly->get_subcommands().front()->get_name();
            cfg.subcommand += " " + sub;
            if (sub == "deg") return cmd_poly_deg(cfg, out);
            if (sub == "stable") return cmd_poly_stable(cfg, out);
            if (sub == "compose") return cmd_poly_compose(cfg, out);
            return cmd_poly_homogenize(cfg, out);
        }
    } catch (const ResourceError& e) {
        report(e.what());
        return 3;
    } catch (const Error& e) {
        report(e.what());
        return 2;
    } catch (const json::exception& e) {
        err << "error: " << cfg.subcommand << ": malformed input: " << e.what() << '\n';
        return 2;
    } catch (const std::bad_alloc&) {
        err << "error: " << cfg.subcommand << ": out of memory\n";
        return 3;
    }
    return 1;
}

}  // namespace monomap::cli
