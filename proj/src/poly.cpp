#include "monomap/poly.hpp"

#include <algorithm>
#include <cctype>

#include "monomap/linalg.hpp"

namespace monomap {

SparsePoly SparsePoly::constant(int n, const Rational& c) {
    SparsePoly p(n);
    p.add_term(Exponent(n, 0), c);
    return p;
}

SparsePoly SparsePoly::variable(int n, int i) {
    if (i < 0 || i >= n) throw DimensionError("SparsePoly::variable: index out of range");
    Exponent e(n, 0);
    e[i] = 1;
    return monomial(e);
}

SparsePoly SparsePoly::monomial(const Exponent& e, const Rational& c) {
    SparsePoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

bool SparsePoly::is_laurent() const {
    for (auto& [e, c] : terms)
        for (long x : e)
            if (x < 0) return true;
    return false;
}

void SparsePoly::add_term(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != n_vars) throw DimensionError("SparsePoly: exponent length mismatch");
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.n_vars == b.n_vars && a.terms == b.terms; }

namespace {

void require_same_vars(const SparsePoly& a, const SparsePoly& b, const char* op) {
    if (a.n_vars != b.n_vars)
        throw DimensionError(std::string(op) + ": polynomials in " + std::to_string(a.n_vars) + " and " +
                             std::to_string(b.n_vars) + " variables");
}

}  // namespace

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    require_same_vars(a, b, "add");
    SparsePoly r = a;
    for (auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

SparsePoly operator-(const SparsePoly& a) {
    SparsePoly r(a.n_vars);
    for (auto& [e, c] : a.terms) r.terms.emplace(e, -c);
    return r;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    require_same_vars(a, b, "multiply");
    SparsePoly r(a.n_vars);
    Exponent e(a.n_vars);
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            for (int i = 0; i < a.n_vars; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

SparsePoly scale(const SparsePoly& a, const Rational& c) {
    SparsePoly r(a.n_vars);
    if (c == 0) return r;
    for (auto& [e, x] : a.terms) r.terms.emplace(e, x * c);
    return r;
}

SparsePoly pow(const SparsePoly& a, long k) {
    if (k < 0) {
        if (!a.is_monomial()) throw DomainError("pow: negative exponent of a non-monomial");
        auto& [e, c] = *a.terms.begin();
        Exponent ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
        return pow(SparsePoly::monomial(ne, Rational(1) / c), -k);
    }
    SparsePoly r = SparsePoly::constant(a.n_vars, 1), base = a;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

std::vector<std::string> default_var_names(int n, const std::string& stem) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

    SparsePoly parse() {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty expression", pos_, "a polynomial");
        SparsePoly p = expr();
        skip();
        if (pos_ != s_.size()) {
            if (starts_primary())
                throw ParseError("missing operator", pos_, "'*' between factors");
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_, "operator or end of input");
        }
        return p;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    int n() const { return static_cast<int>(vars_.size()); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        unsigned char c = s_[pos_];
        return std::isalnum(c) || c == '_' || c == '(';
    }

    SparsePoly expr() {
        SparsePoly p = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                p = p + term();
            } else if (peek('-')) {
                ++pos_;
                p = p - term();
            } else {
                return p;
            }
        }
    }

    SparsePoly term() {
        SparsePoly p = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                p = p * unary();
            } else if (peek('/')) {
                ++pos_;
                std::size_t at = pos_;
                SparsePoly d = unary();
                if (d.is_zero()) throw DomainError("parse_poly: division by zero at position " + std::to_string(at));
                if (d.size() != 1 || d.terms.begin()->first != Exponent(n(), 0))
                    throw ParseError("division by a non-constant", at, "a constant divisor");
                p = scale(p, Rational(1) / d.terms.begin()->second);
            } else {
                return p;
            }
        }
    }

    SparsePoly unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    SparsePoly power() {
        SparsePoly base = primary();
        if (!peek('^')) return base;
        ++pos_;
        skip();
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        std::size_t at = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (at == pos_) throw ParseError("bad exponent", at, "an integer exponent");
        if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/'))
            throw ParseError("non-integer exponent", pos_, "an integer exponent");
        if (pos_ - at > 9) throw ParseError("exponent too large", at, "an exponent below 10^9");
        long k = std::stol(s_.substr(at, pos_ - at));
        if (peek('^')) throw ParseError("chained exponent", pos_, "parentheses around the base");
        if (neg && !base.is_monomial()) throw ParseError("negative exponent of a non-monomial", at, "a monomial base");
        return pow(base, neg ? -k : k);
    }

    SparsePoly primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_, "number, variable or '('");
        unsigned char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            SparsePoly p = expr();
            if (!peek(')')) throw ParseError("unbalanced parenthesis", pos_, "')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(c)) {
            std::size_t at = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') throw ParseError("decimal literal", pos_, "an integer or p/q");
            return SparsePoly::constant(n(), Rational(Integer(s_.substr(at, pos_ - at))));
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t at = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(at, pos_ - at);
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) {
                std::string all;
                for (auto& v : vars_) all += (all.empty() ? "" : ", ") + v;
                throw ParseError("unknown variable '" + name + "'", at, "one of " + all);
            }
            return SparsePoly::variable(n(), static_cast<int>(it - vars_.begin()));
        }
        throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_, "number, variable or '('");
    }
};

long total_degree(const Exponent& e) {
    long s = 0;
    for (long x : e) s += x;
    return s;
}

}  // namespace

SparsePoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    return Parser(text, vars).parse();
}

std::string to_string(const SparsePoly& p, const std::vector<std::string>& vars) {
    if (static_cast<int>(vars.size()) != p.n_vars) throw DimensionError("to_string: wrong number of variable names");
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exponent, Rational>> ts(p.terms.begin(), p.terms.end());
    // highest total degree first, ties in descending exponent order
    std::sort(ts.begin(), ts.end(), [](auto& a, auto& b) {
        long da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::string out;
    for (auto& [e, c] : ts) {
        std::string mono;
        for (int i = 0; i < p.n_vars; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        std::string t;
        Rational a = mp::abs(c);
        if (mono.empty())
            t = to_string(a);
        else if (a == 1)
            t = mono;
        else
            t = to_string(a) + "*" + mono;
        if (out.empty())
            out = (c < 0 ? "-" : "") + t;
        else
            out += (c < 0 ? " - " : " + ") + t;
    }
    return out;
}

std::string to_string(const SparsePoly& p) { return to_string(p, default_var_names(p.n_vars)); }

bool operator==(const PolynomialMap& a, const PolynomialMap& b) { return a.n_vars == b.n_vars && a.comps == b.comps; }

PolynomialMap parse_map(const std::vector<std::string>& comps, const std::vector<std::string>& vars) {
    if (comps.size() != vars.size())
        throw DimensionError("parse_map: " + std::to_string(comps.size()) + " components for " +
                             std::to_string(vars.size()) + " variables");
    PolynomialMap f;
    f.n_vars = static_cast<int>(vars.size());
    for (auto& c : comps) f.comps.push_back(parse_poly(c, vars));
    return f;
}

PolynomialMap parse_map(const std::string& text) {
    std::vector<std::string> comps;
    std::size_t start = 0;
    while (true) {
        std::size_t k = text.find(';', start);
        comps.push_back(text.substr(start, k == std::string::npos ? std::string::npos : k - start));
        if (k == std::string::npos) break;
        start = k + 1;
    }
    return parse_map(comps, default_var_names(static_cast<int>(comps.size())));
}

std::string to_string(const PolynomialMap& f) {
    std::string out;
    for (auto& c : f.comps) out += (out.empty() ? "" : " ; ") + to_string(c);
    return out;
}

PolynomialMap monomial_map(const IntMatrix& A) {
    require_square(A, "monomial_map");
    PolynomialMap f;
    f.n_vars = static_cast<int>(A.rows());
    for (Eigen::Index j = 0; j < A.rows(); ++j) {
        Exponent e(A.cols());
        for (Eigen::Index i = 0; i < A.cols(); ++i) e[i] = A(j, i).convert_to<long>();
        f.comps.push_back(SparsePoly::monomial(e));
    }
    return f;
}

PolynomialMap identity_map(int n) {
    PolynomialMap f;
    f.n_vars = n;
    for (int i = 0; i < n; ++i) f.comps.push_back(SparsePoly::variable(n, i));
    return f;
}

IntMatrix degree_matrix(const PolynomialMap& f) {
    const int n = f.n_vars;
    IntMatrix D = zeros<Integer>(n, static_cast<Eigen::Index>(f.comps.size()));
    for (std::size_t j = 0; j < f.comps.size(); ++j) {
        const SparsePoly& p = f.comps[j];
        if (p.is_zero()) continue;
        for (int i = 0; i < n; ++i) {
            long lo = p.terms.begin()->first[i], hi = lo;
            for (auto& [e, c] : p.terms) {
                lo = std::min(lo, e[i]);
                hi = std::max(hi, e[i]);
            }
            long m = std::max(0L, -lo);
            D(i, j) = std::max(hi + m, m);
        }
    }
    return D;
}

std::optional<Exponent> dominant_term(const SparsePoly& p) {
    if (p.is_laurent()) throw DomainError("dominant_term: Laurent polynomial");
    if (p.is_zero()) return std::nullopt;
    Exponent top(p.n_vars, 0);
    for (auto& [e, c] : p.terms)
        for (int i = 0; i < p.n_vars; ++i) top[i] = std::max(top[i], e[i]);
    if (p.terms.count(top)) return top;
    return std::nullopt;
}

PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g, std::size_t budget) {
    if (f.n_vars != static_cast<int>(g.comps.size()))
        throw DimensionError("compose: f has " + std::to_string(f.n_vars) + " variables but g has " +
                             std::to_string(g.comps.size()) + " components");
    const int n = g.n_vars;
    std::map<std::pair<int, long>, SparsePoly> powers;
    auto check = [&](const SparsePoly& p) {
        if (p.size() > budget)
            throw ResourceError("compose: term budget of " + std::to_string(budget) + " exceeded");
    };
    auto power_of = [&](int i, long k) -> const SparsePoly& {
        auto key = std::make_pair(i, k);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        if (k < 0 && !g.comps[i].is_monomial())
            throw DomainError("compose: negative power of a non-monomial component");
        SparsePoly p = pow(g.comps[i], k);
        check(p);
        return powers.emplace(key, std::move(p)).first->second;
    };
    PolynomialMap h;
    h.n_vars = n;
    for (auto& fj : f.comps) {
        SparsePoly acc(n);
        for (auto& [e, c] : fj.terms) {
            SparsePoly t = SparsePoly::constant(n, c);
            for (int i = 0; i < f.n_vars; ++i)
                if (e[i] != 0) {
                    t = t * power_of(i, e[i]);
                    check(t);
                }
            acc = acc + t;
            check(acc);
        }
        h.comps.push_back(std::move(acc));
    }
    return h;
}

PolynomialMap iterate(const PolynomialMap& f, long k, std::size_t budget) {
    if (k < 0) throw DomainError("iterate: negative iterate count");
    PolynomialMap r = identity_map(f.n_vars);
    for (long i = 0; i < k; ++i) r = compose(f, r, budget);
    return r;
}

std::vector<DegreeEvidence> degree_evidence(const PolynomialMap& f, long k_max, std::size_t budget) {
    std::vector<DegreeEvidence> out;
    IntMatrix D = degree_matrix(f), Dk = identity<Integer>(f.n_vars);
    PolynomialMap fk = identity_map(f.n_vars);
    for (long k = 1; k <= k_max; ++k) {
        fk = compose(f, fk, budget);
        Dk = mat_mul(Dk, D);
        DegreeEvidence ev{k, degree_matrix(fk), Dk, false};
        ev.equal = equal(ev.actual, ev.predicted);
        out.push_back(std::move(ev));
    }
    return out;
}

const char* to_string(PolyVerdict v) {
    switch (v) {
        case PolyVerdict::StableCertified: return "StableCertified";
        case PolyVerdict::UnstableCertified: return "UnstableCertified";
        case PolyVerdict::Inconclusive: return "Inconclusive";
    }
    return "";
}

PolyStabilityReport is_stable_poly(const PolynomialMap& f, long k_max, std::size_t budget) {
    if (static_cast<int>(f.comps.size()) != f.n_vars) throw DimensionError("is_stable_poly: not a self-map");
    for (auto& c : f.comps)
        if (c.is_laurent()) throw DomainError("is_stable_poly: components must be polynomials");
    PolyStabilityReport rep;
    bool all = true;
    for (auto& c : f.comps) {
        rep.dominant_terms.push_back(dominant_term(c));
        all = all && rep.dominant_terms.back().has_value();
    }
    if (all) {
        rep.verdict = PolyVerdict::StableCertified;
        return rep;
    }
    IntMatrix D = degree_matrix(f), Dk = identity<Integer>(f.n_vars);
    PolynomialMap fk = identity_map(f.n_vars);
    for (long N = 1; N <= k_max; ++N) {
        fk = compose(f, fk, budget);
        Dk = mat_mul(Dk, D);
        DegreeEvidence ev{N, degree_matrix(fk), Dk, false};
        ev.equal = equal(ev.actual, ev.predicted);
        bool positive = true;
        for (Eigen::Index i = 0; i < ev.actual.size(); ++i) positive = positive && ev.actual(i) > 0;
        rep.evidence.push_back(std::move(ev));
        if (positive) {
            rep.verdict = PolyVerdict::UnstableCertified;
            rep.N = N;
            return rep;
        }
    }
    rep.verdict = PolyVerdict::Inconclusive;
    return rep;
}

std::vector<std::string> pair_var_names(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) {
        v.push_back("x" + std::to_string(i));
        v.push_back("y" + std::to_string(i));
    }
    return v;
}

MultiHomogeneousPair homogenize(const SparsePoly& p, const SparsePoly& q) {
    if (!q.is_monomial()) throw DomainError("homogenize: denominator must be a monomial");
    if (p.n_vars != q.n_vars) throw DimensionError("homogenize: numerator and denominator variable counts differ");
    const int n = p.n_vars;
    std::vector<long> lo(n, 0), hi(n, 0);
    bool first = true;
    for (const SparsePoly* s : {&p, &q})
        for (auto& [e, c] : s->terms)
            for (int i = 0; i < n; ++i) {
                lo[i] = first ? e[i] : std::min(lo[i], e[i]);
                hi[i] = first ? e[i] : std::max(hi[i], e[i]);
                if (i == n - 1) first = false;
            }
    // z^e -> x^(e - lo) y^(hi - e); dividing by the smallest exponents strips the monomial content
    auto lift = [&](const SparsePoly& s) {
        SparsePoly r(2 * n);
        Exponent x(2 * n);
        for (auto& [e, c] : s.terms) {
            for (int i = 0; i < n; ++i) {
                x[2 * i] = e[i] - lo[i];
                x[2 * i + 1] = hi[i] - e[i];
            }
            r.add_term(x, c);
        }
        return r;
    };
    MultiHomogeneousPair h{lift(p), lift(q), {}};
    for (int i = 0; i < n; ++i) h.degrees.push_back(hi[i] - lo[i]);
    return h;
}

std::vector<MultiHomogeneousPair> homogenize(const PolynomialMap& f) {
    std::vector<MultiHomogeneousPair> out;
    for (auto& c : f.comps) out.push_back(homogenize(c, SparsePoly::constant(f.n_vars, 1)));
    return out;
}

}  // namespace monomap
