#include "monomap/upoly.hpp"

namespace monomap {

void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Integer(static_cast<long>(i)));
    trim(d);
    return d;
}

UPoly primitive_part(const UPoly& p) {
    Integer g = 0;
    for (auto& c : p) g = gcd(g, c);
    if (g == 0) return {};
    g = mp::abs(g);
    UPoly q = p;
    for (auto& c : q) c /= g;
    return q;
}

UPoly pseudo_rem(const UPoly& a, const UPoly& b) {
    if (b.empty()) throw DomainError("pseudo_rem: division by zero polynomial");
    UPoly r = a;
    trim(r);
    const Integer& l = b.back();
    Integer al = mp::abs(l);
    int sl = l.sign();
    int db = degree(b);
    while (degree(r) >= db) {
        int shift = degree(r) - db;
        Integer lead = r.back();
        for (auto& c : r) c *= al;
        for (int i = 0; i <= db; ++i) r[i + shift] -= Integer(sl) * lead * b[i];
        trim(r);
        r = primitive_part(r);
    }
    return r;
}

UPoly poly_gcd(const UPoly& a0, const UPoly& b0) {
    UPoly a = primitive_part(a0), b = primitive_part(b0);
    if (a.empty()) return b;
    while (!b.empty()) {
        UPoly r = pseudo_rem(a, b);
        a = b;
        b = primitive_part(r);
    }
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

UPoly poly_div_exact(const UPoly& a, const UPoly& b) {
    if (b.empty()) throw DomainError("poly_div_exact: division by zero polynomial");
    std::vector<Rational> r(a.begin(), a.end());
    int db = degree(b);
    int da = degree(a);
    if (da < db) {
        if (da < 0) return {};
        throw DomainError("poly_div_exact: not divisible");
    }
    std::vector<Rational> q(da - db + 1);
    for (int k = da - db; k >= 0; --k) {
        q[k] = r[k + db] / Rational(b.back());
        for (int i = 0; i <= db; ++i) r[i + k] -= q[k] * Rational(b[i]);
    }
    for (auto& c : r)
        if (c != 0) throw DomainError("poly_div_exact: not divisible");
    UPoly out;
    for (auto& c : q) {
        if (!is_integral(c)) throw DomainError("poly_div_exact: quotient not integral");
        out.push_back(numer(c));
    }
    trim(out);
    return out;
}

UPoly squarefree_part(const UPoly& p) {
    UPoly g = poly_gcd(p, derivative(p));
    if (degree(g) <= 0) return primitive_part(p);
    // primitive parts divide exactly by Gauss's lemma
    UPoly pp = primitive_part(p);
    std::vector<Rational> r(pp.begin(), pp.end());
    int dg = degree(g), dp = degree(pp);
    std::vector<Rational> q(dp - dg + 1);
    for (int k = dp - dg; k >= 0; --k) {
        q[k] = r[k + dg] / Rational(g.back());
        for (int i = 0; i <= dg; ++i) r[i + k] -= q[k] * Rational(g[i]);
    }
    Integer L = 1;
    for (auto& c : q) L = lcm(L, denom(c));
    UPoly out;
    for (auto& c : q) out.push_back(numer(c * Rational(L)));
    trim(out);
    return primitive_part(out);
}

Rational eval(const UPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

int sign_at(const UPoly& p, const Rational& x) { return eval(p, x).sign(); }

SturmChain sturm_chain(const UPoly& p0) {
    SturmChain s;
    UPoly p = primitive_part(p0);
    if (p.empty()) return s;
    s.push_back(p);
    UPoly d = primitive_part(derivative(p));
    if (d.empty()) return s;
    s.push_back(d);
    while (true) {
        UPoly r = pseudo_rem(s[s.size() - 2], s.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        s.push_back(r);
    }
    return s;
}

static int variations(const SturmChain& s, const Rational& x) {
    int v = 0, last = 0;
    for (auto& p : s) {
        int sg = sign_at(p, x);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}

int sturm_count(const SturmChain& s, const Rational& a, const Rational& b) {
    if (s.empty()) return 0;
    return variations(s, a) - variations(s, b);
}

}  // namespace monomap
