#include "monomap/arith.hpp"

#include <cctype>
#include <cmath>

namespace monomap {

Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return Integer(0);
    return mp::abs(a / gcd(a, b) * b);
}

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.backend().data(), numer(q).backend().data(), denom(q).backend().data());
    return r;
}

std::string to_string(const Integer& a) { return a.str(); }

std::string to_string(const Rational& q) {
    if (denom(q) == 1) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

static Integer parse_integer(const std::string& s, std::size_t b, std::size_t e, const std::string& whole) {
    std::size_t i = b;
    bool neg = false;
    if (i < e && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == e) throw ParseError("bad rational '" + whole + "'", i, "digits");
    for (std::size_t k = i; k < e; ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw ParseError("bad rational '" + whole + "'", k, "digit");
    Integer v(s.substr(i, e - i));
    return neg ? Integer(-v) : v;
}

Rational parse_rational(const std::string& raw) {
    std::size_t b = 0, e = raw.size();
    while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
    auto slash = raw.find('/', b);
    if (slash == std::string::npos || slash >= e) return Rational(parse_integer(raw, b, e, raw));
    Integer p = parse_integer(raw, b, slash, raw);
    Integer q = parse_integer(raw, slash + 1, e, raw);
    if (q == 0) throw DomainError("parse_rational: zero denominator in '" + raw + "'");
    return Rational(p, q);
}

double log_abs(const Integer& a) {
    if (a == 0) return -INFINITY;
    Integer m = mp::abs(a);
    long bits = static_cast<long>(mp::msb(m));
    if (bits < 900) return std::log(m.convert_to<double>());
    long shift = bits - 60;
    Integer top = m >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_abs(const Rational& q) { return log_abs(numer(q)) - log_abs(denom(q)); }

double to_double(const Rational& q) {
    // mpq_get_d truncates but never overflows for values in range
    return mpq_get_d(q.backend().data());
}

bool is_integral(const RatMatrix& A) {
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (!is_integral(A(i, j))) return false;
    return true;
}

IntMatrix to_int(const RatMatrix& A, const char* op) {
    IntMatrix B(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (!is_integral(A(i, j)))
                throw DomainError(std::string(op) + ": entry " + to_string(A(i, j)) + " is not an integer");
            B(i, j) = numer(A(i, j));
        }
    return B;
}

IntVector to_int(const RatVector& v, const char* op) {
    IntVector w(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!is_integral(v(i)))
            throw DomainError(std::string(op) + ": entry " + to_string(v(i)) + " is not an integer");
        w(i) = numer(v(i));
    }
    return w;
}

Eigen::MatrixXd to_double(const IntMatrix& A) {
    Eigen::MatrixXd D(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) D(i, j) = A(i, j).convert_to<double>();
    return D;
}

Eigen::MatrixXd to_double(const RatMatrix& A) {
    Eigen::MatrixXd D(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) D(i, j) = to_double(A(i, j));
    return D;
}

Integer content(const IntVector& v) {
    Integer g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
    return mp::abs(g);
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

IntVector primitive_of(const RatVector& v) {
    Integer L = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) L = lcm(L, denom(v(i)));
    IntVector w(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = numer(v(i) * Rational(L));
    Integer g = content(w);
    if (g == 0) throw DomainError("primitive_of: zero vector");
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) /= g;
    return w;
}

template <class M>
static std::vector<std::vector<std::string>> strings_of(const M& A) {
    std::vector<std::vector<std::string>> out(A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) out[i].push_back(to_string(A(i, j)));
    return out;
}

std::vector<std::vector<std::string>> to_strings(const RatMatrix& A) { return strings_of(A); }
std::vector<std::vector<std::string>> to_strings(const IntMatrix& A) { return strings_of(A); }

}  // namespace monomap
