#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <vector>

#include "monomap/errors.hpp"

namespace monomap {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using IntMatrix = Mat<Integer>;
using RatMatrix = Mat<Rational>;
using IntVector = Vec<Integer>;
using RatVector = Vec<Rational>;

inline Integer numer(const Rational& q) { return mp::numerator(q); }
inline Integer denom(const Rational& q) { return mp::denominator(q); }
inline bool is_integral(const Rational& q) { return denom(q) == 1; }

// floor of a rational, exact
Integer floor_of(const Rational& q);

inline int sign(const Integer& a) { return a.sign(); }
inline int sign(const Rational& a) { return a.sign(); }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

std::string to_string(const Integer& a);
std::string to_string(const Rational& q);

// "p", "-p", "p/q"; surrounding whitespace allowed
Rational parse_rational(const std::string& s);

double to_double(const Rational& q);
// natural log of |a| for arbitrarily large a (a != 0)
double log_abs(const Integer& a);
double log_abs(const Rational& q);

template <class S>
Mat<S> identity(Eigen::Index n) {
    Mat<S> I(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) I(i, j) = (i == j) ? S(1) : S(0);
    return I;
}

template <class S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c) {
    Mat<S> Z(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) Z(i, j) = S(0);
    return Z;
}

template <class S>
bool is_zero(const Mat<S>& A) {
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0) return false;
    return true;
}

template <class S>
bool equal(const Mat<S>& A, const Mat<S>& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (A(i, j) != B(i, j)) return false;
    return true;
}

template <class S>
bool equal(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

inline RatMatrix to_rat(const IntMatrix& A) { return A.cast<Rational>(); }
inline RatMatrix to_rat(const RatMatrix& A) { return A; }
inline RatVector to_rat(const IntVector& v) { return v.cast<Rational>(); }
inline RatVector to_rat(const RatVector& v) { return v; }

bool is_integral(const RatMatrix& A);
// throws DomainError if an entry is not an integer
IntMatrix to_int(const RatMatrix& A, const char* op = "to_int");
IntVector to_int(const RatVector& v, const char* op = "to_int");

Eigen::MatrixXd to_double(const IntMatrix& A);
Eigen::MatrixXd to_double(const RatMatrix& A);

// gcd of the coordinates; 0 for the zero vector
Integer content(const IntVector& v);
bool is_primitive(const IntVector& v);
// smallest positive integer multiple of a nonzero rational vector that is integral and primitive
IntVector primitive_of(const RatVector& v);

std::vector<std::vector<std::string>> to_strings(const RatMatrix& A);
std::vector<std::vector<std::string>> to_strings(const IntMatrix& A);

}  // namespace monomap
