#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monomap/arith.hpp"
#include "monomap/upoly.hpp"

namespace monomap {

template <class S>
Mat<S> mat_mul(const Mat<S>& A, const Mat<S>& B) {
    if (A.cols() != B.rows())
        throw DimensionError("mat_mul: inner dimensions differ (" + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()) + " * " + std::to_string(B.rows()) + "x" +
                             std::to_string(B.cols()) + ")");
    Mat<S> C = A.lazyProduct(B);
    return C;
}

template <class S>
Vec<S> mat_vec(const Mat<S>& A, const Vec<S>& v) {
    if (A.cols() != v.size()) throw DimensionError("mat_vec: dimension mismatch");
    Vec<S> w = A.lazyProduct(v);
    return w;
}

template <class S>
void require_square(const Mat<S>& A, const char* op) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw DimensionError(std::string(op) + ": matrix must be square and nonempty, got " +
                             std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
}

template <class S>
Mat<S> mat_pow(const Mat<S>& A, long k) {
    require_square(A, "mat_pow");
    if (k < 0) throw DomainError("mat_pow: negative exponent");
    Mat<S> result = identity<S>(A.rows());
    Mat<S> base = A;
    while (k > 0) {
        if (k & 1) result = mat_mul(result, base);
        k >>= 1;
        if (k) base = mat_mul(base, base);
    }
    return result;
}

template <class S>
Mat<S> kron(const Mat<S>& A, const Mat<S>& B) {
    Mat<S> K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            for (Eigen::Index k = 0; k < B.rows(); ++k)
                for (Eigen::Index l = 0; l < B.cols(); ++l)
                    K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
    return K;
}

// Berkowitz: division free, so it works over the integers.  Ascending coefficients of det(xI - A).
template <class S>
std::vector<S> char_poly_coeffs(const Mat<S>& A) {
    require_square(A, "char_poly");
    const Eigen::Index n = A.rows();
    std::vector<S> C = {S(1), S(-A(0, 0))};  // descending while building
    for (Eigen::Index r = 1; r < n; ++r) {
        std::vector<S> T(r + 2);
        T[0] = 1;
        T[1] = -A(r, r);
        Vec<S> x(r);
        for (Eigen::Index i = 0; i < r; ++i) x(i) = A(i, r);
        for (Eigen::Index k = 0; k < r; ++k) {
            S acc = 0;
            for (Eigen::Index i = 0; i < r; ++i) acc += A(r, i) * x(i);
            T[k + 2] = -acc;
            if (k + 1 < r) {
                Vec<S> y(r);
                for (Eigen::Index i = 0; i < r; ++i) {
                    S s = 0;
                    for (Eigen::Index j = 0; j < r; ++j) s += A(i, j) * x(j);
                    y(i) = s;
                }
                x = y;
            }
        }
        std::vector<S> N(r + 2, S(0));
        for (Eigen::Index i = 0; i <= r + 1; ++i)
            for (Eigen::Index j = 0; j <= std::min<Eigen::Index>(i, r); ++j) N[i] += T[i - j] * C[j];
        C = std::move(N);
    }
    return std::vector<S>(C.rbegin(), C.rend());
}

inline UPoly char_poly(const IntMatrix& A) { return char_poly_coeffs(A); }

template <class S>
Mat<S> poly_eval_matrix(const std::vector<S>& c, const Mat<S>& A) {
    Mat<S> acc = zeros<S>(A.rows(), A.cols());
    Mat<S> I = identity<S>(A.rows());
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mat_mul(acc, A) + I * (*it);
    return acc;
}

// exact Gaussian elimination over Q
long rank(const RatMatrix& A);
inline long rank(const IntMatrix& A) { return rank(to_rat(A)); }
Rational det(const RatMatrix& A);
Integer det(const IntMatrix& A);  // Bareiss
std::optional<RatMatrix> inverse(const RatMatrix& A);
// one solution of A x = b if consistent
std::optional<RatVector> solve(const RatMatrix& A, const RatVector& b);

// Lattice basis (as columns) of the Z-span of integer generators; HNF-style row reduction.
IntMatrix lattice_basis(const std::vector<IntVector>& gens, long dim);

struct SpectrumReport {
    UPoly char_poly;
    double rho = 0;
    double rho_error_bound = 0;
    Rational rho_lo, rho_hi;  // true rho lies in (rho_lo, rho_hi]
    std::optional<Integer> integer_dominant_root;
    int rho_sq_multiplicity = 0;  // multiplicity of rho^2 among all products lambda_i lambda_j
    int mult_plus = 0;            // algebraic multiplicity of +rho as an eigenvalue
    int mult_minus = 0;           // of -rho
    bool unique_simple_real_dominant = false;
    std::optional<RatVector> dominant_eigvec;
    double dominant_eigvec_residual = 0;
};

SpectrumReport spectral_radius(const IntMatrix& A, bool with_eigvec = false, long max_denominator = 1000000);
// rho(B / L) = rho(B) / L for integer B
SpectrumReport spectral_radius(const RatMatrix& A);

struct EigvecApprox {
    RatVector v;
    double eigenvalue = 0;
    double residual = 0;
};

EigvecApprox dominant_eigvec_approx(const IntMatrix& A, long max_denominator, long max_iter = 200000);

// best rational approximation with bounded denominator (continued fractions)
Rational rational_approx(double x, long max_denominator);

// multiplicity of an exact integer root
int root_multiplicity(const UPoly& p, const Integer& r);

}  // namespace monomap
