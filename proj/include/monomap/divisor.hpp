#pragma once

#include <optional>
#include <vector>

#include "monomap/toric.hpp"

namespace monomap {

// coefficients aligned with the rays of the fan it is used with; the fan is passed alongside
struct TWeilDivisor {
    std::vector<Rational> coeffs;
};

struct SupportFunction {
    std::vector<Rational> ray_values;
    std::vector<RatVector> functionals;  // u(sigma) per maximal cone
};

SupportFunction support_function(const Fan& f, std::vector<Rational> ray_values);
// psi(v_i) = -a_i
SupportFunction support_of(const Fan& f, const TWeilDivisor& D);
TWeilDivisor divisor_of(const SupportFunction& psi);
TWeilDivisor basis_divisor(const Fan& f, int ray);  // V(tau_ray)
TWeilDivisor principal_divisor(const Fan& f, const RatVector& u);

// index of the first maximal cone containing v
std::optional<int> containing_max_cone(const Fan& f, const RatVector& v);
Rational evaluate_support(const Fan& f, const SupportFunction& psi, const RatVector& v);

TWeilDivisor pullback_divisor(const RatMatrix& A, const Fan& source, const Fan& target, const TWeilDivisor& D);
inline TWeilDivisor pullback_divisor(const IntMatrix& A, const Fan& source, const Fan& target, const TWeilDivisor& D) {
    return pullback_divisor(to_rat(A), source, target, D);
}

Rational degree_Pn(const Fan& f, const TWeilDivisor& D);
Rational weighted_degree(const TWeilDivisor& D, const WeightedLattice& w);
bool is_cartier_weighted(const TWeilDivisor& D, const WeightedLattice& w);

// sum_j max_i {0, -m_ij} + max_i {0, sum_j m_ij}
template <class S>
S nu(const Mat<S>& M) {
    require_square(M, "nu");
    S total = 0;
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
        S best = 0;
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            if (-M(i, j) > best) best = -M(i, j);
        total += best;
    }
    S best = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        S row = 0;
        for (Eigen::Index j = 0; j < M.cols(); ++j) row += M(i, j);
        if (row > best) best = row;
    }
    return total + best;
}

// sum_{j=0..n} -psi(M e_j) with psi the support function of V(tau_i) on the P^n fan
Rational nu_via_support(const RatMatrix& M, int psi_index = 0);

// b_ij = -psi_i(A e_j), i, j = 0..n
IntMatrix homogenization_matrix(const IntMatrix& A);
// exponent rows of a tuple of monomials; divide out the common monomial factor
IntMatrix strip_common_factor(const IntMatrix& H);

}  // namespace monomap
