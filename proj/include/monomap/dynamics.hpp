#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monomap/divisor.hpp"

namespace monomap {

// deg(f_A^k) = nu(A^k) for k = 1..k_max
std::vector<Integer> degree_sequence(const IntMatrix& A, long k_max);
std::vector<Rational> degree_sequence(const RatMatrix& A, long k_max);
// weighted projective space: A in standard coordinates must preserve N'
std::vector<Rational> degree_sequence(const RatMatrix& A, long k_max, const WeightedLattice& w);

// reduced degree of the k-th iterate, computed by composing homogenized monomial maps
Integer oracle_degree_by_composition(const IntMatrix& A, long k);

enum class Provenance { Exact, Fitted };
const char* to_string(Provenance p);

struct GrowthExponent {
    long ell = 0;
    Provenance provenance = Provenance::Fitted;
    double slope = 0;     // fitted slope (Fitted) or 0
    double residual = 0;  // rms residual of the fit
};

// Exact when every eigenvalue of modulus rho is real and rho^2 is an integer; otherwise a tail fit
GrowthExponent growth_exponent(const IntMatrix& A, const std::vector<Integer>& degrees);

struct AsymptoticConstants {
    long period = 1;
    std::vector<double> C;                    // C_l, l = 0..p-1, residue of k mod p
    std::vector<double> cauchy;               // |last - previous| within each residue class
    std::vector<std::optional<double>> cross;  // nu of the numeric spectral projection, when diagonalizable
    bool converged = false;
};

// throws ConvergenceError when a residue class has not settled to tol
AsymptoticConstants asymptotic_constants(const IntMatrix& A, const std::vector<Integer>& degrees, long period,
                                         double tol = 1e-6);

struct ScanStats {
    long k_max = 0;
    double min = 0, max = 0;
    long distinct = 0;
    double max_gap = 0;
    std::vector<double> values;
    std::string note;
};

// deg_k / |lambda|^k with |lambda|^2 = det A, for a 2x2 complex pair whose ratio is not a root of unity
ScanStats normalized_degree_scan(const IntMatrix& A, long k_max);

struct DynDegEstimate {
    std::vector<double> roots;  // ||A^k||_1^{1/k}
    double limit = 0;           // exp of the tail slope of log ||A^k||_1
    double rho = 0;
};

// ||.||_1 is the entrywise absolute sum
DynDegEstimate dynamical_degree_estimate(const IntMatrix& A, long k_max);

struct DegreeSequenceReport {
    std::vector<Integer> degrees;
    double rho = 0;
    std::optional<GrowthExponent> ell;  // absent when k_max is too small for a fit
    std::vector<double> normalized;  // deg_k / (k^ell rho^k)
    double c_min = 0, c_max = 0;
};

DegreeSequenceReport degree_report(const IntMatrix& A, long k_max);

}  // namespace monomap
