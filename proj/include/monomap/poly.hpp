#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monomap/arith.hpp"

namespace monomap {

using Exponent = std::vector<long>;

// Laurent polynomial with rational coefficients; zero coefficients are never stored
struct SparsePoly {
    int n_vars = 0;
    std::map<Exponent, Rational> terms;

    SparsePoly() = default;
    explicit SparsePoly(int n) : n_vars(n) {}

    static SparsePoly constant(int n, const Rational& c);
    static SparsePoly variable(int n, int i);
    static SparsePoly monomial(const Exponent& e, const Rational& c = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_monomial() const { return terms.size() == 1; }
    bool is_laurent() const;  // some negative exponent
    std::size_t size() const { return terms.size(); }

    void add_term(const Exponent& e, const Rational& c);
};

bool operator==(const SparsePoly& a, const SparsePoly& b);
SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
SparsePoly operator-(const SparsePoly& a);
SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
SparsePoly scale(const SparsePoly& a, const Rational& c);
// negative k only for monomials
SparsePoly pow(const SparsePoly& a, long k);

std::vector<std::string> default_var_names(int n, const std::string& stem = "z");

// grammar: sums of products of signed powers; '*' is required between factors,
// '/' only divides by a constant, '^' takes an (optionally negative) integer
SparsePoly parse_poly(const std::string& text, const std::vector<std::string>& vars);
std::string to_string(const SparsePoly& p, const std::vector<std::string>& vars);
std::string to_string(const SparsePoly& p);

struct PolynomialMap {
    int n_vars = 0;
    std::vector<SparsePoly> comps;
};

bool operator==(const PolynomialMap& a, const PolynomialMap& b);

// components separated by ';', variables z1..zn with n = number of components
PolynomialMap parse_map(const std::string& text);
PolynomialMap parse_map(const std::vector<std::string>& comps, const std::vector<std::string>& vars);
std::string to_string(const PolynomialMap& f);

// f_j = prod_i z_i^{a_ji}
PolynomialMap monomial_map(const IntMatrix& A);
PolynomialMap identity_map(int n);

// entry (i, j) = degree of f_j in z_i after clearing the monomial denominator
IntMatrix degree_matrix(const PolynomialMap& f);

std::optional<Exponent> dominant_term(const SparsePoly& p);

constexpr std::size_t default_term_budget = 1000000;

// (f o g)_j = f_j(g_1, ..., g_n)
PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g, std::size_t budget = default_term_budget);
PolynomialMap iterate(const PolynomialMap& f, long k, std::size_t budget = default_term_budget);

struct DegreeEvidence {
    long k = 0;
    IntMatrix actual;     // Deg(f^k) from the composed iterate
    IntMatrix predicted;  // Deg(f)^k
    bool equal = false;
};

std::vector<DegreeEvidence> degree_evidence(const PolynomialMap& f, long k_max,
                                            std::size_t budget = default_term_budget);

enum class PolyVerdict { StableCertified, UnstableCertified, Inconclusive };
const char* to_string(PolyVerdict v);

struct PolyStabilityReport {
    PolyVerdict verdict = PolyVerdict::Inconclusive;
    long N = 0;  // iterate with all degrees positive, for UnstableCertified
    std::vector<std::optional<Exponent>> dominant_terms;
    std::vector<DegreeEvidence> evidence;  // filled when the verdict is not StableCertified
};

PolyStabilityReport is_stable_poly(const PolynomialMap& f, long k_max, std::size_t budget = default_term_budget);

// variables ordered x1, y1, ..., xn, yn
struct MultiHomogeneousPair {
    SparsePoly P, Q;
    std::vector<long> degrees;  // degree in each pair (x_i, y_i)
};

std::vector<std::string> pair_var_names(int n);
// f_j = p / q with q a monomial whose coefficient is 1
MultiHomogeneousPair homogenize(const SparsePoly& p, const SparsePoly& q);
std::vector<MultiHomogeneousPair> homogenize(const PolynomialMap& f);

}  // namespace monomap
