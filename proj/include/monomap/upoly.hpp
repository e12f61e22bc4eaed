#pragma once

#include <vector>

#include "monomap/arith.hpp"

namespace monomap {

// dense univariate integer polynomial, c[i] is the coefficient of x^i; no trailing zeros
using UPoly = std::vector<Integer>;

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for the zero polynomial
UPoly derivative(const UPoly& p);
// divide by the positive gcd of the coefficients
UPoly primitive_part(const UPoly& p);
// positive multiple of the remainder of a by b (signs preserved, for Sturm chains)
UPoly pseudo_rem(const UPoly& a, const UPoly& b);
UPoly poly_gcd(const UPoly& a, const UPoly& b);
// exact quotient a / b; throws if b does not divide a over Q
UPoly poly_div_exact(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& p);

Rational eval(const UPoly& p, const Rational& x);
int sign_at(const UPoly& p, const Rational& x);

using SturmChain = std::vector<UPoly>;
SturmChain sturm_chain(const UPoly& p);
// number of distinct real roots in (a, b]
int sturm_count(const SturmChain& s, const Rational& a, const Rational& b);

}  // namespace monomap
