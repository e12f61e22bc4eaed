#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "monomap/linalg.hpp"

namespace monomap::testing {

inline IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto& r : rows) {
        Eigen::Index j = 0;
        for (long v : r) A(i, j++) = v;
        ++i;
    }
    return A;
}

inline RatMatrix rmat(std::initializer_list<std::initializer_list<const char*>> rows) {
    RatMatrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto& r : rows) {
        Eigen::Index j = 0;
        for (const char* v : r) A(i, j++) = parse_rational(v);
        ++i;
    }
    return A;
}

inline IntVector ivec(std::initializer_list<long> xs) {
    IntVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (long x : xs) v(i++) = x;
    return v;
}

inline RatVector rvec(std::initializer_list<long> xs) { return to_rat(ivec(xs)); }

inline IntMatrix random_int_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = d(rng);
    return A;
}

inline IntMatrix random_nonsingular(std::mt19937_64& rng, int n, int lo, int hi) {
    while (true) {
        IntMatrix A = random_int_matrix(rng, n, lo, hi);
        if (det(A) != 0) return A;
    }
}

// product of random elementary matrices
inline IntMatrix random_unimodular(std::mt19937_64& rng, int n) {
    IntMatrix P = identity<Integer>(n);
    std::uniform_int_distribution<int> idx(0, n - 1), mul(-2, 2);
    for (int s = 0; s < 6; ++s) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        IntMatrix E = identity<Integer>(n);
        E(i, j) = mul(rng);
        P = mat_mul(P, E);
    }
    return P;
}

}  // namespace monomap::testing
