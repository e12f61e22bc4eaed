#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "monomap/divisor.hpp"
#include "helpers.hpp"

using namespace monomap;
using namespace monomap::testing;

namespace {

TWeilDivisor div(std::vector<long> c) {
    TWeilDivisor D;
    for (long x : c) D.coeffs.push_back(Rational(x));
    return D;
}

bool same(const TWeilDivisor& a, const TWeilDivisor& b) { return a.coeffs == b.coeffs; }

Rational rand_q(std::mt19937_64& rng, int range = 6) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 4);
    return Rational(num(rng), den(rng));
}

RatMatrix random_rat_matrix(std::mt19937_64& rng, long n) {
    RatMatrix M(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) M(i, j) = rand_q(rng);
    return M;
}

}  // namespace

TEST_CASE("evaluate_support examples") {
    Fan P2 = fan_projective(2);
    auto psi0 = support_of(P2, basis_divisor(P2, 0));
    CHECK(evaluate_support(P2, psi0, rvec({-3, 1})) == -3);
    CHECK(evaluate_support(P2, psi0, rvec({0, 0})) == 0);
    std::mt19937_64 rng(31);
    for (int s = 0; s < 200; ++s) {
        RatVector v(2);
        v << rand_q(rng), rand_q(rng);
        Rational m = std::min({Rational(0), v(0), v(1)});
        CHECK(evaluate_support(P2, psi0, v) == m);
    }
    Fan Q = fan_p1n(2);
    auto psi1 = support_of(Q, basis_divisor(Q, 0));
    CHECK(evaluate_support(Q, psi1, rvec({2, -5})) == -2);
    for (int s = 0; s < 200; ++s) {
        RatVector v(2);
        v << rand_q(rng), rand_q(rng);
        CHECK(evaluate_support(Q, psi1, v) == std::min(-v(0), Rational(0)));
    }
    Fan quad = fan_custom({ivec({1, 0}), ivec({0, 1})}, {{0, 1}});
    CHECK_THROWS_AS(support_of(quad, div({1, 0})), DomainError);
    CHECK_THROWS_AS(support_of(P2, div({1, 0})), DimensionError);
}

TEST_CASE("support functions are continuous across shared faces") {
    std::mt19937_64 rng(32);
    for (const Fan& f : {fan_projective(3), fan_p1n(3), fan_weighted({Integer(1), Integer(2), Integer(3)}).first}) {
        for (int s = 0; s < 20; ++s) {
            std::vector<Rational> vals;
            for (std::size_t i = 0; i < f.rays.size(); ++i) vals.push_back(rand_q(rng));
            auto psi = support_function(f, vals);
            for (std::size_t a = 0; a < f.max_cones.size(); ++a)
                for (std::size_t b = 0; b < f.max_cones.size(); ++b)
                    for (int r : f.max_cones[a]) {
                        if (std::find(f.max_cones[b].begin(), f.max_cones[b].end(), r) == f.max_cones[b].end()) continue;
                        RatVector v = to_rat(f.rays[r]);
                        Rational ua = psi.functionals[a].dot(v), ub = psi.functionals[b].dot(v);
                        CHECK(ua == ub);
                        CHECK(ua == vals[r]);
                    }
        }
    }
}

TEST_CASE("pullback examples") {
    Fan P2 = fan_projective(2);
    IntMatrix A = imat({{-1, -2}, {2, 0}});
    auto D = pullback_divisor(A, P2, P2, basis_divisor(P2, 0));
    CHECK(same(D, div({2, 1, 2})));
    CHECK(degree_Pn(P2, D) == 5);
    CHECK(same(pullback_divisor(A, P2, P2, basis_divisor(P2, 1)), div({5, 0, 0})));
    CHECK(same(pullback_divisor(A, P2, P2, basis_divisor(P2, 2)), div({0, 3, 2})));
    std::mt19937_64 rng(33);
    for (const Fan& f : {P2, fan_p1n(2), fan_p1n(3)}) {
        TWeilDivisor E;
        for (std::size_t i = 0; i < f.rays.size(); ++i) E.coeffs.push_back(rand_q(rng));
        CHECK(same(pullback_divisor(identity<Integer>(f.dim), f, f, E), E));
    }
    CHECK_THROWS_AS(pullback_divisor(imat({{1, 1}, {1, 1}}), P2, P2, basis_divisor(P2, 0)), DomainError);
    CHECK_THROWS_AS(pullback_divisor(identity<Integer>(3), P2, P2, basis_divisor(P2, 0)), DimensionError);
}

TEST_CASE("degree examples") {
    Fan P2 = fan_projective(2);
    CHECK(degree_Pn(P2, div({2, 1, 2})) == 5);
    CHECK(degree_Pn(P2, div({0, 0, 0})) == 0);
    CHECK(degree_Pn(P2, div({1, -1, 0})) == 0);
    CHECK_THROWS_AS(degree_Pn(fan_p1n(2), div({1, 0, 0, 0})), DomainError);

    auto w = weighted_lattice({Integer(1), Integer(2), Integer(3)});
    CHECK(weighted_degree(div({1, 1, 1}), w) == 6);
    CHECK_THROWS_AS(weighted_degree(div({1, 1}), w), DimensionError);
    auto ones = weighted_lattice({Integer(1), Integer(1), Integer(1), Integer(1)});
    std::mt19937_64 rng(34);
    Fan P3 = fan_projective(3);
    for (int s = 0; s < 50; ++s) {
        TWeilDivisor D;
        for (int i = 0; i < 4; ++i) D.coeffs.push_back(rand_q(rng));
        CHECK(weighted_degree(D, ones) == degree_Pn(P3, D));
    }
    CHECK(is_cartier_weighted(div({6, 0, 0}), w));
    CHECK(is_cartier_weighted(div({0, 3, 0}), w));
    CHECK(!is_cartier_weighted(div({0, 0, 1}), w));
    CHECK(is_cartier_weighted(div({1, 1, 1}), w));
}

TEST_CASE("weighted degree of the same support function") {
    // psi on N_R, seen once through the P^n rays e_i and once through the weighted rays e_i/d_i
    std::mt19937_64 rng(35);
    Fan P2 = fan_projective(2);
    for (auto weights : {std::vector<Integer>{1, 2, 3}, std::vector<Integer>{1, 1, 2}, std::vector<Integer>{2, 3, 5}}) {
        auto [fw, w] = fan_weighted(weights);
        for (int s = 0; s < 30; ++s) {
            std::vector<Rational> vals;
            for (int i = 0; i < 3; ++i) vals.push_back(rand_q(rng));
            auto psi = support_function(P2, vals);
            TWeilDivisor D = divisor_of(psi), Dw;
            for (std::size_t i = 0; i < fw.rays.size(); ++i) {
                RatVector x = w.basis.lazyProduct(to_rat(fw.rays[i]));
                Dw.coeffs.push_back(-evaluate_support(P2, psi, x));
            }
            CHECK(weighted_degree(Dw, w) == degree_Pn(P2, D));
        }
    }
}

TEST_CASE("weighted pullback degree equals nu") {
    auto [fw, w] = fan_weighted({Integer(1), Integer(2), Integer(3)});
    RatMatrix A = rmat({{"1", "-3/2"}, {"2/3", "0"}});
    CHECK(nu(A) == Rational(13, 6));
    RatMatrix C = to_lattice_coords(A, w);
    // V(tau_0) has weighted degree d_0 = 1
    auto D = pullback_divisor(C, fw, fw, basis_divisor(fw, 0));
    CHECK(weighted_degree(D, w) == Rational(13, 6));
    for (int i = 1; i < 3; ++i) {
        auto Di = pullback_divisor(C, fw, fw, basis_divisor(fw, i));
        CHECK(weighted_degree(Di, w) == Rational(13, 6) * Rational(w.weights[i]));
    }
}

TEST_CASE("nu examples") {
    for (long n = 1; n <= 6; ++n) {
        CHECK(nu(identity<Integer>(n)) == 1);
        // the closed form gives n here; each column contributes 1 and no row sum is positive
        CHECK(nu(IntMatrix(-identity<Integer>(n))) == n);
    }
    CHECK(nu(imat({{-1, -2}, {2, 0}})) == 5);
    CHECK(nu(imat({{-3, 2}, {-2, -4}})) == 7);
    CHECK(nu(rmat({{"1", "-3/2"}, {"2/3", "0"}})) == Rational(13, 6));
    CHECK_THROWS_AS(nu(IntMatrix(IntMatrix::Zero(2, 3))), DimensionError);
}

TEST_CASE("homogenization examples") {
    IntMatrix A = imat({{-1, -2}, {2, 0}});
    IntMatrix H = homogenization_matrix(A);
    CHECK(equal(H, imat({{2, 1, 2}, {5, 0, 0}, {0, 3, 2}})));
    IntMatrix H2 = mat_mul(H, H);
    CHECK(equal(H2, imat({{9, 8, 8}, {10, 5, 10}, {15, 6, 4}})));
    IntMatrix R = strip_common_factor(H2);
    CHECK(equal(R, imat({{0, 3, 4}, {1, 0, 6}, {6, 1, 0}})));
    IntMatrix A2 = mat_mul(A, A);
    CHECK(equal(A2, imat({{-3, 2}, {-2, -4}})));
    CHECK(equal(homogenization_matrix(A2), R));
    CHECK(equal(homogenization_matrix(identity<Integer>(3)), identity<Integer>(4)));
    CHECK_THROWS_AS(homogenization_matrix(imat({{1, 2}, {2, 4}})), DomainError);
}

TEST_CASE("property: nu axioms") {
    std::mt19937_64 rng(36);
    for (int s = 0; s < 500; ++s) {
        long n = 1 + s % 4;
        RatMatrix M = random_rat_matrix(rng, n), N = random_rat_matrix(rng, n);
        if (s % 50 == 0) M.setConstant(Rational(0));
        Rational v = nu(M);
        CHECK(v >= 0);
        CHECK((v == 0) == is_zero<Rational>(M));
        std::uniform_int_distribution<int> rn(0, 7), rd(1, 5);
        Rational r(rn(rng), rd(rng));
        CHECK(nu(RatMatrix(M * r)) == r * v);
        CHECK(nu(RatMatrix(M + N)) <= v + nu(N));
    }
}

TEST_CASE("property: the two nu paths agree and every psi_i gives the same value") {
    std::mt19937_64 rng(37);
    for (int s = 0; s < 200; ++s) {
        long n = 1 + s % 4;
        RatMatrix M = random_rat_matrix(rng, n);
        Rational v = nu(M);
        for (int i = 0; i <= n; ++i) CHECK(nu_via_support(M, i) == v);
    }
}

TEST_CASE("property: pullback is additive and preserves principal divisors") {
    std::mt19937_64 rng(38);
    for (int s = 0; s < 120; ++s) {
        long n = 2 + s % 2;
        Fan f = s % 3 == 0 ? fan_p1n(n) : fan_projective(n);
        IntMatrix A = random_nonsingular(rng, n, -3, 3);
        TWeilDivisor D, E, DE;
        for (std::size_t i = 0; i < f.rays.size(); ++i) {
            D.coeffs.push_back(rand_q(rng));
            E.coeffs.push_back(rand_q(rng));
            DE.coeffs.push_back(D.coeffs[i] + E.coeffs[i]);
        }
        auto pD = pullback_divisor(A, f, f, D), pE = pullback_divisor(A, f, f, E);
        auto pDE = pullback_divisor(A, f, f, DE);
        for (std::size_t i = 0; i < f.rays.size(); ++i) CHECK(pDE.coeffs[i] == pD.coeffs[i] + pE.coeffs[i]);

        RatVector u(n);
        for (long i = 0; i < n; ++i) u(i) = rand_q(rng);
        auto pu = pullback_divisor(A, f, f, principal_divisor(f, u));
        RatVector uA = to_rat(A).transpose().lazyProduct(u);
        CHECK(same(pu, principal_divisor(f, uA)));
        // and the total degree of a principal divisor vanishes
        if (is_projective_fan(f)) CHECK(degree_Pn(f, pu) == 0);
    }
}

TEST_CASE("property: rows of h(A) are pullbacks of the torus divisors") {
    std::mt19937_64 rng(39);
    for (int s = 0; s < 100; ++s) {
        long n = 1 + s % 4;
        IntMatrix A = random_nonsingular(rng, n, -4, 4);
        Fan P = fan_projective(n);
        IntMatrix H = homogenization_matrix(A);
        Integer v = nu(A);
        for (int i = 0; i <= n; ++i) {
            auto D = pullback_divisor(A, P, P, basis_divisor(P, i));
            Rational sum = 0;
            for (int j = 0; j <= n; ++j) {
                CHECK(D.coeffs[j] == Rational(H(i, j)));
                CHECK(H(i, j) >= 0);
                sum += D.coeffs[j];
            }
            CHECK(sum == Rational(v));
        }
        for (int j = 0; j <= n; ++j) {
            bool nonzero = false;
            for (int i = 0; i <= n; ++i) nonzero |= H(i, j) != 0;
            CHECK(nonzero);
        }
    }
}
