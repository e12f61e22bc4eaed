// One PASS/FAIL line per acceptance criterion, with the stated tolerances and sizes.
// Criteria the mathematics rules out are still checked as stated, and they report FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "monomap/divisor.hpp"
#include "monomap/dynamics.hpp"
#include "monomap/poly.hpp"
#include "monomap/stability.hpp"
#include "helpers.hpp"

using namespace monomap;
using namespace monomap::testing;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    Outcome o;
    auto t0 = Clock::now();
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double ms = ms_since(t0);
    if (!o.ok) ++failures;
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << "  " << id << "  " << name << "  (" << ms << " ms)";
    if (!o.detail.empty()) line << "  " << o.detail;
    std::cout << line.str() << std::endl;
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

IntMatrix random_matrix(std::mt19937_64& rng, long n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix A(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) A(i, j) = d(rng);
    return A;
}

IntMatrix cdiv_via_pullback(const IntMatrix& A) {
    Fan f = fan_p1n(A.rows());
    IntMatrix M(f.rays.size(), f.rays.size());
    for (std::size_t c = 0; c < f.rays.size(); ++c) {
        auto D = pullback_divisor(A, f, f, basis_divisor(f, static_cast<int>(c)));
        for (std::size_t r = 0; r < f.rays.size(); ++r) M(r, c) = numer(D.coeffs[r]);
    }
    return M;
}

// Pic((P^1)^n) pullback: entry (j, i) is |a_ij|
IntMatrix pic_abs_transpose(const IntMatrix& A) {
    IntMatrix P(A.cols(), A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) P(j, i) = mp::abs(A(i, j));
    return P;
}

// least squares slope of y on x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size(), my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    return sxy / sxx;
}

double abs_sum_root(const IntMatrix& P, long k) {
    Integer s = 0;
    for (Eigen::Index i = 0; i < P.rows(); ++i)
        for (Eigen::Index j = 0; j < P.cols(); ++j) s += mp::abs(P(i, j));
    return std::exp(log_abs(s) / k);
}

const IntMatrix kUnstable = imat({{-1, -2}, {2, 0}});

}  // namespace

int main(int argc, char** argv) {
    auto suite_start = Clock::now();

    criterion(1, "pullback golden on P^2", [] {
        Outcome o;
        Fan f = fan_projective(2);
        auto t0 = Clock::now();
        TWeilDivisor D = pullback_divisor(kUnstable, f, f, basis_divisor(f, 0));
        double ms = ms_since(t0);
        o.require(D.coeffs == std::vector<Rational>{2, 1, 2}, "pullback of V(tau_0) is not 2V0+V1+2V2");
        o.require(ms < 1.0, "pullback took " + fmt(ms) + " ms");
        return o;
    });

    criterion(2, "homogenization golden", [] {
        Outcome o;
        IntMatrix H = homogenization_matrix(kUnstable);
        o.require(equal(H, imat({{2, 1, 2}, {5, 0, 0}, {0, 3, 2}})), "h(A) rows");
        // composing the homogenized map with itself: exponents multiply as H * H
        IntMatrix H2 = mat_mul(H, H);
        o.require(equal(H2, imat({{9, 8, 8}, {10, 5, 10}, {15, 6, 4}})), "squared map before cancellation");
        IntVector common(3);
        for (int c = 0; c < 3; ++c) common(c) = std::min({H2(0, c), H2(1, c), H2(2, c)});
        o.require(equal(common, ivec({9, 5, 4})), "common factor");
        IntMatrix R = strip_common_factor(H2);
        o.require(equal(R, imat({{0, 3, 4}, {1, 0, 6}, {6, 1, 0}})), "reduced map");
        o.require(equal(R, homogenization_matrix(mat_mul(kUnstable, kUnstable))), "reduced map is h(A^2)");
        auto k = check_hA_power(kUnstable, 10);
        o.require(k && *k == 2, "check_hA_power does not find k = 2");
        return o;
    });

    criterion(3, "degree sequence goldens, k <= 30", [] {
        Outcome o;
        auto t0 = Clock::now();
        auto a = degree_sequence(imat({{-3, 0}, {0, 2}}), 30);
        auto b = degree_sequence(imat({{-3, 0, 0}, {0, -3, 0}, {0, 0, 2}}), 30);
        auto c = degree_sequence(imat({{2, 1}, {0, 2}}), 30);
        double ms = ms_since(t0);
        for (long k = 1; k <= 30; ++k) {
            Integer p3 = mp::pow(Integer(3), k), p2 = mp::pow(Integer(2), k);
            Integer ea = k % 2 == 0 ? p3 : p3 + p2;
            Integer eb = k % 2 == 0 ? p3 : 2 * p3 + p2;
            o.require(a[k - 1] == ea, "diag(-3,2) at k=" + std::to_string(k));
            o.require(b[k - 1] == eb, "diag(-3,-3,2) at k=" + std::to_string(k));
            if (k >= 2) o.require(c[k - 1] == p2 + k * mp::pow(Integer(2), k - 1), "Jordan block at k=" + std::to_string(k));
        }
        o.require(ms < 1000, "took " + fmt(ms) + " ms");
        return o;
    });

    criterion(4, "nu goldens", [] {
        Outcome o;
        for (long n = 2; n <= 6; ++n) {
            o.require(nu(identity<Integer>(n)) == 1, "nu(I_" + std::to_string(n) + ")");
            Integer v = nu(IntMatrix(-identity<Integer>(n)));
            o.require(v == n - 1, "nu(-I_" + std::to_string(n) + ") = " + to_string(v) + ", expected " + std::to_string(n - 1));
        }
        auto [fw, w] = fan_weighted({Integer(1), Integer(2), Integer(3)});
        RatMatrix A = rmat({{"1", "-3/2"}, {"2/3", "0"}});
        TWeilDivisor D = pullback_divisor(to_lattice_coords(A, w), fw, fw, basis_divisor(fw, 0));
        o.require(weighted_degree(D, w) == Rational(13, 6), "weighted degree on P(1,2,3)");
        o.require(nu(A) == Rational(13, 6), "nu of the rational matrix");
        return o;
    });

    criterion(5, "stability decision", [] {
        Outcome o;
        auto t0 = Clock::now();
        Fan P2 = fan_projective(2);
        StabilityReport r = is_strongly_stable(kUnstable, P2);
        o.require(!r.strongly_stable, "[[-1,-2],[2,0]] reported stable");
        o.require(r.witness.has_value(), "no witness");
        for (auto& w : r.failures) o.require(!maps_regularly(kUnstable, w.cone, P2, P2), "witness cone maps regularly");
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<long> dim(1, 4);
        int checked = 0;
        while (checked < 100) {
            long n = dim(rng);
            IntMatrix A = random_matrix(rng, n, 0, 5);
            if (det(A) == 0) continue;
            ++checked;
            if (!is_strongly_stable(A, fan_p1n(n)).strongly_stable) o.require(false, "nonnegative matrix not stable");
        }
        double ms = ms_since(t0);
        o.require(ms < 5000, "took " + fmt(ms) + " ms");
        return o;
    });

    criterion(6, "star three-way equivalence, all 2x2 pairs in {-1,0,1}", [] {
        Outcome o;
        std::vector<IntMatrix> mats;
        for (int code = 0; code < 81; ++code) {
            int c = code;
            IntMatrix A(2, 2);
            for (int e = 0; e < 4; ++e, c /= 3) A(e / 2, e % 2) = c % 3 - 1;
            mats.push_back(A);
        }
        // the block formula covers singular matrices too; on the others it must match pullback_divisor
        std::vector<IntMatrix> cd;
        for (auto& A : mats) {
            cd.push_back(cdiv_pullback_matrix_p1n(A));
            if (det(A) != 0) o.require(equal(cd.back(), cdiv_via_pullback(A)), "block formula differs from pullback");
        }
        long pairs = 0, bad = 0;
        for (std::size_t a = 0; a < mats.size(); ++a)
            for (std::size_t b = 0; b < mats.size(); ++b) {
                ++pairs;
                IntMatrix AB = mat_mul(mats[a], mats[b]);
                bool star = star_condition(mats[a], mats[b]).holds;
                bool cdiv = equal(cdiv_pullback_matrix_p1n(AB), mat_mul(cd[b], cd[a]));
                bool pic = equal(pic_abs_transpose(AB), mat_mul(pic_abs_transpose(mats[b]), pic_abs_transpose(mats[a])));
                if (star != cdiv || star != pic) ++bad;
            }
        o.require(pairs == 6561, "pair count");
        o.require(bad == 0, std::to_string(bad) + " pairs disagree");
        return o;
    });

    criterion(7, "degree_sequence equals composition oracle", [] {
        Outcome o;
        auto t0 = Clock::now();
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<long> dim(2, 3);
        int checked = 0;
        while (checked < 50) {
            IntMatrix A = random_matrix(rng, dim(rng), -3, 3);
            if (det(A) == 0) continue;
            ++checked;
            auto seq = degree_sequence(A, 4);
            for (long k = 1; k <= 4; ++k)
                if (seq[k - 1] != oracle_degree_by_composition(A, k)) o.require(false, "mismatch at k=" + std::to_string(k));
        }
        double ms = ms_since(t0);
        o.require(ms < 30000, "took " + fmt(ms) + " ms");
        return o;
    });

    criterion(8, "growth bounds", [] {
        Outcome o;
        auto seq = degree_sequence(kUnstable, 2000);
        const double ln2 = std::log(2.0);
        double lo = 1e300, hi = 0;
        std::vector<double> x, y;
        for (long k = 1; k <= 2000; ++k) {
            double r = std::exp(log_abs(seq[k - 1]) - k * ln2);
            lo = std::min(lo, r), hi = std::max(hi, r);
            if (k >= 1000) x.push_back(std::log(double(k))), y.push_back(std::log(r));
        }
        o.require(lo >= 1.0 && hi <= 10.0, "deg_k/2^k in [" + fmt(lo) + ", " + fmt(hi) + "]");
        double s = ls_slope(x, y);
        o.require(std::abs(s) < 0.05, "tail slope " + fmt(s));
        auto J = degree_sequence(imat({{2, 1}, {0, 2}}), 100);
        double v = std::exp(log_abs(J[99]) - std::log(100.0) - 100 * ln2);
        o.require(std::abs(v - 0.5) < 1e-3, "deg_100/(100*2^100) = " + fmt(v) + ", |diff| = " + fmt(std::abs(v - 0.5)));
        return o;
    });

    criterion(9, "dynamical degree at k = 60", [] {
        Outcome o;
        for (const IntMatrix& A : {imat({{-3, 0}, {0, 2}}), kUnstable, imat({{2, 1}, {1, 1}})}) {
            double rho = spectral_radius(A).rho;
            double r = abs_sum_root(mat_pow(A, 60), 60);
            std::ostringstream name;
            name << "[[" << A(0, 0) << "," << A(0, 1) << "],[" << A(1, 0) << "," << A(1, 1) << "]]";
            o.require(std::abs(r - rho) < 1e-2, name.str() + ": " + fmt(r) + " vs rho " + fmt(rho));
        }
        return o;
    });

    criterion(10, "asymptotic constants", [] {
        Outcome o;
        IntMatrix A = imat({{-3, 0}, {0, 2}});
        auto a = asymptotic_constants(A, degree_sequence(A, 60), 2, 1e-6);
        o.require(std::abs(a.C[0] - 1) < 1e-6 && std::abs(a.C[1] - 1) < 1e-6,
                  "diag(-3,2): C = " + fmt(a.C[0]) + ", " + fmt(a.C[1]));
        IntMatrix B = imat({{-3, 0, 0}, {0, -3, 0}, {0, 0, 2}});
        auto b = asymptotic_constants(B, degree_sequence(B, 60), 2, 1e-6);
        o.require(std::abs(b.C[0] - 1) < 1e-6 && std::abs(b.C[1] - 2) < 1e-6,
                  "diag(-3,-3,2): C = " + fmt(b.C[0]) + ", " + fmt(b.C[1]));
        std::mt19937_64 rng(10);
        std::uniform_int_distribution<long> dim(2, 4), mag(1, 5), sgn(0, 1);
        int done = 0;
        while (done < 20) {
            long n = dim(rng);
            IntMatrix D = zeros<Integer>(n, n);
            bool pos = false, neg = false;
            for (long i = 0; i < n; ++i) {
                long v = mag(rng) * (sgn(rng) ? 1 : -1);
                D(i, i) = v;
                (v > 0 ? pos : neg) = true;
            }
            if (!pos || !neg) continue;
            ++done;
            // residue classes settle like (second / first modulus)^k; 250 terms covers ratio 4/5
            auto c = asymptotic_constants(D, degree_sequence(D, 250), 2, 1e-6);
            if (!(c.C[0] <= c.C[1] * c.C[1] + 1e-9)) o.require(false, "C0 > C1^2");
        }
        return o;
    });

    criterion(11, "density proxy scan", [] {
        Outcome o;
        ScanStats s500 = normalized_degree_scan(kUnstable, 500);
        ScanStats s2000 = normalized_degree_scan(kUnstable, 2000);
        o.require(s2000.min >= 1.0, "min " + fmt(s2000.min));
        o.require(s2000.distinct >= 200, "distinct " + std::to_string(s2000.distinct));
        o.require(s2000.max_gap < s500.max_gap, "max gap " + fmt(s2000.max_gap) + " vs " + fmt(s500.max_gap));
        return o;
    });

    criterion(12, "non-stabilizability classification", [] {
        Outcome o;
        o.require(non_stabilizable_2x2(kUnstable).kind == Stabilizability::NoStableModel, "[[-1,-2],[2,0]]");
        o.require(non_stabilizable_2x2(imat({{0, -1}, {1, 0}})).kind == Stabilizability::RatioRootOfUnity, "[[0,-1],[1,0]]");
        return o;
    });

    criterion(13, "stabilizing fan for [[2,1],[1,1]]", [] {
        Outcome o;
        auto t0 = Clock::now();
        IntMatrix A = imat({{2, 1}, {1, 1}});
        auto sf = stabilizing_fan(A);
        o.require(sf.has_value(), "no fan returned");
        if (sf) {
            o.require(sf->k >= 1 && sf->k <= 10, "k = " + std::to_string(sf->k));
            Fan re = fan_custom(sf->fan.rays, sf->fan.max_cones);
            o.require(is_strongly_stable(mat_pow(A, sf->k), re).strongly_stable, "A^k is not stable on the returned fan");
        }
        double ms = ms_since(t0);
        o.require(ms < 10000, "took " + fmt(ms) + " ms");
        return o;
    });

    criterion(14, "polynomial map verdicts", [] {
        Outcome o;
        PolynomialMap f = parse_map("z1^2*z2+z1^2 ; z1*z2");
        o.require(is_stable_poly(f, 4).verdict == PolyVerdict::StableCertified, "first map verdict");
        IntMatrix D = degree_matrix(f);
        for (long k = 1; k <= 4; ++k)
            o.require(equal(degree_matrix(iterate(f, k)), mat_pow(D, k)), "first map Deg(f^" + std::to_string(k) + ")");
        auto g = is_stable_poly(parse_map("z1+z2 ; z1*z2"), 4);
        o.require(g.verdict == PolyVerdict::UnstableCertified && g.N <= 3, "second map");
        PolynomialMap h = parse_map("z2 ; z3 ; z1+z2");
        o.require(is_stable_poly(h, 4).verdict == PolyVerdict::Inconclusive, "third map verdict");
        IntMatrix Dh = degree_matrix(h);
        for (long k = 1; k <= 4; ++k)
            o.require(equal(degree_matrix(iterate(h, k)), mat_pow(Dh, k)), "third map Deg(f^" + std::to_string(k) + ") != Deg(f)^" + std::to_string(k));
        return o;
    });

    criterion(15, "property suites with fixed seeds, whole suite under 3 minutes", [&] {
        Outcome o;
        // the unit/property binaries are passed on the command line by the build
        for (int i = 1; i < argc; ++i) {
            int rc = std::system((std::string(argv[i]) + " > /dev/null 2>&1").c_str());
            o.require(rc == 0, std::string(argv[i]) + " failed");
        }
        o.require(argc > 1, "no suites given");
        double s = ms_since(suite_start) / 1000;
        o.require(s < 180, "took " + fmt(s) + " s");
        return o;
    });

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
