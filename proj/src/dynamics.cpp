#include "monomap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "monomap/poly.hpp"
#include "monomap/stability.hpp"

namespace monomap {

namespace {

void require_nonsingular(const IntMatrix& A, const char* op) {
    require_square(A, op);
    if (det(A) == 0) throw DomainError(std::string(op) + ": matrix is singular");
}

// rho together with rho^2 when that is an integer
struct Rho {
    SpectrumReport sp;
    double log_rho = 0;
    std::optional<Integer> rho_sq;
};

Rho rho_info(const IntMatrix& A) {
    Rho r;
    r.sp = spectral_radius(A);
    r.log_rho = std::log(r.sp.rho);
    Integer s = floor_of(r.sp.rho_hi * r.sp.rho_hi);
    if (Rational(s) > r.sp.rho_lo * r.sp.rho_lo && s > 0 && eval(char_poly(kron(A, A)), Rational(s)) == 0)
        r.rho_sq = s;
    return r;
}

// deg / (k^ell rho^k) in double, exact division whenever rho^2 is an integer
double normalize(const Integer& deg, long k, long ell, const Rho& r) {
    double v;
    if (r.rho_sq) {
        Rational q = Rational(deg * deg) / Rational(mp::pow(*r.rho_sq, static_cast<unsigned>(k)));
        double d = to_double(q);
        v = std::isfinite(d) && d > 0 ? std::sqrt(d) : std::exp(0.5 * log_abs(q));
    } else {
        v = std::exp(log_abs(deg) - static_cast<double>(k) * r.log_rho);
    }
    return v / std::pow(static_cast<double>(k), static_cast<double>(ell));
}

struct Fit {
    double intercept = 0, slope = 0, residual = 0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    Fit f;
    double den = n * sxx - sx * sx;
    f.slope = den != 0 ? (n * sxy - sx * sy) / den : 0;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - f.intercept - f.slope * x[i];
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

}  // namespace

std::vector<Integer> degree_sequence(const IntMatrix& A, long k_max) {
    require_nonsingular(A, "degree_sequence");
    std::vector<Integer> out;
    IntMatrix P = A;
    for (long k = 1; k <= k_max; ++k) {
        if (k > 1) P = mat_mul(P, A);
        out.push_back(nu(P));
    }
    return out;
}

std::vector<Rational> degree_sequence(const RatMatrix& A, long k_max) {
    require_square(A, "degree_sequence");
    if (det(A) == 0) throw DomainError("degree_sequence: matrix is singular");
    std::vector<Rational> out;
    RatMatrix P = A;
    for (long k = 1; k <= k_max; ++k) {
        if (k > 1) P = mat_mul(P, A);
        out.push_back(nu(P));
    }
    return out;
}

std::vector<Rational> degree_sequence(const RatMatrix& A, long k_max, const WeightedLattice& w) {
    require_square(A, "degree_sequence");
    if (A.rows() + 1 != static_cast<Eigen::Index>(w.weights.size()))
        throw DimensionError("degree_sequence: matrix size does not match the number of weights");
    if (!preserves_lattice(A, w)) throw DomainError("degree_sequence: matrix does not preserve the weighted lattice");
    return degree_sequence(A, k_max);
}

Integer oracle_degree_by_composition(const IntMatrix& A, long k) {
    require_nonsingular(A, "oracle_degree_by_composition");
    if (k < 1) throw DomainError("oracle_degree_by_composition: k must be positive");
    const int n = static_cast<int>(A.rows());
    // z_j = x_j / x_0, and F_i = f_i(x / x_0) as a degree-zero Laurent monomial
    PolynomialMap F;
    F.n_vars = n + 1;
    F.comps.push_back(SparsePoly::constant(n + 1, 1));
    for (int i = 0; i < n; ++i) {
        Exponent e(n + 1, 0);
        for (int j = 0; j < n; ++j) {
            long a = A(i, j).convert_to<long>();
            e[j + 1] = a;
            e[0] -= a;
        }
        F.comps.push_back(SparsePoly::monomial(e));
    }
    PolynomialMap G = iterate(F, k);
    // clear denominators with the smallest monomial; the degree is what is left
    Integer deg = 0;
    for (int v = 0; v <= n; ++v) {
        long lo = 0;
        bool first = true;
        for (auto& c : G.comps) {
            long x = c.terms.begin()->first[v];
            lo = first ? x : std::min(lo, x);
            first = false;
        }
        deg -= lo;
    }
    return deg;
}

const char* to_string(Provenance p) { return p == Provenance::Exact ? "Exact" : "Fitted"; }

GrowthExponent growth_exponent(const IntMatrix& A, const std::vector<Integer>& degrees) {
    require_nonsingular(A, "growth_exponent");
    Rho r = rho_info(A);
    const int mp_ = r.sp.mult_plus, mm = r.sp.mult_minus;
    GrowthExponent g;
    if (r.rho_sq && r.sp.rho_sq_multiplicity == mp_ * mp_ + mm * mm) {
        // only +-rho on the circle of radius rho; Jordan blocks of A at +-rho match those of A^2 at rho^2
        const long n = A.rows();
        IntMatrix N = mat_mul(A, A) - identity<Integer>(n) * (*r.rho_sq);
        IntMatrix Nj = N;
        long prev = rank(N), j = 1;
        while (true) {
            Nj = mat_mul(Nj, N);
            long cur = rank(Nj);
            if (cur == prev) break;
            prev = cur;
            ++j;
        }
        g.ell = j - 1;
        g.provenance = Provenance::Exact;
        return g;
    }
    const long k_max = static_cast<long>(degrees.size());
    if (k_max < 8) throw DomainError("growth_exponent: need at least 8 degrees for a fit, got " + std::to_string(k_max));
    std::vector<double> x, y;
    for (long k = k_max / 2; k <= k_max; ++k) {
        x.push_back(std::log(static_cast<double>(k)));
        y.push_back(std::log(normalize(degrees[k - 1], k, 0, r)));
    }
    Fit f = least_squares(x, y);
    g.provenance = Provenance::Fitted;
    g.slope = f.slope;
    g.residual = f.residual;
    g.ell = std::clamp<long>(std::lround(f.slope), 0, A.rows() - 1);
    return g;
}

AsymptoticConstants asymptotic_constants(const IntMatrix& A, const std::vector<Integer>& degrees, long period,
                                         double tol) {
    require_nonsingular(A, "asymptotic_constants");
    if (period < 1) throw DomainError("asymptotic_constants: period must be positive");
    const long k_max = static_cast<long>(degrees.size());
    if (k_max < 2 * period) throw DomainError("asymptotic_constants: need at least two values per residue class");
    Rho r = rho_info(A);
    AsymptoticConstants out;
    out.period = period;
    out.converged = true;
    for (long l = 0; l < period; ++l) {
        // last two k <= k_max with k = l mod p
        long k1 = k_max - ((k_max - l) % period + period) % period;
        long k0 = k1 - period;
        double c1 = normalize(degrees[k1 - 1], k1, 0, r), c0 = normalize(degrees[k0 - 1], k0, 0, r);
        out.C.push_back(c1);
        out.cauchy.push_back(std::abs(c1 - c0));
        if (std::abs(c1 - c0) > tol) out.converged = false;
    }

    // A^k / rho^k ~ sum over |lambda| = rho of (lambda/rho)^k times the spectral projection
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_double(A));
    Eigen::MatrixXcd V = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    double cond = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    bool usable = std::isfinite(cond) && cond < 1e8;
    std::vector<int> top;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(std::abs(es.eigenvalues()(i)) - r.sp.rho) < 1e-9 * r.sp.rho) {
            top.push_back(i);
            if (std::abs(std::pow(es.eigenvalues()(i) / r.sp.rho, static_cast<double>(period)) - 1.0) > 1e-8)
                usable = false;
        }
    Eigen::MatrixXcd Vinv = usable ? Eigen::MatrixXcd(V.inverse()) : Eigen::MatrixXcd();
    for (long l = 0; l < period; ++l) {
        if (!usable) {
            out.cross.push_back(std::nullopt);
            continue;
        }
        Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(A.rows(), A.cols());
        for (int i : top) Q += std::pow(es.eigenvalues()(i) / r.sp.rho, static_cast<double>(l)) * V.col(i) * Vinv.row(i);
        Eigen::MatrixXd Qr = Q.real();
        Mat<double> M = Qr;
        out.cross.push_back(nu(M));
    }
    if (!out.converged) {
        std::ostringstream msg;
        msg << "asymptotic_constants: residue classes have not settled to " << tol << " within k_max = " << k_max;
        throw ConvergenceError(msg.str());
    }
    return out;
}

ScanStats normalized_degree_scan(const IntMatrix& A, long k_max) {
    if (A.rows() != 2 || A.cols() != 2) throw DimensionError("normalized_degree_scan: matrix must be 2x2");
    auto kind = non_stabilizable_2x2(A).kind;
    if (kind != Stabilizability::NoStableModel)
        throw DomainError(std::string("normalized_degree_scan: needs a complex pair whose ratio is not a root of unity (") +
                          to_string(kind) + ")");
    const Integer d = det(A);
    ScanStats st;
    st.k_max = k_max;
    IntMatrix P = A;
    Integer dk = 1;
    for (long k = 1; k <= k_max; ++k) {
        if (k > 1) P = mat_mul(P, A);
        dk *= d;
        Integer deg = nu(P);
        // (deg_k / |lambda|^k)^2 = deg_k^2 / det^k exactly
        st.values.push_back(std::sqrt(to_double(Rational(deg * deg) / Rational(dk))));
    }
    std::vector<double> s = st.values;
    std::sort(s.begin(), s.end());
    st.min = s.front();
    st.max = s.back();
    st.distinct = 1;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] != s[i - 1]) ++st.distinct;
        st.max_gap = std::max(st.max_gap, s[i] - s[i - 1]);
    }
    st.note = "density proxy only: distinct count and largest gap of finitely many values; density itself is not finitely checkable";
    return st;
}

DynDegEstimate dynamical_degree_estimate(const IntMatrix& A, long k_max) {
    require_nonsingular(A, "dynamical_degree_estimate");
    if (k_max < 1) throw DomainError("dynamical_degree_estimate: k_max must be positive");
    DynDegEstimate e;
    e.rho = spectral_radius(A).rho;
    IntMatrix P = A;
    std::vector<double> logs;
    for (long k = 1; k <= k_max; ++k) {
        if (k > 1) P = mat_mul(P, A);
        Integer s = 0;
        for (Eigen::Index i = 0; i < P.size(); ++i) s += mp::abs(P(i));
        logs.push_back(log_abs(s));
        e.roots.push_back(std::exp(logs.back() / static_cast<double>(k)));
    }
    if (k_max < 4) {
        e.limit = e.roots.back();
        return e;
    }
    std::vector<double> x, y;
    for (long k = k_max / 2; k <= k_max; ++k) {
        x.push_back(static_cast<double>(k));
        y.push_back(logs[k - 1]);
    }
    e.limit = std::exp(least_squares(x, y).slope);
    return e;
}

DegreeSequenceReport degree_report(const IntMatrix& A, long k_max) {
    DegreeSequenceReport rep;
    rep.degrees = degree_sequence(A, k_max);
    Rho r = rho_info(A);
    rep.rho = r.sp.rho;
    try {
        rep.ell = growth_exponent(A, rep.degrees);
    } catch (const DomainError&) {
        // too few terms to fit; normalized values then use ell = 0
    }
    long ell = rep.ell ? rep.ell->ell : 0;
    for (long k = 1; k <= k_max; ++k) rep.normalized.push_back(normalize(rep.degrees[k - 1], k, ell, r));
    if (!rep.normalized.empty()) {
        rep.c_min = *std::min_element(rep.normalized.begin(), rep.normalized.end());
        rep.c_max = *std::max_element(rep.normalized.begin(), rep.normalized.end());
    }
    return rep;
}

}  // namespace monomap
