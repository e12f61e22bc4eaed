#include "monomap/linalg.hpp"

#include <cmath>

namespace monomap {

namespace {

// reduced row echelon form in place; returns pivot columns
std::vector<Eigen::Index> rref(RatMatrix& M, Eigen::Index ncols) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < ncols && r < M.rows(); ++c) {
        Eigen::Index p = r;
        while (p < M.rows() && M(p, c) == 0) ++p;
        if (p == M.rows()) continue;
        if (p != r) M.row(p).swap(M.row(r));
        Rational inv = Rational(1) / M(r, c);
        for (Eigen::Index j = 0; j < M.cols(); ++j) M(r, j) *= inv;
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            if (i == r || M(i, c) == 0) continue;
            Rational f = M(i, c);
            for (Eigen::Index j = 0; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

long rank(const RatMatrix& A) {
    RatMatrix M = A;
    return static_cast<long>(rref(M, M.cols()).size());
}

Rational det(const RatMatrix& A) {
    require_square(A, "det");
    RatMatrix M = A;
    Rational d = 1;
    const Eigen::Index n = M.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (p < n && M(p, c) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            M.row(p).swap(M.row(c));
            d = -d;
        }
        d *= M(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (M(i, c) == 0) continue;
            Rational f = M(i, c) / M(c, c);
            for (Eigen::Index j = c; j < n; ++j) M(i, j) -= f * M(c, j);
        }
    }
    return d;
}

Integer det(const IntMatrix& A) {
    require_square(A, "det");
    IntMatrix M = A;
    const Eigen::Index n = M.rows();
    Integer prev = 1;
    int s = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            Eigen::Index p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return Integer(0);
            M.row(p).swap(M.row(k));
            s = -s;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return Integer(s) * M(n - 1, n - 1);
}

std::optional<RatMatrix> inverse(const RatMatrix& A) {
    require_square(A, "inverse");
    const Eigen::Index n = A.rows();
    RatMatrix M(n, 2 * n);
    M.leftCols(n) = A;
    M.rightCols(n) = identity<Rational>(n);
    auto piv = rref(M, n);
    if (static_cast<Eigen::Index>(piv.size()) < n) return std::nullopt;
    RatMatrix inv = M.rightCols(n);
    return inv;
}

std::optional<RatVector> solve(const RatMatrix& A, const RatVector& b) {
    if (A.rows() != b.size()) throw DimensionError("solve: dimension mismatch");
    RatMatrix M(A.rows(), A.cols() + 1);
    M.leftCols(A.cols()) = A;
    M.col(A.cols()) = b;
    auto piv = rref(M, A.cols() + 1);
    RatVector x(A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j) x(j) = 0;
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == A.cols()) return std::nullopt;  // 0 = 1 row
        x(piv[r]) = M(r, A.cols());
    }
    return x;
}

IntMatrix lattice_basis(const std::vector<IntVector>& gens, long dim) {
    const Eigen::Index m = static_cast<Eigen::Index>(gens.size());
    IntMatrix M(m, dim);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (gens[i].size() != dim) throw DimensionError("lattice_basis: generator dimension mismatch");
        M.row(i) = gens[i].transpose();
    }
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < dim && r < m; ++c) {
        while (true) {
            Eigen::Index best = -1;
            for (Eigen::Index i = r; i < m; ++i)
                if (M(i, c) != 0 && (best < 0 || mp::abs(M(i, c)) < mp::abs(M(best, c)))) best = i;
            if (best < 0) break;
            if (best != r) M.row(best).swap(M.row(r));
            bool done = true;
            for (Eigen::Index i = r + 1; i < m; ++i) {
                if (M(i, c) == 0) continue;
                Integer q = M(i, c) / M(r, c);
                for (Eigen::Index j = 0; j < dim; ++j) M(i, j) -= q * M(r, j);
                if (M(i, c) != 0) done = false;
            }
            if (done) break;
        }
        bool any = false;
        for (Eigen::Index i = r; i < m; ++i) any = any || M(i, c) != 0;
        if (any) ++r;
    }
    IntMatrix B(dim, r);
    for (Eigen::Index i = 0; i < r; ++i) B.col(i) = M.row(i).transpose();
    return B;
}

Rational rational_approx(double x, long max_denominator) {
    if (!std::isfinite(x)) throw DomainError("rational_approx: non-finite value");
    if (max_denominator < 1) throw DomainError("rational_approx: max_denominator must be positive");
    // convergents h/k of the continued fraction, plus the best semiconvergent at the end
    long double y = x;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(y);
        Integer ai(static_cast<long long>(a));
        Integer h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_denominator) {
            Integer t = (Integer(max_denominator) - k0) / k1;
            Integer hs = t * h1 + h0, ks = t * k1 + k0;
            Rational c1(h1, k1), cs(hs, ks);
            Rational xr(x);
            return mp::abs(Rational(cs - xr)) < mp::abs(Rational(c1 - xr)) ? cs : c1;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        long double frac = y - a;
        if (frac < 1e-18L) break;
        y = 1.0L / frac;
    }
    return Rational(h1, k1);
}

int root_multiplicity(const UPoly& p0, const Integer& r) {
    int m = 0;
    UPoly p = p0;
    trim(p);
    while (!p.empty() && eval(p, Rational(r)) == 0) {
        // synthetic division by (x - r)
        UPoly q(p.size() - 1);
        Integer carry = 0;
        for (std::size_t i = p.size() - 1; i >= 1; --i) {
            carry = p[i] + carry * r;
            q[i - 1] = carry;
        }
        p = q;
        trim(p);
        ++m;
    }
    return m;
}

namespace {

UPoly reflect(const UPoly& p) {
    UPoly q = p;
    for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
    return q;
}

// multiplicity of the (at most one) root of P in (lo, hi]
int multiplicity_in(UPoly P, const Rational& lo, const Rational& hi) {
    int m = 0;
    while (degree(P) > 0) {
        if (sturm_count(sturm_chain(squarefree_part(P)), lo, hi) == 0) break;
        ++m;
        P = poly_gcd(P, derivative(P));
    }
    return m;
}

}  // namespace

SpectrumReport spectral_radius(const IntMatrix& A, bool with_eigvec, long max_denominator) {
    require_square(A, "spectral_radius");
    SpectrumReport rep;
    rep.char_poly = char_poly(A);
    const Eigen::Index n = A.rows();

    // the roots of charpoly(A (x) A) are all products lambda_i lambda_j; the largest real one is rho^2
    UPoly R = char_poly(kron(A, A));
    SturmChain S = sturm_chain(squarefree_part(R));

    Integer bound = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        Integer s = 0;
        for (Eigen::Index j = 0; j < n; ++j) s += mp::abs(A(i, j));
        if (s > bound) bound = s;
    }
    Rational xl = 0, xh = Rational(bound + 1);

    if (sturm_count(S, Rational(0), xh * xh) == 0) {
        // nilpotent
        rep.rho = 0;
        rep.rho_error_bound = 0;
        rep.rho_lo = rep.rho_hi = 0;
        rep.integer_dominant_root = Integer(0);
        rep.rho_sq_multiplicity = root_multiplicity(R, Integer(0));
        rep.mult_plus = root_multiplicity(rep.char_poly, Integer(0));
        rep.mult_minus = 0;
        return rep;
    }

    const Rational tol = Rational(1, Integer(1) << 72);
    for (int it = 0; it < 20000; ++it) {
        bool narrow = (xh - xl) <= tol * (xh > 1 ? xh : Rational(1));
        if (narrow && sturm_count(S, xl * xl, xh * xh) == 1) break;
        Rational mid = (xl + xh) / 2;
        if (sturm_count(S, mid * mid, xh * xh) >= 1)
            xl = mid;
        else
            xh = mid;
    }
    rep.rho_lo = xl;
    rep.rho_hi = xh;
    Rational mid = (xl + xh) / 2;
    rep.rho = to_double(mid);
    rep.rho_error_bound = to_double(xh - xl) + 4.0 * std::ldexp(1.0, -52) * rep.rho;

    rep.rho_sq_multiplicity = multiplicity_in(R, xl * xl, xh * xh);
    rep.mult_plus = multiplicity_in(rep.char_poly, xl, xh);
    rep.mult_minus = multiplicity_in(reflect(rep.char_poly), xl, xh);
    rep.unique_simple_real_dominant = rep.rho_sq_multiplicity == 1;

    // rational root test restricted to the integers of modulus rho
    Integer m = floor_of(mid + Rational(1, 2));
    if (m > 0 && Rational(m) > xl && Rational(m) <= xh) {
        std::size_t z = 0;
        while (z < rep.char_poly.size() && rep.char_poly[z] == 0) ++z;
        Integer c = rep.char_poly[z];
        if (c % m == 0) {
            if (eval(rep.char_poly, Rational(m)) == 0)
                rep.integer_dominant_root = m;
            else if (eval(rep.char_poly, Rational(-m)) == 0)
                rep.integer_dominant_root = Integer(-m);
        }
    }

    if (with_eigvec && rep.unique_simple_real_dominant) {
        auto ev = dominant_eigvec_approx(A, max_denominator);
        rep.dominant_eigvec = ev.v;
        rep.dominant_eigvec_residual = ev.residual;
    }
    return rep;
}

SpectrumReport spectral_radius(const RatMatrix& A) {
    require_square(A, "spectral_radius");
    Integer L = 1;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) L = lcm(L, denom(A(i, j)));
    IntMatrix B = to_int(RatMatrix(A * Rational(L)), "spectral_radius");
    SpectrumReport rep = spectral_radius(B);
    if (L == 1) return rep;
    double l = L.convert_to<double>();
    rep.rho /= l;
    rep.rho_error_bound /= l;
    rep.rho_lo /= Rational(L);
    rep.rho_hi /= Rational(L);
    if (rep.integer_dominant_root) {
        Rational r = Rational(*rep.integer_dominant_root) / Rational(L);
        if (is_integral(r))
            rep.integer_dominant_root = numer(r);
        else
            rep.integer_dominant_root.reset();
    }
    // characteristic polynomial of A itself is not integral in general; keep B's, scaled roots
    return rep;
}

EigvecApprox dominant_eigvec_approx(const IntMatrix& A, long max_denominator, long max_iter) {
    require_square(A, "dominant_eigvec_approx");
    const Eigen::Index n = A.rows();
    SpectrumReport sp = spectral_radius(A);

    // exact coordinate eigenvectors first
    for (Eigen::Index j = 0; j < n; ++j) {
        bool axis = true;
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j && A(i, j) != 0) axis = false;
        if (!axis) continue;
        Rational mu = mp::abs(Rational(A(j, j)));
        if ((sp.rho_hi == 0 && mu == 0) || (mu > sp.rho_lo && mu <= sp.rho_hi)) {
            EigvecApprox out;
            out.v = RatVector(n);
            for (Eigen::Index i = 0; i < n; ++i) out.v(i) = (i == j) ? 1 : 0;
            out.eigenvalue = A(j, j).convert_to<double>();
            out.residual = 0;
            return out;
        }
    }

    Eigen::MatrixXd D = to_double(A);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.1234567 * static_cast<double>(i);
    v.normalize();
    double lambda = 0;
    bool converged = false;
    for (long it = 0; it < max_iter; ++it) {
        Eigen::VectorXd w = D * v;
        lambda = v.dot(w);
        double r = (w - lambda * v).norm();
        if (r < 1e-13 * std::max(1.0, std::fabs(lambda))) {
            converged = true;
            break;
        }
        double nw = w.norm();
        if (nw == 0) break;
        v = w / nw;
    }
    if (!converged)
        throw ConvergenceError("dominant_eigvec_approx: power iteration did not converge in " +
                               std::to_string(max_iter) + " iterations (no unique real dominant eigenvalue?)");
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < n; ++i)
        if (std::fabs(v(i)) > std::fabs(v(imax))) imax = i;
    v /= v(imax);

    EigvecApprox out;
    out.v = RatVector(n);
    for (Eigen::Index i = 0; i < n; ++i) out.v(i) = rational_approx(v(i), max_denominator);
    Eigen::VectorXd vd(n);
    for (Eigen::Index i = 0; i < n; ++i) vd(i) = to_double(out.v(i));
    Eigen::VectorXd Av = D * vd;
    out.eigenvalue = vd.dot(Av) / vd.dot(vd);
    out.residual = (Av - out.eigenvalue * vd).norm() / vd.norm();
    return out;
}

}  // namespace monomap
