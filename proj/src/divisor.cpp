#include "monomap/divisor.hpp"

namespace monomap {

namespace {

void require_complete(const Fan& f, const char* op) {
    if (!f.complete) throw DomainError(std::string(op) + ": fan is not complete");
}

IntVector scale_to_int(const RatVector& v) {
    Integer L = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) L = lcm(L, denom(v(i)));
    IntVector w(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = numer(v(i) * Rational(L));
    return w;
}

}  // namespace

SupportFunction support_function(const Fan& f, std::vector<Rational> ray_values) {
    require_complete(f, "support_function");
    if (ray_values.size() != f.rays.size())
        throw DimensionError("support_function: need one value per ray (" + std::to_string(f.rays.size()) + ")");
    SupportFunction psi;
    psi.ray_values = std::move(ray_values);
    for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
        const ConeId& c = f.max_cones[k];
        RatVector vals(f.dim);
        for (long i = 0; i < f.dim; ++i) vals(i) = psi.ray_values[c[i]];
        // G^T u = vals, and (G^T)^{-1} = (scaled_inverse / |det|)^T
        IntMatrix G(f.dim, f.dim);
        for (long i = 0; i < f.dim; ++i) G.col(i) = f.rays[c[i]];
        Rational g = Rational(mp::abs(det(G)));
        RatVector u = to_rat(f.scaled_inverse[k]).transpose().lazyProduct(vals);
        psi.functionals.push_back(RatVector(u / g));
    }
    return psi;
}

SupportFunction support_of(const Fan& f, const TWeilDivisor& D) {
    if (D.coeffs.size() != f.rays.size())
        throw DimensionError("support_of: divisor has " + std::to_string(D.coeffs.size()) + " coefficients, fan has " +
                             std::to_string(f.rays.size()) + " rays");
    std::vector<Rational> vals;
    for (auto& a : D.coeffs) vals.push_back(-a);
    return support_function(f, vals);
}

TWeilDivisor divisor_of(const SupportFunction& psi) {
    TWeilDivisor D;
    for (auto& v : psi.ray_values) D.coeffs.push_back(-v);
    return D;
}

TWeilDivisor basis_divisor(const Fan& f, int ray) {
    if (ray < 0 || ray >= static_cast<int>(f.rays.size())) throw DimensionError("basis_divisor: ray out of range");
    TWeilDivisor D;
    D.coeffs.assign(f.rays.size(), Rational(0));
    D.coeffs[ray] = 1;
    return D;
}

TWeilDivisor principal_divisor(const Fan& f, const RatVector& u) {
    if (u.size() != f.dim) throw DimensionError("principal_divisor: dimension mismatch");
    TWeilDivisor D;
    for (auto& v : f.rays) {
        Rational s = 0;
        for (long i = 0; i < f.dim; ++i) s += u(i) * Rational(v(i));
        D.coeffs.push_back(s);
    }
    return D;
}

std::optional<int> containing_max_cone(const Fan& f, const RatVector& v) {
    if (v.size() != f.dim) throw DimensionError("containing_max_cone: dimension mismatch");
    IntVector w = scale_to_int(v);
    for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
        const IntMatrix& W = f.scaled_inverse[k];
        if (W.size() == 0) continue;
        bool inside = true;
        for (Eigen::Index r = 0; r < W.rows() && inside; ++r) {
            Integer s = 0;
            for (Eigen::Index j = 0; j < W.cols(); ++j) s += W(r, j) * w(j);
            inside = s >= 0;
        }
        if (inside) return static_cast<int>(k);
    }
    return std::nullopt;
}

Rational evaluate_support(const Fan& f, const SupportFunction& psi, const RatVector& v) {
    require_complete(f, "evaluate_support");
    auto k = containing_max_cone(f, v);
    if (!k) throw DomainError("evaluate_support: no cone contains the vector");
    const RatVector& u = psi.functionals[*k];
    Rational s = 0;
    for (long i = 0; i < f.dim; ++i) s += u(i) * v(i);
    return s;
}

TWeilDivisor pullback_divisor(const RatMatrix& A, const Fan& source, const Fan& target, const TWeilDivisor& D) {
    if (A.rows() != target.dim || A.cols() != source.dim)
        throw DimensionError("pullback_divisor: matrix shape does not match the fans");
    if (rank(A) != target.dim) throw DomainError("pullback_divisor: matrix does not have full rank");
    SupportFunction psi = support_of(target, D);
    TWeilDivisor out;
    for (auto& v : source.rays) out.coeffs.push_back(-evaluate_support(target, psi, mat_vec(A, to_rat(v))));
    return out;
}

Rational degree_Pn(const Fan& f, const TWeilDivisor& D) {
    if (!is_projective_fan(f)) throw DomainError("degree_Pn: fan is not the standard fan of P^n");
    if (D.coeffs.size() != f.rays.size()) throw DimensionError("degree_Pn: coefficient count mismatch");
    Rational s = 0;
    for (auto& a : D.coeffs) s += a;
    return s;
}

Rational weighted_degree(const TWeilDivisor& D, const WeightedLattice& w) {
    if (D.coeffs.size() != w.weights.size())
        throw DimensionError("weighted_degree: " + std::to_string(D.coeffs.size()) + " coefficients but " +
                             std::to_string(w.weights.size()) + " weights");
    Rational s = 0;
    for (std::size_t i = 0; i < D.coeffs.size(); ++i) s += D.coeffs[i] * Rational(w.weights[i]);
    return s;
}

bool is_cartier_weighted(const TWeilDivisor& D, const WeightedLattice& w) {
    for (auto& a : D.coeffs)
        if (!is_integral(a)) return false;
    Rational d = weighted_degree(D, w);
    return numer(d) % w.lcm == 0;
}

Rational nu_via_support(const RatMatrix& M, int psi_index) {
    require_square(M, "nu");
    const long n = M.rows();
    if (psi_index < 0 || psi_index > n) throw DimensionError("nu_via_support: support function index out of range");
    Fan P = fan_projective(n);
    SupportFunction psi = support_of(P, basis_divisor(P, psi_index));
    Rational total = 0;
    RatVector sum = RatVector::Constant(n, Rational(0));
    for (long j = 0; j < n; ++j) {
        RatVector c = M.col(j);
        sum += c;
        total -= evaluate_support(P, psi, c);
    }
    total -= evaluate_support(P, psi, RatVector(-sum));
    return total;
}

IntMatrix homogenization_matrix(const IntMatrix& A) {
    require_square(A, "homogenization_matrix");
    if (det(A) == 0) throw DomainError("homogenization_matrix: matrix is singular");
    const long n = A.rows();
    // columns w_0 = A e_0 = -sum_j A e_j, w_j = A e_j; psi_i(a) = min_k (a_k - a_i) with a_0 = 0
    IntMatrix W(n + 1, n + 1);  // W(k, j) = k-th extended coordinate of A e_j
    for (long j = 0; j <= n; ++j) {
        W(0, j) = 0;
        for (long k = 1; k <= n; ++k) {
            if (j == 0) {
                Integer s = 0;
                for (long l = 0; l < n; ++l) s -= A(k - 1, l);
                W(k, j) = s;
            } else {
                W(k, j) = A(k - 1, j - 1);
            }
        }
    }
    IntMatrix H(n + 1, n + 1);
    for (long i = 0; i <= n; ++i)
        for (long j = 0; j <= n; ++j) {
            Integer m = 0;
            for (long k = 0; k <= n; ++k) {
                Integer d = W(k, j) - W(i, j);
                if (d < m) m = d;
            }
            H(i, j) = -m;
        }
    return H;
}

IntMatrix strip_common_factor(const IntMatrix& H) {
    IntMatrix R = H;
    for (Eigen::Index j = 0; j < H.cols(); ++j) {
        Integer m = H(0, j);
        for (Eigen::Index i = 1; i < H.rows(); ++i)
            if (H(i, j) < m) m = H(i, j);
        for (Eigen::Index i = 0; i < H.rows(); ++i) R(i, j) -= m;
    }
    return R;
}

}  // namespace monomap
