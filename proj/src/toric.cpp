#include "monomap/toric.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace monomap {

namespace {

std::string id_str(const ConeId& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "}";
}

IntMatrix generator_matrix(const std::vector<IntVector>& rays, const ConeId& c, long dim) {
    IntMatrix G(dim, static_cast<Eigen::Index>(c.size()));
    for (std::size_t k = 0; k < c.size(); ++k) G.col(k) = rays[c[k]];
    return G;
}

// Phase I of the simplex method with Bland's rule: is {x >= 0 : M x = b} nonempty (b >= 0)
bool lp_feasible(const RatMatrix& M, const RatVector& b) {
    const Eigen::Index m = M.rows(), n = M.cols();
    const Eigen::Index N = n + m;
    RatMatrix T = zeros<Rational>(m + 1, N + 1);
    std::vector<Eigen::Index> basis(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) T(i, j) = M(i, j);
        T(i, n + i) = 1;
        T(i, N) = b(i);
        basis[i] = n + i;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        Rational s = 0;
        for (Eigen::Index i = 0; i < m; ++i) s += M(i, j);
        T(m, j) = -s;
    }
    {
        Rational s = 0;
        for (Eigen::Index i = 0; i < m; ++i) s += b(i);
        T(m, N) = -s;
    }
    for (int guard = 0; guard < 100000; ++guard) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < N; ++j)
            if (T(m, j) < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        Eigen::Index leave = -1;
        Rational best;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (T(i, enter) <= 0) continue;
            Rational r = T(i, N) / T(i, enter);
            if (leave < 0 || r < best || (r == best && basis[i] < basis[leave])) {
                leave = i;
                best = r;
            }
        }
        if (leave < 0) break;  // cannot happen in phase I
        Rational p = T(leave, enter);
        for (Eigen::Index j = 0; j <= N; ++j) T(leave, j) /= p;
        for (Eigen::Index i = 0; i <= m; ++i) {
            if (i == leave || T(i, enter) == 0) continue;
            Rational f = T(i, enter);
            for (Eigen::Index j = 0; j <= N; ++j) T(i, j) -= f * T(leave, j);
        }
        basis[leave] = enter;
    }
    return T(m, N) == 0;
}

Fan assemble(long dim, std::vector<IntVector> rays, std::vector<ConeId> max_cones, bool check_intersections,
             const char* op) {
    std::string o(op);
    if (dim < 1) throw DomainError(o + ": dimension must be positive");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != dim) throw DimensionError(o + ": ray " + std::to_string(i) + " has wrong dimension");
        if (!is_primitive(rays[i]))
            throw DomainError(o + ": ray " + std::to_string(i) + " is not a primitive nonzero vector");
        for (std::size_t j = 0; j < i; ++j)
            if (equal<Integer>(rays[i], rays[j]))
                throw DomainError(o + ": rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
    if (max_cones.empty()) throw DomainError(o + ": no maximal cones");
    std::vector<int> used(rays.size(), 0);
    for (auto& c : max_cones) {
        std::sort(c.begin(), c.end());
        if (c.empty()) throw DomainError(o + ": empty maximal cone");
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw DomainError(o + ": repeated ray in cone " + id_str(c));
        for (int r : c) {
            if (r < 0 || r >= static_cast<int>(rays.size()))
                throw DomainError(o + ": ray index " + std::to_string(r) + " out of range");
            used[r] = 1;
        }
        if (rank(generator_matrix(rays, c, dim)) != static_cast<long>(c.size()))
            throw DomainError(o + ": cone " + id_str(c) + " is not simplicial");
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (!used[i]) throw DomainError(o + ": ray " + std::to_string(i) + " lies in no maximal cone");
    for (std::size_t a = 0; a < max_cones.size(); ++a)
        for (std::size_t b = 0; b < max_cones.size(); ++b) {
            if (a == b) continue;
            if (std::includes(max_cones[b].begin(), max_cones[b].end(), max_cones[a].begin(), max_cones[a].end()))
                throw DomainError(o + ": cone " + id_str(max_cones[a]) + " is a face of " + id_str(max_cones[b]));
        }
    if (check_intersections)
        for (std::size_t a = 0; a < max_cones.size(); ++a)
            for (std::size_t b = a + 1; b < max_cones.size(); ++b)
                if (!separable(Fan{dim, rays, {}, {}, false, {}, {}}, max_cones[a], max_cones[b]))
                    throw DomainError(o + ": cones " + id_str(max_cones[a]) + " and " + id_str(max_cones[b]) +
                                      " do not meet in a common face");

    Fan f;
    f.dim = dim;
    f.rays = std::move(rays);
    f.max_cones = std::move(max_cones);

    std::set<ConeId> faces;
    for (auto& c : f.max_cones) {
        const std::size_t k = c.size();
        for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
            ConeId s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1ul << i)) s.push_back(c[i]);
            faces.insert(s);
        }
    }
    f.cones.assign(faces.begin(), faces.end());
    std::stable_sort(f.cones.begin(), f.cones.end(),
                     [](const ConeId& x, const ConeId& y) { return x.size() < y.size(); });
    for (std::size_t i = 0; i < f.cones.size(); ++i) f.cone_index[f.cones[i]] = static_cast<int>(i);

    bool complete = true;
    std::map<ConeId, int> facet_count;
    for (auto& c : f.max_cones) {
        if (static_cast<long>(c.size()) != dim) complete = false;
        for (std::size_t skip = 0; skip < c.size(); ++skip) {
            ConeId s;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != skip) s.push_back(c[i]);
            facet_count[s]++;
        }
    }
    if (complete)
        for (auto& [s, cnt] : facet_count)
            if (cnt != 2) complete = false;
    f.complete = complete;

    for (auto& c : f.max_cones) {
        if (static_cast<long>(c.size()) != dim) {
            f.scaled_inverse.emplace_back();
            continue;
        }
        IntMatrix G = generator_matrix(f.rays, c, dim);
        Integer d = mp::abs(det(G));
        auto inv = inverse(to_rat(G));
        f.scaled_inverse.push_back(to_int(RatMatrix(*inv * Rational(d)), op));
    }
    return f;
}

}  // namespace

Cone make_cone(long dim, std::vector<IntVector> generators) {
    for (auto& g : generators) {
        if (g.size() != dim) throw DimensionError("make_cone: generator dimension mismatch");
        if (!is_primitive(g)) throw DomainError("make_cone: generator is not primitive");
    }
    if (!generators.empty()) {
        IntMatrix G(dim, static_cast<Eigen::Index>(generators.size()));
        for (std::size_t k = 0; k < generators.size(); ++k) G.col(k) = generators[k];
        if (rank(G) != static_cast<long>(generators.size()))
            throw DomainError("make_cone: generators are linearly dependent");
    }
    return Cone{dim, std::move(generators)};
}

Cone Fan::cone(const ConeId& id) const {
    if (!has_cone(id)) throw DomainError("Fan::cone: " + id_str(id) + " is not a cone of the fan");
    Cone c;
    c.dim = dim;
    for (int r : id) c.generators.push_back(rays[r]);
    return c;
}

bool operator==(const Fan& a, const Fan& b) {
    if (a.dim != b.dim || a.rays.size() != b.rays.size() || a.max_cones != b.max_cones) return false;
    for (std::size_t i = 0; i < a.rays.size(); ++i)
        if (!equal<Integer>(a.rays[i], b.rays[i])) return false;
    return true;
}

std::optional<std::vector<Rational>> cone_contains(const Cone& c, const RatVector& v) {
    if (v.size() != c.dim)
        throw DimensionError("cone_contains: vector has dimension " + std::to_string(v.size()) + ", cone " +
                             std::to_string(c.dim));
    if (c.generators.empty()) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v(i) != 0) return std::nullopt;
        return std::vector<Rational>{};
    }
    RatMatrix G(c.dim, static_cast<Eigen::Index>(c.generators.size()));
    for (std::size_t k = 0; k < c.generators.size(); ++k) G.col(k) = to_rat(c.generators[k]);
    auto x = solve(G, v);
    if (!x) return std::nullopt;
    std::vector<Rational> out;
    for (Eigen::Index i = 0; i < x->size(); ++i) {
        if ((*x)(i) < 0) return std::nullopt;
        out.push_back((*x)(i));
    }
    return out;
}

std::optional<ConeId> smallest_containing_cone_int(const Fan& f, const std::vector<IntVector>& vs) {
    for (auto& v : vs)
        if (v.size() != f.dim) throw DimensionError("smallest_containing_cone: vector dimension mismatch");
    for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
        const ConeId& c = f.max_cones[k];
        std::vector<char> positive(c.size(), 0);
        bool inside = true;
        if (f.scaled_inverse[k].size() > 0) {
            const IntMatrix& W = f.scaled_inverse[k];
            for (auto& v : vs) {
                for (Eigen::Index r = 0; r < W.rows() && inside; ++r) {
                    Integer s = 0;
                    for (Eigen::Index j = 0; j < W.cols(); ++j) s += W(r, j) * v(j);
                    if (s < 0) inside = false;
                    if (s > 0) positive[r] = 1;
                }
                if (!inside) break;
            }
        } else {
            Cone cc = f.cone(c);
            for (auto& v : vs) {
                auto x = cone_contains(cc, to_rat(v));
                if (!x) {
                    inside = false;
                    break;
                }
                for (std::size_t r = 0; r < x->size(); ++r)
                    if ((*x)[r] > 0) positive[r] = 1;
            }
        }
        if (!inside) continue;
        ConeId face;
        for (std::size_t r = 0; r < c.size(); ++r)
            if (positive[r]) face.push_back(c[r]);
        return face;
    }
    return std::nullopt;
}

std::optional<ConeId> smallest_containing_cone(const Fan& f, const std::vector<RatVector>& vs) {
    std::vector<IntVector> scaled;
    for (auto& v : vs) {
        if (v.size() != f.dim) throw DimensionError("smallest_containing_cone: vector dimension mismatch");
        Integer L = 1;
        for (Eigen::Index i = 0; i < v.size(); ++i) L = lcm(L, denom(v(i)));
        IntVector w(v.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = numer(v(i) * Rational(L));
        scaled.push_back(w);
    }
    return smallest_containing_cone_int(f, scaled);
}

bool separable(const Fan& f, const ConeId& S, const ConeId& T) {
    std::vector<int> only_s, both, only_t;
    std::set_difference(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(only_s));
    std::set_intersection(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(both));
    std::set_difference(T.begin(), T.end(), S.begin(), S.end(), std::back_inserter(only_t));
    const long n = f.dim;
    const Eigen::Index rows = static_cast<Eigen::Index>(only_s.size() + both.size() + only_t.size());
    const Eigen::Index slacks = static_cast<Eigen::Index>(only_s.size() + only_t.size());
    // variables: u+ (n), u- (n), slacks
    RatMatrix M = zeros<Rational>(rows, 2 * n + slacks);
    RatVector b(rows);
    Eigen::Index r = 0, s = 0;
    auto put = [&](int ray, int sgn, bool slack) {
        for (long j = 0; j < n; ++j) {
            M(r, j) = Rational(f.rays[ray](j)) * sgn;
            M(r, n + j) = -Rational(f.rays[ray](j)) * sgn;
        }
        if (slack) {
            M(r, 2 * n + s) = -1;
            ++s;
            b(r) = 1;
        } else {
            b(r) = 0;
        }
        ++r;
    };
    for (int i : only_s) put(i, 1, true);
    for (int i : both) put(i, 1, false);
    for (int i : only_t) put(i, -1, true);
    return lp_feasible(M, b);
}

Fan fan_projective(long n) {
    if (n < 1) throw DomainError("fan_projective: n must be at least 1");
    std::vector<IntVector> rays;
    IntVector e0(n);
    for (long i = 0; i < n; ++i) e0(i) = -1;
    rays.push_back(e0);
    for (long i = 0; i < n; ++i) {
        IntVector e = IntVector::Constant(n, Integer(0));
        e(i) = 1;
        rays.push_back(e);
    }
    std::vector<ConeId> maxc;
    for (long omit = n; omit >= 0; --omit) {
        ConeId c;
        for (long i = 0; i <= n; ++i)
            if (i != omit) c.push_back(static_cast<int>(i));
        maxc.push_back(c);
    }
    return assemble(n, rays, maxc, false, "fan_projective");
}

Fan fan_p1n(long n) {
    if (n < 1) throw DomainError("fan_p1n: n must be at least 1");
    if (n > 20) throw ResourceError("fan_p1n: 2^n maximal cones is too many for n > 20");
    std::vector<IntVector> rays;
    for (long i = 0; i < n; ++i)
        for (int s : {1, -1}) {
            IntVector e = IntVector::Constant(n, Integer(0));
            e(i) = s;
            rays.push_back(e);
        }
    std::vector<ConeId> maxc;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        ConeId c;
        for (long i = 0; i < n; ++i) c.push_back(static_cast<int>(2 * i + ((mask >> i) & 1)));
        maxc.push_back(c);
    }
    return assemble(n, rays, maxc, false, "fan_p1n");
}

Fan fan_crosspolytope(const std::vector<IntVector>& basis) {
    const long n = static_cast<long>(basis.size());
    if (n < 1) throw DomainError("fan_crosspolytope: empty basis");
    IntMatrix B(n, n);
    for (long i = 0; i < n; ++i) {
        if (basis[i].size() != n) throw DimensionError("fan_crosspolytope: basis vectors must have length n");
        B.col(i) = basis[i];
    }
    if (det(B) == 0) throw DomainError("fan_crosspolytope: basis is not linearly independent");
    std::vector<IntVector> rays;
    for (long i = 0; i < n; ++i) {
        if (!is_primitive(basis[i])) throw DomainError("fan_crosspolytope: basis vector is not primitive");
        rays.push_back(basis[i]);
        rays.push_back(IntVector(-basis[i]));
    }
    std::vector<ConeId> maxc;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        ConeId c;
        for (long i = 0; i < n; ++i) c.push_back(static_cast<int>(2 * i + ((mask >> i) & 1)));
        maxc.push_back(c);
    }
    // image of the (P^1)^n fan under an invertible map: always a complete fan
    return assemble(n, rays, maxc, false, "fan_crosspolytope");
}

Fan fan_custom(const std::vector<IntVector>& rays, const std::vector<std::vector<int>>& max_cones) {
    if (rays.empty()) throw DomainError("fan_custom: no rays");
    long dim = rays[0].size();
    return assemble(dim, rays, max_cones, true, "fan_custom");
}

bool is_projective_fan(const Fan& f) { return f == fan_projective(f.dim); }

WeightedLattice weighted_lattice(const std::vector<Integer>& weights) {
    if (weights.size() < 2) throw DomainError("weighted_lattice: need at least two weights");
    Integer g = 0;
    for (auto& d : weights) {
        if (d <= 0) throw DomainError("weighted_lattice: weights must be positive");
        g = gcd(g, d);
    }
    if (g != 1) throw DomainError("weighted_lattice: weights must have gcd 1");
    WeightedLattice w;
    w.weights = weights;
    const long n = static_cast<long>(weights.size()) - 1;
    w.well_formed = true;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        Integer h = 0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (i != j) h = gcd(h, weights[i]);
        if (h != 1) w.well_formed = false;
    }
    Integer L = 1;
    for (auto& d : weights) L = lcm(L, d);
    w.lcm = L;
    std::vector<IntVector> gens;
    IntVector g0(n);
    for (long i = 0; i < n; ++i) g0(i) = -(L / weights[0]);
    gens.push_back(g0);
    for (long i = 0; i < n; ++i) {
        IntVector e = IntVector::Constant(n, Integer(0));
        e(i) = L / weights[i + 1];
        gens.push_back(e);
    }
    if (weights[0] == 1) {
        // e_0 is already in the span of the e_i/d_i, so those form a basis
        w.basis = RatMatrix::Constant(n, n, Rational(0));
        for (long i = 0; i < n; ++i) w.basis(i, i) = Rational(1) / Rational(weights[i + 1]);
    } else {
        IntMatrix H = lattice_basis(gens, n);
        w.basis = to_rat(H) / Rational(L);
    }
    w.basis_inv = *inverse(w.basis);
    return w;
}

RatMatrix to_lattice_coords(const RatMatrix& A, const WeightedLattice& w) {
    if (A.rows() != w.basis.rows() || A.cols() != w.basis.rows())
        throw DimensionError("to_lattice_coords: matrix size does not match the weights");
    RatMatrix C = w.basis_inv.lazyProduct(A);
    RatMatrix D = C.lazyProduct(w.basis);
    return D;
}

bool preserves_lattice(const RatMatrix& A, const WeightedLattice& w) { return is_integral(to_lattice_coords(A, w)); }

std::pair<Fan, WeightedLattice> fan_weighted(const std::vector<Integer>& weights) {
    WeightedLattice w = weighted_lattice(weights);
    if (!w.well_formed) throw DomainError("fan_weighted: weights are not well formed (n of them share a factor)");
    const long n = static_cast<long>(weights.size()) - 1;
    std::vector<IntVector> rays;
    for (long i = 0; i <= n; ++i) {
        RatVector e = RatVector::Constant(n, Rational(0));
        if (i == 0)
            for (long j = 0; j < n; ++j) e(j) = Rational(-1) / Rational(weights[0]);
        else
            e(i - 1) = Rational(1) / Rational(weights[i]);
        rays.push_back(to_int(RatVector(w.basis_inv.lazyProduct(e)), "fan_weighted"));
    }
    std::vector<ConeId> maxc;
    for (long omit = n; omit >= 0; --omit) {
        ConeId c;
        for (long i = 0; i <= n; ++i)
            if (i != omit) c.push_back(static_cast<int>(i));
        maxc.push_back(c);
    }
    return {assemble(n, rays, maxc, false, "fan_weighted"), w};
}

EndomorphismReport analyze_endomorphism(const IntMatrix& A, const Fan& f) {
    require_square(A, "analyze_endomorphism");
    if (A.rows() != f.dim) throw DimensionError("analyze_endomorphism: matrix size does not match fan dimension");
    if (det(A) == 0) throw DomainError("analyze_endomorphism: matrix is singular");
    EndomorphismReport rep;
    for (auto& c : f.max_cones) {
        std::vector<IntVector> imgs;
        for (int r : c) imgs.push_back(mat_vec(A, f.rays[r]));
        if (!smallest_containing_cone_int(f, imgs)) return rep;
    }
    rep.is_morphism = true;
    const std::size_t d = f.rays.size();
    for (std::size_t i = 0; i < d; ++i) {
        IntVector w = mat_vec(A, f.rays[i]);
        IntVector p = primitive_of(to_rat(w));
        int found = -1;
        for (std::size_t j = 0; j < d; ++j)
            if (equal<Integer>(p, f.rays[j])) found = static_cast<int>(j);
        if (found < 0)
            throw Error("analyze_endomorphism: ray " + std::to_string(i) +
                        " is not sent to a ray although every cone maps regularly");
        rep.ray_permutation.push_back(found);
    }
    long period = 1;
    std::vector<char> seen(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (seen[i]) continue;
        long len = 0;
        for (std::size_t j = i; !seen[j]; j = rep.ray_permutation[j]) {
            seen[j] = 1;
            ++len;
        }
        period = std::lcm(period, len);
    }
    rep.period = period;
    IntMatrix Ak = mat_pow(A, period);
    for (std::size_t i = 0; i < d; ++i) {
        IntVector w = mat_vec(Ak, f.rays[i]);
        Integer a = content(w);
        if (a == 0 || !equal<Integer>(IntVector(f.rays[i] * a), w))
            throw Error("analyze_endomorphism: A^k does not fix ray " + std::to_string(i));
        rep.multipliers.push_back(a);
    }
    return rep;
}

}  // namespace monomap
