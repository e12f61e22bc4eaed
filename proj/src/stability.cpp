#include "monomap/stability.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

namespace monomap {

namespace {

int thread_count(int requested, std::size_t work) {
    int t = requested;
    if (t <= 0) {
        t = 1;
        if (const char* e = std::getenv("MONOMAP_THREADS")) t = std::max(1, std::atoi(e));
    }
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(t), std::max<std::size_t>(work, 1)));
}

struct Tracer {
    const Fan& f;
    std::vector<IntVector> images;  // A * ray
    std::map<ConeId, std::optional<ConeId>> memo;

    std::optional<ConeId> step(const ConeId& c) {
        auto it = memo.find(c);
        if (it != memo.end()) return it->second;
        std::vector<IntVector> vs;
        for (int r : c) vs.push_back(images[r]);
        auto next = smallest_containing_cone_int(f, vs);
        memo.emplace(c, next);
        return next;
    }

    RayTrace run(int ray, std::optional<StabilityWitness>& fail, long& steps) {
        RayTrace t;
        t.ray = ray;
        std::map<ConeId, int> seen;
        ConeId cur{ray};
        steps = 0;
        while (true) {
            auto s = seen.find(cur);
            if (s != seen.end()) {
                t.certified = true;
                t.cycle_start = s->second;
                return t;
            }
            seen.emplace(cur, static_cast<int>(t.cones.size()));
            t.cones.push_back(cur);
            auto next = step(cur);
            ++steps;
            if (!next) {
                fail = StabilityWitness{ray, static_cast<int>(t.cones.size()) - 1, cur};
                return t;
            }
            cur = *next;
        }
    }
};

}  // namespace

StabilityReport is_strongly_stable(const IntMatrix& A, const Fan& f, int threads) {
    require_square(A, "is_strongly_stable");
    if (A.rows() != f.dim)
        throw DimensionError("is_strongly_stable: matrix is " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()) + " but the fan has dimension " + std::to_string(f.dim));
    if (det(A) == 0) throw DomainError("is_strongly_stable: matrix is singular");
    if (!f.complete) throw DomainError("is_strongly_stable: fan is not complete");

    std::vector<IntVector> images;
    for (auto& r : f.rays) images.push_back(mat_vec(A, r));

    const int nrays = static_cast<int>(f.rays.size());
    std::vector<RayTrace> traces(nrays);
    std::vector<std::optional<StabilityWitness>> fails(nrays);
    std::vector<long> steps(nrays, 0);

    const int nt = thread_count(threads, f.rays.size());
    auto work = [&](int start) {
        Tracer tr{f, images, {}};
        for (int r = start; r < nrays; r += nt) traces[r] = tr.run(r, fails[r], steps[r]);
    };
    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    StabilityReport rep;
    rep.traces = std::move(traces);
    for (int r = 0; r < nrays; ++r) {
        rep.steps_to_certify += steps[r];
        rep.max_steps_per_ray = std::max(rep.max_steps_per_ray, steps[r]);
        if (fails[r]) {
            rep.failures.push_back(*fails[r]);
            if (!rep.witness) rep.witness = fails[r];
        }
    }
    rep.strongly_stable = rep.failures.empty();
    return rep;
}

std::optional<long> check_hA_power(const IntMatrix& A, long k_max) {
    require_square(A, "check_hA_power");
    if (det(A) == 0) throw DomainError("check_hA_power: matrix is singular");
    IntMatrix H = homogenization_matrix(A);
    IntMatrix Hk = H, Ak = A;
    for (long k = 2; k <= k_max; ++k) {
        Hk = mat_mul(Hk, H);
        Ak = mat_mul(Ak, A);
        if (!equal(homogenization_matrix(Ak), Hk)) return k;
    }
    return std::nullopt;
}

StarResult star_condition(const IntMatrix& A, const IntMatrix& B) {
    require_square(A, "star_condition");
    require_square(B, "star_condition");
    if (A.rows() != B.rows())
        throw DimensionError("star_condition: sizes " + std::to_string(A.rows()) + " and " + std::to_string(B.rows()) +
                             " differ");
    const long n = A.rows();
    StarResult res;
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) {
            int first = -1;
            int first_sign = 0;
            for (long k = 0; k < n; ++k) {
                int s = sign(A(j, k)) * sign(B(k, i));
                if (s == 0) continue;
                if (first < 0) {
                    first = static_cast<int>(k);
                    first_sign = s;
                } else if (s != first_sign) {
                    res.holds = false;
                    res.witness = std::array<int, 4>{static_cast<int>(j), static_cast<int>(i), first, static_cast<int>(k)};
                    return res;
                }
            }
        }
    return res;
}

IntMatrix cdiv_pullback_matrix_p1n(const IntMatrix& A) {
    require_square(A, "cdiv_pullback_matrix_p1n");
    const long n = A.rows();
    IntMatrix M = zeros<Integer>(2 * n, 2 * n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            const Integer& a = A(j, i);
            Integer m = mp::abs(a);
            if (a > 0) {
                M(2 * i, 2 * j) = m;
                M(2 * i + 1, 2 * j + 1) = m;
            } else if (a < 0) {
                M(2 * i, 2 * j + 1) = m;
                M(2 * i + 1, 2 * j) = m;
            }
        }
    return M;
}

IntMatrix pic_pullback_matrix_p1n(const IntMatrix& A) {
    require_square(A, "pic_pullback_matrix_p1n");
    IntMatrix P = A.transpose();
    for (Eigen::Index i = 0; i < P.rows(); ++i)
        for (Eigen::Index j = 0; j < P.cols(); ++j) P(i, j) = mp::abs(P(i, j));
    return P;
}

std::optional<StabilizingFan> stabilizing_fan(const IntMatrix& A, long max_denominator, long k_max) {
    require_square(A, "stabilizing_fan");
    if (det(A) == 0) throw DomainError("stabilizing_fan: matrix is singular");
    SpectrumReport sp = spectral_radius(A);
    if (!sp.unique_simple_real_dominant)
        throw DomainError("stabilizing_fan: no unique simple real dominant eigenvalue");
    const long n = A.rows();

    std::vector<std::vector<IntVector>> candidates;
    std::set<std::vector<std::vector<long>>> tried;
    auto add = [&](std::vector<IntVector> basis) {
        IntMatrix B(n, n);
        for (long i = 0; i < n; ++i) {
            basis[i] = primitive_of(to_rat(basis[i]));
            B.col(i) = basis[i];
        }
        if (det(B) == 0) return;
        std::vector<std::vector<long>> key;
        for (auto& b : basis) {
            std::vector<long> k;
            for (long i = 0; i < n; ++i) k.push_back(b(i).convert_to<long>());
            key.push_back(k);
        }
        std::sort(key.begin(), key.end());
        if (tried.insert(key).second) candidates.push_back(basis);
    };

    std::vector<IntVector> std_basis;
    for (long i = 0; i < n; ++i) {
        IntVector e = IntVector::Constant(n, Integer(0));
        e(i) = 1;
        std_basis.push_back(e);
    }
    add(std_basis);

    EigvecApprox ev = dominant_eigvec_approx(A, max_denominator);
    IntVector w = primitive_of(ev.v);
    // the eigenvector replaces one coordinate axis
    for (long r = 0; r < n; ++r) {
        auto b = std_basis;
        b[r] = w;
        add(b);
    }
    // n vectors clustered around w with w = their average direction
    for (long s : {1, 2, 4, 8, 16, 32}) {
        std::vector<IntVector> b;
        for (long i = 0; i < n; ++i) {
            IntVector v = w * Integer(s * n);
            for (long j = 0; j < n; ++j) v(j) -= 1;
            v(i) += Integer(n);
            b.push_back(v);
        }
        add(b);
    }

    for (auto& basis : candidates) {
        Fan fan = fan_crosspolytope(basis);
        IntMatrix Ak = A;
        for (long k = 1; k <= k_max; ++k) {
            if (k > 1) Ak = mat_mul(Ak, A);
            if (is_strongly_stable(Ak, fan).strongly_stable) return StabilizingFan{fan, k, basis};
        }
    }
    return std::nullopt;
}

Stabilizability2x2 non_stabilizable_2x2(const IntMatrix& A) {
    if (A.rows() != 2 || A.cols() != 2) throw DimensionError("non_stabilizable_2x2: matrix must be 2x2");
    Integer t = A(0, 0) + A(1, 1), d = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    Stabilizability2x2 res;
    if (t * t - 4 * d >= 0) return res;
    // lambda^m = a lambda + b, and lambda^m is real iff a = 0
    Integer a = 1, b = 0;
    for (int m = 1; m <= 12; ++m) {
        if (a == 0) {
            res.kind = Stabilizability::RatioRootOfUnity;
            res.order = m;
            return res;
        }
        Integer na = t * a + b, nb = -d * a;
        a = na;
        b = nb;
    }
    res.kind = Stabilizability::NoStableModel;
    return res;
}

const char* to_string(Stabilizability s) {
    switch (s) {
        case Stabilizability::NotApplicable: return "NotApplicable";
        case Stabilizability::RatioRootOfUnity: return "RatioRootOfUnity";
        case Stabilizability::NoStableModel: return "NoStableModel";
    }
    return "";
}

}  // namespace monomap
