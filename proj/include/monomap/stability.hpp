#pragma once

#include <array>
#include <optional>
#include <vector>

#include "monomap/divisor.hpp"

namespace monomap {

struct RayTrace {
    int ray = 0;
    std::vector<ConeId> cones;  // sigma_0 = tau, sigma_{m+1} = closure(A sigma_m)
    bool certified = false;
    int cycle_start = -1;       // index into cones where the repeat lands
};

struct StabilityWitness {
    int ray = 0;
    int step = 0;
    ConeId cone;  // sigma_step, which does not map regularly
};

struct StabilityReport {
    bool strongly_stable = false;
    std::vector<RayTrace> traces;
    std::optional<StabilityWitness> witness;  // first failing ray
    std::vector<StabilityWitness> failures;   // one per failing ray
    long steps_to_certify = 0;                // transitions computed over all rays
    long max_steps_per_ray = 0;
};

// threads: 0 reads MONOMAP_THREADS (default 1); output does not depend on it
StabilityReport is_strongly_stable(const IntMatrix& A, const Fan& f, int threads = 0);

// first k in 1..k_max with h(A^k) != h(A)^k
std::optional<long> check_hA_power(const IntMatrix& A, long k_max);

struct StarResult {
    bool holds = true;
    std::optional<std::array<int, 4>> witness;  // (j, i, k1, k2), 0-based, a_jk1 b_k1i and a_jk2 b_k2i differ in sign
};
StarResult star_condition(const IntMatrix& A, const IntMatrix& B);

// basis order D_1, E_1, ..., D_n, E_n; block (i, j) is |a_ji| I or |a_ji| swap
IntMatrix cdiv_pullback_matrix_p1n(const IntMatrix& A);
IntMatrix pic_pullback_matrix_p1n(const IntMatrix& A);

struct StabilizingFan {
    Fan fan;
    long k = 0;
    std::vector<IntVector> basis;
};
std::optional<StabilizingFan> stabilizing_fan(const IntMatrix& A, long max_denominator = 1000, long k_max = 10);

enum class Stabilizability { NotApplicable, RatioRootOfUnity, NoStableModel };
struct Stabilizability2x2 {
    Stabilizability kind = Stabilizability::NotApplicable;
    int order = 0;  // for RatioRootOfUnity
};
Stabilizability2x2 non_stabilizable_2x2(const IntMatrix& A);

const char* to_string(Stabilizability s);

}  // namespace monomap
