#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "monomap/linalg.hpp"

namespace monomap {

// sorted ray indices into the parent fan; the empty id is the zero cone
using ConeId = std::vector<int>;

struct Cone {
    long dim = 0;
    std::vector<IntVector> generators;
};

// validates primitivity and linear independence
Cone make_cone(long dim, std::vector<IntVector> generators);

struct Fan {
    long dim = 0;
    std::vector<IntVector> rays;
    std::vector<ConeId> max_cones;
    std::vector<ConeId> cones;  // every face, ordered by dimension then lexicographically
    bool complete = false;

    // per maximal cone: |det G| * G^{-1}, so coefficient signs come from integer dot products
    std::vector<IntMatrix> scaled_inverse;
    std::map<ConeId, int> cone_index;

    Cone cone(const ConeId& id) const;
    long n_cones() const { return static_cast<long>(cones.size()); }
    bool has_cone(const ConeId& id) const { return cone_index.count(id) > 0; }
};

bool operator==(const Fan& a, const Fan& b);

struct WeightedLattice {
    std::vector<Integer> weights;  // d_0..d_n
    bool well_formed = false;
    Integer lcm = 1;
    RatMatrix basis;      // columns: a basis of N' in standard coordinates
    RatMatrix basis_inv;
};

WeightedLattice weighted_lattice(const std::vector<Integer>& weights);
// does A (standard coordinates) map N' into itself
bool preserves_lattice(const RatMatrix& A, const WeightedLattice& w);
RatMatrix to_lattice_coords(const RatMatrix& A, const WeightedLattice& w);

struct EndomorphismReport {
    bool is_morphism = false;
    std::vector<int> ray_permutation;
    long period = 0;
    std::vector<Integer> multipliers;
};

std::optional<std::vector<Rational>> cone_contains(const Cone& c, const RatVector& v);

std::optional<ConeId> smallest_containing_cone(const Fan& f, const std::vector<RatVector>& vs);
// integer vectors: no rational conversion needed
std::optional<ConeId> smallest_containing_cone_int(const Fan& f, const std::vector<IntVector>& vs);

template <class S>
std::optional<ConeId> maps_regularly(const Mat<S>& A, const Cone& c, const Fan& target) {
    if (A.rows() != target.dim || A.cols() != c.dim)
        throw DimensionError("maps_regularly: matrix is " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()) + ", cone lives in dimension " + std::to_string(c.dim));
    std::vector<RatVector> images;
    RatMatrix Aq = to_rat(A);
    for (auto& g : c.generators) images.push_back(mat_vec(Aq, to_rat(g)));
    return smallest_containing_cone(target, images);
}

template <class S>
std::optional<ConeId> maps_regularly(const Mat<S>& A, const ConeId& c, const Fan& source, const Fan& target) {
    return maps_regularly(A, source.cone(c), target);
}

Fan fan_projective(long n);
Fan fan_p1n(long n);
std::pair<Fan, WeightedLattice> fan_weighted(const std::vector<Integer>& weights);
Fan fan_crosspolytope(const std::vector<IntVector>& basis);
Fan fan_custom(const std::vector<IntVector>& rays, const std::vector<std::vector<int>>& max_cones);

// identifies builtin fans for degree computations
bool is_projective_fan(const Fan& f);

EndomorphismReport analyze_endomorphism(const IntMatrix& A, const Fan& f);

// exact LP: is there u with <u,v> >= 1 on S\T, = 0 on S cap T, <= -1 on T\S
bool separable(const Fan& f, const ConeId& S, const ConeId& T);

}  // namespace monomap
