#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monomap/toric.hpp"

namespace monomap::cli {

// Defaults here are part of the output contract; golden tests pin them.
struct RunConfig {
    std::string subcommand;
    std::string matrix, fan, divisor, weights;
    std::string a, b;                // star
    std::string map, f, g, vars;     // poly
    long k_max = 0;                  // 0: the subcommand's default
    long oracle_check = 0;
    long period = 0;
    long max_den = 1000;
    double tol = 1e-6;
    std::size_t budget = 1000000;
    std::string format = "json";
    std::string summary;             // degseq: JSON summary path when format is csv
};

// inline JSON when it starts with '[' or '{', otherwise a file path
RatMatrix read_matrix(const std::string& spec);
// pn:N, p1n:N, weighted:d0,d1,..., inline fan JSON or a file
struct FanSpec {
    Fan fan;
    std::optional<WeightedLattice> lattice;
    std::string kind;
};
FanSpec read_fan(const std::string& spec);
std::vector<Integer> read_weights(const std::string& csv);

// args exclude the program name; 0 ok, 1 usage, 2 input or domain errors, 3 resource limits
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monomap::cli
