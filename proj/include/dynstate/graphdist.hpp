#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynstate/networks.hpp"

namespace dynstate {

enum class DistanceKind {
    unweighted_shortest,
    weighted_shortest,
    shortest_weighted,
    diffusion,
};

std::string to_string(DistanceKind k);
DistanceKind parse_distance_kind(const std::string& s);

/// Symmetric node-dissimilarity matrix with zero diagonal.
struct DissimilarityMatrix {
    std::size_t n = 0;
    std::vector<double> values; // n*n row-major
    DistanceKind kind = DistanceKind::unweighted_shortest;
    int diffusion_t = 0; // set for kind == diffusion

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

/// BFS hop distance between all node pairs.
DissimilarityMatrix unweighted_shortest_path(const TransitionNetwork& net);

/// All-pairs optimal paths minimizing C'(P) = sum 1/w(e). Equal-cost ties
/// prefer fewer hops, then the lexicographically smallest node sequence from
/// the lower-indexed endpoint.
class OptimalPaths {
public:
    OptimalPaths(std::size_t n, std::vector<std::int32_t> parent, std::vector<double> cost,
                 std::vector<std::int32_t> hops, std::vector<double> weight_sum)
        : n_(n), parent_(std::move(parent)), cost_(std::move(cost)), hops_(std::move(hops)),
          weight_sum_(std::move(weight_sum)) {}

    /// Node sequence from a to b along the chosen optimal path.
    std::vector<std::int32_t> path(std::size_t a, std::size_t b) const;
    double cost(std::size_t a, std::size_t b) const { return cost_[a * n_ + b]; }
    int hops(std::size_t a, std::size_t b) const { return hops_[a * n_ + b]; }
    double weight_sum(std::size_t a, std::size_t b) const { return weight_sum_[a * n_ + b]; }

private:
    std::size_t n_;
    std::vector<std::int32_t> parent_; // parent_[s*n+v]: predecessor of v on the path from s
    std::vector<double> cost_;
    std::vector<std::int32_t> hops_;
    std::vector<double> weight_sum_;
};

OptimalPaths reciprocal_optimal_paths(const TransitionNetwork& net);

/// Sum of original weights along the C'-minimizing path.
DissimilarityMatrix weighted_shortest_path(const TransitionNetwork& net);

/// Hop count of the C'-minimizing path.
DissimilarityMatrix shortest_weighted_path(const TransitionNetwork& net);

/// Row-stochastic single-step transition probabilities P(i,j) = A(i,j)/deg(i).
std::vector<double> transition_matrix(const TransitionNetwork& net);

/// Degree-normalized l2 distance between t-step lazy random-walk
/// distributions, with Ptilde = (P + I)/2.
DissimilarityMatrix diffusion_distance(const TransitionNetwork& net, int t);

/// ceil(log2(n_used)) + 1, the default walk length.
int default_diffusion_t(std::size_t n_used);

/// Dispatch on kind; diffusion_t <= 0 selects the default.
DissimilarityMatrix node_distance_matrix(const TransitionNetwork& net, DistanceKind kind,
                                         int diffusion_t = 0);

} // namespace dynstate
