#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynstate/embedding.hpp"

namespace dynstate {

enum class SymbolMethod { ordinal, coarse };

std::string to_string(SymbolMethod m);
SymbolMethod parse_symbol_method(const std::string& s);

/// Chronological integer states over the alphabet [1, N].
struct SymbolSequence {
    std::vector<std::int64_t> states;
    std::int64_t alphabet_size = 0; // n! for ordinal, b^n for coarse
    SymbolMethod method = SymbolMethod::ordinal;
    int dim = 0;
    int bins = 0; // coarse only
};

/// 1-based index of the sorting permutation of v under the lexicographic
/// enumeration of all n! permutations. Ties keep the earlier component first.
std::int64_t assign_permutation_state(std::span<const double> v);

/// Hypercube cell index per the b-ary digit expansion of the binned vector:
/// s = 1 + sum_j rho[j] * b^j with rho[j] = floor(b*(v[j]-lo)/(hi-lo)),
/// right edge clamped into the top bin.
std::int64_t assign_cgss_state(std::span<const double> v, int b, double lo, double hi);

/// Elementwise state assignment over an embedding. Coarse binning spans the
/// source signal's [min, max].
SymbolSequence symbolize(const Embedding& emb, SymbolMethod method, int bins = 0);

/// Weighted, undirected, simple graph over the used states. Adjacency is
/// dense over compacted rows; `symbols[row]` maps back to the original state.
class TransitionNetwork {
public:
    TransitionNetwork(std::vector<std::int64_t> symbols, std::vector<std::int32_t> adjacency);

    std::size_t node_count() const { return symbols_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<std::int64_t>& symbols() const { return symbols_; }

    std::int32_t weight(std::size_t i, std::size_t j) const {
        return adjacency_[i * symbols_.size() + j];
    }
    std::int64_t weighted_degree(std::size_t i) const;
    std::size_t degree(std::size_t i) const;

    struct Edge {
        std::int32_t u, v, weight;
    };
    std::vector<Edge> edges() const;

private:
    std::vector<std::int64_t> symbols_;
    std::vector<std::int32_t> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Count consecutive transitions, drop self-loops, symmetrize as A + A^T,
/// compact to the used states. Throws compute_error on a degenerate sequence
/// (no non-self transition survives).
TransitionNetwork build_network(const SymbolSequence& seq);

} // namespace dynstate
