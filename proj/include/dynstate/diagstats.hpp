#pragma once

#include <span>
#include <vector>

#include "dynstate/homology.hpp"

namespace dynstate {

enum class EntropyNormalization {
    total_persistence, // log2 of summed lifetimes (the default)
    pair_count,        // log2 of the pair count (sensitivity-analysis variant)
};

struct EntropyResult {
    double value = 0.0;
    bool empty_diagram = false; // value 0 came from an empty diagram
};

/// Normalized persistent entropy of one diagram slice. An empty diagram is
/// defined as 0 with the warning flag set; total persistence of exactly 1
/// makes the normalization undefined and throws compute_error.
EntropyResult persistent_entropy(std::span<const PersistencePair> diagram,
                                 EntropyNormalization norm = EntropyNormalization::total_persistence);

/// 0 for an empty diagram.
double max_lifetime(std::span<const PersistencePair> diagram);

double total_persistence(std::span<const PersistencePair> diagram);

struct DiagramSummary {
    double max_lifetime = 0.0;
    double entropy = 0.0;
    std::size_t pair_count = 0;
    double total_persistence = 0.0;
    bool empty = false;
};

DiagramSummary summarize(std::span<const PersistencePair> diagram);

/// Sup-norm optimal matching distance between two diagrams (points may match
/// each other or the diagonal at cost pers/2). Exact on the candidate set.
double bottleneck(std::span<const PersistencePair> a, std::span<const PersistencePair> b);

/// Pairwise bottleneck distances; jobs <= 0 uses all hardware threads.
std::vector<double> bottleneck_matrix(const std::vector<std::vector<PersistencePair>>& diagrams,
                                      int jobs = 0);

} // namespace dynstate
