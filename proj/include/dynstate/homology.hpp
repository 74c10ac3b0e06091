#pragma once

#include <cstdint>
#include <vector>

#include "dynstate/graphdist.hpp"

namespace dynstate {

struct FiltrationEdge {
    double value;
    std::int32_t u, v; // u < v
};

/// Clique (Rips) filtration of a dissimilarity matrix: vertices at 0, the
/// edge (u,v) at D(u,v), triangles at the max of their three edge values.
/// Keeps the matrix so triangle values never need materializing.
class Filtration {
public:
    explicit Filtration(const DissimilarityMatrix& d);

    std::size_t vertex_count() const { return n_; }
    const std::vector<FiltrationEdge>& edges() const { return edges_; }
    double dist(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> dist_;
    std::vector<FiltrationEdge> edges_; // ascending (value, u, v)
};

Filtration build_filtration(const DissimilarityMatrix& d);

struct PersistencePair {
    double birth, death;
    double lifetime() const { return death - birth; }
};

/// Finite pairs only; dim1 additionally drops zero-persistence pairs.
struct PersistenceDiagram {
    std::vector<PersistencePair> dim0;
    std::vector<PersistencePair> dim1;
    DistanceKind kind = DistanceKind::unweighted_shortest; // provenance
    int diffusion_t = 0;
};

/// Union-find sweep; vertex_count - 1 finite pairs on a connected complex.
std::vector<PersistencePair> persistence_dim0(const Filtration& f);

/// Z/2 boundary reduction over edges and clique triangles, truncated at the
/// minimum vertex eccentricity (past it every 1-class is already dead).
std::vector<PersistencePair> persistence_dim1(const Filtration& f);

PersistenceDiagram compute_diagrams(const DissimilarityMatrix& d);

} // namespace dynstate
