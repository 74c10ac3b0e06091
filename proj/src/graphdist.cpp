#include "dynstate/graphdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include <Eigen/Dense>

namespace dynstate {

std::string to_string(DistanceKind k) {
    switch (k) {
    case DistanceKind::unweighted_shortest: return "unweighted";
    case DistanceKind::weighted_shortest: return "weighted";
    case DistanceKind::shortest_weighted: return "shortest-weighted";
    case DistanceKind::diffusion: return "diffusion";
    }
    return "?";
}

DistanceKind parse_distance_kind(const std::string& s) {
    if (s == "unweighted") return DistanceKind::unweighted_shortest;
    if (s == "weighted") return DistanceKind::weighted_shortest;
    if (s == "shortest-weighted") return DistanceKind::shortest_weighted;
    if (s == "diffusion") return DistanceKind::diffusion;
    throw validation_error("unknown distance kind '" + s +
                           "' (expected unweighted|weighted|shortest-weighted|diffusion)");
}

namespace {

struct AdjacencyList {
    std::vector<std::int32_t> heads;   // neighbor ids, grouped by node
    std::vector<std::int32_t> weights; // parallel to heads
    std::vector<std::size_t> offsets;  // node -> [offsets[i], offsets[i+1])
};

AdjacencyList adjacency_list(const TransitionNetwork& net) {
    const std::size_t n = net.node_count();
    AdjacencyList out;
    out.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) out.offsets[i + 1] = out.offsets[i] + net.degree(i);
    out.heads.resize(out.offsets[n]);
    out.weights.resize(out.offsets[n]);
    std::vector<std::size_t> cursor(out.offsets.begin(), out.offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (const auto w = net.weight(i, j); w > 0) {
                out.heads[cursor[i]] = static_cast<std::int32_t>(j);
                out.weights[cursor[i]] = w;
                ++cursor[i];
            }
    return out;
}

// Single-source state of the reciprocal-cost Dijkstra.
struct ReciprocalTree {
    std::vector<double> cost;
    std::vector<std::int32_t> hops;
    std::vector<double> weight_sum;
    std::vector<std::int32_t> parent;
};

std::vector<std::int32_t> trace_path(const std::vector<std::int32_t>& parent, std::int32_t v) {
    std::vector<std::int32_t> seq;
    for (std::int32_t cur = v; cur != -1; cur = parent[static_cast<std::size_t>(cur)])
        seq.push_back(cur);
    std::reverse(seq.begin(), seq.end());
    return seq;
}

ReciprocalTree reciprocal_dijkstra(const AdjacencyList& adj, std::size_t n, std::int32_t source) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    ReciprocalTree t;
    t.cost.assign(n, inf);
    t.hops.assign(n, 0);
    t.weight_sum.assign(n, 0.0);
    t.parent.assign(n, -1);

    using Key = std::tuple<double, std::int32_t, std::int32_t>; // cost, hops, node
    std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
    std::vector<char> settled(n, 0);
    t.cost[static_cast<std::size_t>(source)] = 0.0;
    heap.emplace(0.0, 0, source);

    while (!heap.empty()) {
        const auto [cost, hops, u] = heap.top();
        heap.pop();
        const auto ui = static_cast<std::size_t>(u);
        if (settled[ui]) continue;
        settled[ui] = 1;
        for (std::size_t e = adj.offsets[ui]; e < adj.offsets[ui + 1]; ++e) {
            const std::int32_t v = adj.heads[e];
            const auto vi = static_cast<std::size_t>(v);
            if (settled[vi]) continue;
            const double w = adj.weights[e];
            const double cand_cost = cost + 1.0 / w;
            const std::int32_t cand_hops = hops + 1;
            bool better = false;
            if (cand_cost < t.cost[vi]) {
                better = true;
            } else if (cand_cost == t.cost[vi]) {
                if (cand_hops < t.hops[vi]) {
                    better = true;
                } else if (cand_hops == t.hops[vi] && t.parent[vi] != u) {
                    // Equal cost and hops: keep the lexicographically smaller
                    // node sequence. Candidate and incumbent have equal length.
                    auto cand = trace_path(t.parent, u);
                    cand.push_back(v);
                    const auto cur = trace_path(t.parent, v);
                    better = std::lexicographical_compare(cand.begin(), cand.end(), cur.begin(),
                                                          cur.end());
                }
            }
            if (better) {
                t.cost[vi] = cand_cost;
                t.hops[vi] = cand_hops;
                t.weight_sum[vi] = t.weight_sum[ui] + w;
                t.parent[vi] = u;
                heap.emplace(cand_cost, cand_hops, v);
            }
        }
    }
    return t;
}

} // namespace

DissimilarityMatrix unweighted_shortest_path(const TransitionNetwork& net) {
    const std::size_t n = net.node_count();
    const AdjacencyList adj = adjacency_list(net);
    DissimilarityMatrix out;
    out.n = n;
    out.kind = DistanceKind::unweighted_shortest;
    out.values.assign(n * n, 0.0);

    std::vector<std::int32_t> dist(n);
    std::vector<std::int32_t> queue(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = static_cast<std::int32_t>(s);
        while (head < tail) {
            const auto u = static_cast<std::size_t>(queue[head++]);
            for (std::size_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e) {
                const auto v = static_cast<std::size_t>(adj.heads[e]);
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue[tail++] = static_cast<std::int32_t>(v);
                }
            }
        }
        for (std::size_t v = 0; v < n; ++v) out.at(s, v) = dist[v];
    }
    return out;
}

OptimalPaths reciprocal_optimal_paths(const TransitionNetwork& net) {
    const std::size_t n = net.node_count();
    const AdjacencyList adj = adjacency_list(net);
    std::vector<std::int32_t> parent(n * n, -1);
    std::vector<double> cost(n * n, 0.0);
    std::vector<std::int32_t> hops(n * n, 0);
    std::vector<double> weight_sum(n * n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        const ReciprocalTree t = reciprocal_dijkstra(adj, n, static_cast<std::int32_t>(s));
        std::copy(t.parent.begin(), t.parent.end(), parent.begin() + static_cast<std::ptrdiff_t>(s * n));
        std::copy(t.cost.begin(), t.cost.end(), cost.begin() + static_cast<std::ptrdiff_t>(s * n));
        std::copy(t.hops.begin(), t.hops.end(), hops.begin() + static_cast<std::ptrdiff_t>(s * n));
        std::copy(t.weight_sum.begin(), t.weight_sum.end(),
                  weight_sum.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
    return OptimalPaths(n, std::move(parent), std::move(cost), std::move(hops),
                        std::move(weight_sum));
}

std::vector<std::int32_t> OptimalPaths::path(std::size_t a, std::size_t b) const {
    // Paths are canonical from the lower-indexed endpoint.
    const std::size_t s = std::min(a, b);
    const std::size_t v = std::max(a, b);
    std::vector<std::int32_t> seq;
    const std::int32_t* par = parent_.data() + s * n_;
    for (auto cur = static_cast<std::int32_t>(v); cur != -1;
         cur = par[static_cast<std::size_t>(cur)])
        seq.push_back(cur);
    std::reverse(seq.begin(), seq.end());
    if (a > b) std::reverse(seq.begin(), seq.end());
    return seq;
}

namespace {

DissimilarityMatrix reciprocal_path_matrix(const TransitionNetwork& net, DistanceKind kind) {
    const std::size_t n = net.node_count();
    const AdjacencyList adj = adjacency_list(net);
    DissimilarityMatrix out;
    out.n = n;
    out.kind = kind;
    out.values.assign(n * n, 0.0);
    // Each unordered pair takes its value from the lower-indexed source, so
    // the matrix is symmetric even when tie-breaking is direction-sensitive.
    for (std::size_t s = 0; s + 1 < n; ++s) {
        const ReciprocalTree t = reciprocal_dijkstra(adj, n, static_cast<std::int32_t>(s));
        for (std::size_t v = s + 1; v < n; ++v) {
            const double value = kind == DistanceKind::weighted_shortest
                                     ? t.weight_sum[v]
                                     : static_cast<double>(t.hops[v]);
            out.at(s, v) = value;
            out.at(v, s) = value;
        }
    }
    return out;
}

} // namespace

DissimilarityMatrix weighted_shortest_path(const TransitionNetwork& net) {
    return reciprocal_path_matrix(net, DistanceKind::weighted_shortest);
}

DissimilarityMatrix shortest_weighted_path(const TransitionNetwork& net) {
    return reciprocal_path_matrix(net, DistanceKind::shortest_weighted);
}

std::vector<double> transition_matrix(const TransitionNetwork& net) {
    const std::size_t n = net.node_count();
    std::vector<double> p(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto deg = static_cast<double>(net.weighted_degree(i));
        for (std::size_t j = 0; j < n; ++j)
            p[i * n + j] = net.weight(i, j) / deg;
    }
    return p;
}

int default_diffusion_t(std::size_t n_used) {
    int t = 1;
    std::size_t cap = 1;
    while (cap < n_used) {
        cap <<= 1;
        ++t;
    }
    return t;
}

DissimilarityMatrix diffusion_distance(const TransitionNetwork& net, int t) {
    if (t < 1) throw validation_error("diffusion distance needs t >= 1");
    const std::size_t n = net.node_count();
    const std::vector<double> p = transition_matrix(net);

    Eigen::MatrixXd lazy(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lazy(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                0.5 * (p[i * n + j] + (i == j ? 1.0 : 0.0));

    // lazy^t by repeated squaring
    Eigen::MatrixXd walk = Eigen::MatrixXd::Identity(lazy.rows(), lazy.cols());
    Eigen::MatrixXd base = lazy;
    for (int e = t; e > 0; e >>= 1) {
        if (e & 1) walk = walk * base;
        if (e > 1) base = base * base;
    }

    Eigen::VectorXd inv_deg(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        inv_deg(static_cast<Eigen::Index>(i)) = 1.0 / static_cast<double>(net.weighted_degree(i));

    // d(a,b)^2 = q_a + q_b - 2*G(a,b) with G = walk * diag(1/deg) * walk^T
    Eigen::MatrixXd gram = walk * inv_deg.asDiagonal() * walk.transpose();
    gram = 0.5 * (gram + gram.transpose()).eval();

    DissimilarityMatrix out;
    out.n = n;
    out.kind = DistanceKind::diffusion;
    out.diffusion_t = t;
    out.values.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double d2 = gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) +
                              gram(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) -
                              2.0 * gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            const double d = std::sqrt(std::max(0.0, d2));
            out.at(a, b) = d;
            out.at(b, a) = d;
        }
    }
    return out;
}

DissimilarityMatrix node_distance_matrix(const TransitionNetwork& net, DistanceKind kind,
                                         int diffusion_t) {
    switch (kind) {
    case DistanceKind::unweighted_shortest: return unweighted_shortest_path(net);
    case DistanceKind::weighted_shortest: return weighted_shortest_path(net);
    case DistanceKind::shortest_weighted: return shortest_weighted_path(net);
    case DistanceKind::diffusion:
        return diffusion_distance(net, diffusion_t > 0 ? diffusion_t
                                                       : default_diffusion_t(net.node_count()));
    }
    throw validation_error("unreachable distance kind");
}

} // namespace dynstate
