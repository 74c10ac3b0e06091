#include "dynstate/diagstats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "dynstate/parallel.hpp"

namespace dynstate {

double total_persistence(std::span<const PersistencePair> diagram) {
    double acc = 0.0;
    for (const auto& p : diagram) acc += p.lifetime();
    return acc;
}

double max_lifetime(std::span<const PersistencePair> diagram) {
    double best = 0.0;
    for (const auto& p : diagram) best = std::max(best, p.lifetime());
    return best;
}

EntropyResult persistent_entropy(std::span<const PersistencePair> diagram,
                                 EntropyNormalization norm) {
    if (diagram.empty()) return {0.0, true};
    const double total = total_persistence(diagram);
    if (total <= 0.0) return {0.0, true}; // only zero-lifetime pairs carry no information

    double numerator = 0.0;
    for (const auto& p : diagram) {
        const double frac = p.lifetime() / total;
        if (frac > 0.0) numerator -= frac * std::log2(frac);
    }
    double denominator;
    if (norm == EntropyNormalization::total_persistence) {
        if (total == 1.0)
            throw compute_error("persistent entropy undefined at total persistence 1");
        denominator = std::log2(total);
    } else {
        if (diagram.size() == 1) return {0.0, false};
        denominator = std::log2(static_cast<double>(diagram.size()));
    }
    return {numerator / denominator, false};
}

DiagramSummary summarize(std::span<const PersistencePair> diagram) {
    DiagramSummary s;
    s.pair_count = diagram.size();
    s.max_lifetime = max_lifetime(diagram);
    s.total_persistence = total_persistence(diagram);
    const EntropyResult e = persistent_entropy(diagram);
    s.entropy = e.value;
    s.empty = e.empty_diagram;
    return s;
}

namespace {

// Hopcroft-Karp maximum matching on an implicit bipartite graph.
class BipartiteMatcher {
public:
    BipartiteMatcher(std::size_t left, std::size_t right,
                     std::function<void(std::size_t, std::vector<std::int32_t>&)> neighbors)
        : left_(left), right_(right), neighbors_(std::move(neighbors)) {}

    std::size_t max_matching() {
        match_left_.assign(left_, -1);
        match_right_.assign(right_, -1);
        adjacency_.assign(left_, {});
        for (std::size_t u = 0; u < left_; ++u) neighbors_(u, adjacency_[u]);

        std::size_t matched = 0;
        while (bfs()) {
            for (std::size_t u = 0; u < left_; ++u)
                if (match_left_[u] == -1 && dfs(static_cast<std::int32_t>(u))) ++matched;
        }
        return matched;
    }

private:
    static constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();

    bool bfs() {
        std::vector<std::int32_t> queue;
        layer_.assign(left_, kInf);
        for (std::size_t u = 0; u < left_; ++u)
            if (match_left_[u] == -1) {
                layer_[u] = 0;
                queue.push_back(static_cast<std::int32_t>(u));
            }
        bool reachable = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto u = static_cast<std::size_t>(queue[head]);
            for (const std::int32_t v : adjacency_[u]) {
                const std::int32_t w = match_right_[static_cast<std::size_t>(v)];
                if (w == -1) {
                    reachable = true;
                } else if (layer_[static_cast<std::size_t>(w)] == kInf) {
                    layer_[static_cast<std::size_t>(w)] = layer_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return reachable;
    }

    bool dfs(std::int32_t u) {
        const auto ui = static_cast<std::size_t>(u);
        for (const std::int32_t v : adjacency_[ui]) {
            const std::int32_t w = match_right_[static_cast<std::size_t>(v)];
            if (w == -1 || (layer_[static_cast<std::size_t>(w)] == layer_[ui] + 1 && dfs(w))) {
                match_left_[ui] = v;
                match_right_[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        layer_[ui] = kInf;
        return false;
    }

    std::size_t left_, right_;
    std::function<void(std::size_t, std::vector<std::int32_t>&)> neighbors_;
    std::vector<std::vector<std::int32_t>> adjacency_;
    std::vector<std::int32_t> match_left_;
    std::vector<std::int32_t> match_right_;
    std::vector<std::int32_t> layer_;
};

double pair_cost(const PersistencePair& x, const PersistencePair& y) {
    return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death));
}

// Perfect matching exists at threshold eps: points may match across diagrams
// at sup-norm cost, or drop to the diagonal at cost pers/2; diagonal slots
// absorb each other for free.
bool feasible(std::span<const PersistencePair> a, std::span<const PersistencePair> b,
              double eps) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    // Left = a-points plus one diagonal slot per b-point; right = b-points
    // plus one diagonal slot per a-point. Diagonal slots absorb each other
    // for free, so a perfect matching of the left side decides feasibility.
    const std::size_t left = na + nb;
    const std::size_t right = nb + na;
    BipartiteMatcher matcher(left, right, [&](std::size_t u, std::vector<std::int32_t>& out) {
        out.clear();
        if (u < na) {
            for (std::size_t j = 0; j < nb; ++j)
                if (pair_cost(a[u], b[j]) <= eps) out.push_back(static_cast<std::int32_t>(j));
            if (a[u].lifetime() / 2.0 <= eps)
                out.push_back(static_cast<std::int32_t>(nb + u)); // own diagonal slot
        } else {
            const std::size_t j = u - na; // diagonal slot of b[j]
            if (b[j].lifetime() / 2.0 <= eps) out.push_back(static_cast<std::int32_t>(j));
            for (std::size_t i = 0; i < na; ++i)
                out.push_back(static_cast<std::int32_t>(nb + i)); // diagonal-diagonal, free
        }
    });
    return matcher.max_matching() == left;
}

} // namespace

double bottleneck(std::span<const PersistencePair> a, std::span<const PersistencePair> b) {
    if (a.empty() && b.empty()) return 0.0;

    std::vector<double> candidates{0.0};
    for (const auto& x : a) candidates.push_back(x.lifetime() / 2.0);
    for (const auto& y : b) candidates.push_back(y.lifetime() / 2.0);
    for (const auto& x : a)
        for (const auto& y : b) candidates.push_back(pair_cost(x, y));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(a, b, candidates[mid])) hi = mid;
        else lo = mid + 1;
    }
    return candidates[lo];
}

std::vector<double> bottleneck_matrix(const std::vector<std::vector<PersistencePair>>& diagrams,
                                      int jobs) {
    const std::size_t n = diagrams.size();
    std::vector<double> out(n * n, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) work.emplace_back(i, j);
    parallel_for(work.size(), jobs, [&](std::size_t w) {
        const auto [i, j] = work[w];
        const double d = bottleneck(diagrams[i], diagrams[j]);
        out[i * n + j] = d;
        out[j * n + i] = d;
    });
    return out;
}

} // namespace dynstate
