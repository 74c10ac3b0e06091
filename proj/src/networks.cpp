#include "dynstate/networks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace dynstate {

std::string to_string(SymbolMethod m) {
    return m == SymbolMethod::ordinal ? "ordinal" : "coarse";
}

SymbolMethod parse_symbol_method(const std::string& s) {
    if (s == "ordinal") return SymbolMethod::ordinal;
    if (s == "coarse") return SymbolMethod::coarse;
    throw validation_error("unknown network kind '" + s + "' (expected ordinal|coarse)");
}

std::int64_t assign_permutation_state(std::span<const double> v) {
    const int n = static_cast<int>(v.size());
    if (n < 2) throw validation_error("permutation state needs dimension >= 2");
    if (n > 20) throw validation_error("permutation state overflows past dimension 20");

    std::array<int, 20> order;
    std::iota(order.begin(), order.begin() + n, 0);
    std::stable_sort(order.begin(), order.begin() + n,
                     [&](int a, int b) { return v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)]; });

    // Lehmer code of the sorting permutation, read as a factorial number.
    std::int64_t index = 0;
    std::int64_t factorial = 1;
    for (int j = n - 2; j >= 0; --j) {
        int smaller = 0;
        for (int k = j + 1; k < n; ++k)
            if (order[k] < order[j]) ++smaller;
        index += smaller * factorial;
        factorial *= (n - j);
    }
    return index + 1;
}

std::int64_t assign_cgss_state(std::span<const double> v, int b, double lo, double hi) {
    if (b < 2) throw validation_error("coarse graining needs at least 2 bins");
    if (!(lo < hi)) throw validation_error("coarse graining needs lo < hi");
    const double range = hi - lo;
    const double tol = 1e-12 * range;

    std::int64_t state = 0;
    std::int64_t scale = 1;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double c = v[j];
        if (c < lo - tol || c > hi + tol)
            throw compute_error("component " + std::to_string(j) + " = " + std::to_string(c) +
                                " outside binning domain [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
        auto bin = static_cast<std::int64_t>(std::floor(static_cast<double>(b) * (c - lo) / range));
        bin = std::clamp<std::int64_t>(bin, 0, b - 1);
        state += bin * scale;
        scale *= b;
    }
    return state + 1;
}

SymbolSequence symbolize(const Embedding& emb, SymbolMethod method, int bins) {
    SymbolSequence seq;
    seq.method = method;
    seq.dim = emb.dim();
    seq.states.resize(emb.count());

    if (method == SymbolMethod::ordinal) {
        std::int64_t alphabet = 1;
        for (int i = 2; i <= emb.dim(); ++i) alphabet *= i;
        seq.alphabet_size = alphabet;
        for (std::size_t i = 0; i < emb.count(); ++i)
            seq.states[i] = assign_permutation_state(emb.vec(i));
    } else {
        if (bins < 2) throw validation_error("coarse symbolization needs bins >= 2");
        seq.bins = bins;
        std::int64_t alphabet = 1;
        for (int i = 0; i < emb.dim(); ++i) {
            if (alphabet > std::numeric_limits<std::int64_t>::max() / bins)
                throw validation_error("alphabet b^n overflows");
            alphabet *= bins;
        }
        seq.alphabet_size = alphabet;
        const double lo = emb.source_min();
        const double hi = emb.source_max();
        if (lo == hi) {
            // constant signal: the whole domain is one cell
            std::fill(seq.states.begin(), seq.states.end(), 1);
            return seq;
        }
        for (std::size_t i = 0; i < emb.count(); ++i)
            seq.states[i] = assign_cgss_state(emb.vec(i), bins, lo, hi);
    }
    return seq;
}

TransitionNetwork::TransitionNetwork(std::vector<std::int64_t> symbols,
                                     std::vector<std::int32_t> adjacency)
    : symbols_(std::move(symbols)), adjacency_(std::move(adjacency)) {
    const std::size_t n = symbols_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (adjacency_[i * n + j] > 0) ++edge_count_;
}

std::int64_t TransitionNetwork::weighted_degree(std::size_t i) const {
    const std::size_t n = symbols_.size();
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += adjacency_[i * n + j];
    return acc;
}

std::size_t TransitionNetwork::degree(std::size_t i) const {
    const std::size_t n = symbols_.size();
    std::size_t acc = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (adjacency_[i * n + j] > 0) ++acc;
    return acc;
}

std::vector<TransitionNetwork::Edge> TransitionNetwork::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    const std::size_t n = symbols_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (const std::int32_t w = adjacency_[i * n + j]; w > 0)
                out.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), w});
    return out;
}

TransitionNetwork build_network(const SymbolSequence& seq) {
    if (seq.states.size() < 2) throw validation_error("build_network needs at least 2 states");

    // Directed transition counts over the used states only.
    std::map<std::pair<std::int64_t, std::int64_t>, std::int32_t> counts;
    for (std::size_t i = 0; i + 1 < seq.states.size(); ++i) {
        const std::int64_t a = seq.states[i];
        const std::int64_t b = seq.states[i + 1];
        if (a == b) continue; // self-loops dropped
        ++counts[{a, b}];
    }
    if (counts.empty())
        throw compute_error("degenerate sequence: only self-transitions present");

    std::vector<std::int64_t> symbols;
    for (const auto& [key, w] : counts) {
        (void)w;
        symbols.push_back(key.first);
        symbols.push_back(key.second);
    }
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());

    const std::size_t n = symbols.size();
    auto row_of = [&](std::int64_t s) {
        return static_cast<std::size_t>(
            std::lower_bound(symbols.begin(), symbols.end(), s) - symbols.begin());
    };

    std::vector<std::int32_t> adjacency(n * n, 0);
    for (const auto& [key, w] : counts) {
        const std::size_t i = row_of(key.first);
        const std::size_t j = row_of(key.second);
        adjacency[i * n + j] += w; // A + A^T
        adjacency[j * n + i] += w;
    }

    // Single-sequence construction makes the used-state graph connected; verify.
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (!seen[v] && adjacency[u * n + v] > 0) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    if (reached != n) throw compute_error("transition network is disconnected");

    return TransitionNetwork(std::move(symbols), std::move(adjacency));
}

} // namespace dynstate
