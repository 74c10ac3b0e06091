#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "dynstate/graphdist.hpp"
#include "dynstate/networks.hpp"

namespace testutil {

/// Self-deleting temp file seeded with content.
class TempFile {
public:
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("dynstate-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) +
                 ".csv");
        std::ofstream out(path_);
        out << content;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path_, ec); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

/// Random symmetric zero-diagonal matrix; entries drawn from a small value
/// set every other call to exercise tie handling.
inline dynstate::DissimilarityMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    dynstate::DissimilarityMatrix d;
    d.n = n;
    d.values.assign(n * n, 0.0);
    const bool discrete = (rng() & 1) == 0;
    std::uniform_real_distribution<double> real(0.05, 2.0);
    std::uniform_int_distribution<int> coarse(0, 4);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = discrete ? 0.5 * coarse(rng) : real(rng);
            d.values[i * n + j] = v;
            d.values[j * n + i] = v;
        }
    return d;
}

/// Random connected weighted network: a random spanning tree plus extra edges.
inline dynstate::TransitionNetwork random_network(std::mt19937_64& rng, std::size_t n,
                                                  int max_weight = 5, double extra_edge_p = 0.3) {
    std::vector<std::int32_t> adjacency(n * n, 0);
    std::uniform_int_distribution<int> weight(1, max_weight);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t v = 1; v < n; ++v) {
        const std::size_t u = rng() % v;
        const int w = weight(rng);
        adjacency[u * n + v] = w;
        adjacency[v * n + u] = w;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (adjacency[i * n + j] == 0 && coin(rng) < extra_edge_p) {
                const int w = weight(rng);
                adjacency[i * n + j] = w;
                adjacency[j * n + i] = w;
            }
    std::vector<std::int64_t> symbols(n);
    for (std::size_t i = 0; i < n; ++i) symbols[i] = static_cast<std::int64_t>(i + 1);
    return dynstate::TransitionNetwork(std::move(symbols), std::move(adjacency));
}

} // namespace testutil
