// Brute-force Rips persistence oracle: global boundary-matrix reduction over
// the full clique complex up to triangles, materialized and sorted whole.
// Deliberately shares no machinery with the library implementation.
#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

struct Diagrams {
    std::vector<std::pair<double, double>> dim0;
    std::vector<std::pair<double, double>> dim1; // zero-persistence dropped
};

inline Diagrams rips_reduce(const std::vector<double>& dist, std::size_t n) {
    struct Simplex {
        std::vector<int> verts; // ascending
        double value;
    };
    auto d = [&](int i, int j) { return dist[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)]; };

    std::vector<Simplex> simplices;
    for (int v = 0; v < static_cast<int>(n); ++v) simplices.push_back({{v}, 0.0});
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int j = i + 1; j < static_cast<int>(n); ++j) simplices.push_back({{i, j}, d(i, j)});
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int j = i + 1; j < static_cast<int>(n); ++j)
            for (int k = j + 1; k < static_cast<int>(n); ++k)
                simplices.push_back({{i, j, k}, std::max({d(i, j), d(i, k), d(j, k)})});

    std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
        return a.verts < b.verts;
    });

    std::map<std::vector<int>, int> index_of;
    for (std::size_t i = 0; i < simplices.size(); ++i) index_of[simplices[i].verts] = static_cast<int>(i);

    // column index -> reduced boundary (sorted simplex indices); low -> owner
    std::map<int, std::vector<int>> low_owner;
    std::vector<std::pair<int, int>> pairs; // (birth simplex, death simplex)

    for (std::size_t j = 0; j < simplices.size(); ++j) {
        const Simplex& s = simplices[j];
        if (s.verts.size() == 1) continue;
        std::vector<int> column;
        for (std::size_t drop = 0; drop < s.verts.size(); ++drop) {
            std::vector<int> face;
            for (std::size_t v = 0; v < s.verts.size(); ++v)
                if (v != drop) face.push_back(s.verts[v]);
            column.push_back(index_of.at(face));
        }
        std::sort(column.begin(), column.end());
        while (!column.empty()) {
            const int low = column.back();
            auto it = low_owner.find(low);
            if (it == low_owner.end()) {
                low_owner.emplace(low, column);
                pairs.emplace_back(low, static_cast<int>(j));
                break;
            }
            // symmetric difference with the owning column
            std::vector<int> merged;
            std::set_symmetric_difference(column.begin(), column.end(), it->second.begin(),
                                          it->second.end(), std::back_inserter(merged));
            column.swap(merged);
        }
    }

    Diagrams out;
    for (const auto& [birth_idx, death_idx] : pairs) {
        const Simplex& birth = simplices[static_cast<std::size_t>(birth_idx)];
        const Simplex& death = simplices[static_cast<std::size_t>(death_idx)];
        if (birth.verts.size() == 1) {
            out.dim0.emplace_back(0.0, death.value);
        } else if (birth.verts.size() == 2) {
            if (death.value > birth.value) out.dim1.emplace_back(birth.value, death.value);
        }
    }
    auto by_pair = [](const std::pair<double, double>& a, const std::pair<double, double>& b) {
        return a < b;
    };
    std::sort(out.dim0.begin(), out.dim0.end(), by_pair);
    std::sort(out.dim1.begin(), out.dim1.end(), by_pair);
    return out;
}

} // namespace oracle
