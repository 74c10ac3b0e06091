#include <doctest.h>

#include <algorithm>
#include <random>

#include "dynstate/homology.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace dynstate;

namespace {

DissimilarityMatrix matrix_of(std::size_t n, std::vector<double> values) {
    DissimilarityMatrix d;
    d.n = n;
    d.values = std::move(values);
    return d;
}

std::vector<std::pair<double, double>> as_pairs(const std::vector<PersistencePair>& pairs) {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : pairs) out.emplace_back(p.birth, p.death);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("four-node toy matrix: merges then one square loop") {
    const DissimilarityMatrix d = matrix_of(4, {0.0, 0.5, 2.0, 1.0, //
                                                0.5, 0.0, 1.0, 2.0, //
                                                2.0, 1.0, 0.0, 1.0, //
                                                1.0, 2.0, 1.0, 0.0});
    const PersistenceDiagram diagram = compute_diagrams(d);
    CHECK(as_pairs(diagram.dim0) ==
          std::vector<std::pair<double, double>>{{0.0, 0.5}, {0.0, 1.0}, {0.0, 1.0}});
    CHECK(as_pairs(diagram.dim1) == std::vector<std::pair<double, double>>{{1.0, 2.0}});
}

TEST_CASE("single vertex has no finite classes") {
    const PersistenceDiagram diagram = compute_diagrams(matrix_of(1, {0.0}));
    CHECK(diagram.dim0.empty());
    CHECK(diagram.dim1.empty());
}

TEST_CASE("chained points die at their gap values") {
    // points on a line with gaps 1, 2, 3, 4
    const std::size_t n = 5;
    std::vector<double> coords{0.0, 1.0, 3.0, 6.0, 10.0};
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) values[i * n + j] = std::abs(coords[i] - coords[j]);
    const PersistenceDiagram diagram = compute_diagrams(matrix_of(n, std::move(values)));
    CHECK(as_pairs(diagram.dim0) == std::vector<std::pair<double, double>>{
                                        {0.0, 1.0}, {0.0, 2.0}, {0.0, 3.0}, {0.0, 4.0}});
    CHECK(diagram.dim1.empty());
}

TEST_CASE("hop metric of the nine-cycle") {
    const std::size_t n = 9;
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            values[i * n + j] = static_cast<double>(std::min(gap, n - gap));
        }
    const PersistenceDiagram diagram = compute_diagrams(matrix_of(n, std::move(values)));
    CHECK(as_pairs(diagram.dim1) == std::vector<std::pair<double, double>>{{1.0, 3.0}});
    CHECK(diagram.dim0.size() == 8);
}

TEST_CASE("equidistant points fill instantly") {
    const std::size_t n = 6;
    std::vector<double> values(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 0.0;
    const PersistenceDiagram diagram = compute_diagrams(matrix_of(n, std::move(values)));
    CHECK(diagram.dim1.empty());
    CHECK(diagram.dim0.size() == 5);
}

TEST_CASE("duplicate points keep their zero-death pairs") {
    const DissimilarityMatrix d = matrix_of(3, {0.0, 0.0, 1.0, //
                                                0.0, 0.0, 1.0, //
                                                1.0, 1.0, 0.0});
    const PersistenceDiagram diagram = compute_diagrams(d);
    CHECK(as_pairs(diagram.dim0) ==
          std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.0, 1.0}});
}

TEST_CASE("filtration validates its input") {
    CHECK_THROWS_AS(build_filtration(matrix_of(2, {0.0, 1.0, 2.0, 0.0})), validation_error);
    CHECK_THROWS_AS(build_filtration(matrix_of(2, {0.0, -1.0, -1.0, 0.0})), validation_error);
    CHECK_THROWS_AS(build_filtration(matrix_of(2, {0.5, 1.0, 1.0, 0.0})), validation_error);
}

TEST_CASE("filtration edges arrive sorted with lexicographic ties") {
    const DissimilarityMatrix d = matrix_of(3, {0.0, 1.0, 1.0, //
                                                1.0, 0.0, 0.5, //
                                                1.0, 0.5, 0.0});
    const Filtration f = build_filtration(d);
    REQUIRE(f.edges().size() == 3);
    CHECK(f.edges()[0].value == 0.5);
    CHECK(f.edges()[1].u == 0);
    CHECK(f.edges()[1].v == 1);
    CHECK(f.edges()[2].u == 0);
    CHECK(f.edges()[2].v == 2);
}

TEST_CASE("agreement with the brute-force reducer on random matrices") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const DissimilarityMatrix d = testutil::random_matrix(rng, n);
        const PersistenceDiagram mine = compute_diagrams(d);
        const oracle::Diagrams expected = oracle::rips_reduce(d.values, n);
        REQUIRE(as_pairs(mine.dim0) == expected.dim0);
        REQUIRE(as_pairs(mine.dim1) == expected.dim1);
    }
}

TEST_CASE("diagrams scale with the matrix") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const DissimilarityMatrix base = testutil::random_matrix(rng, n);
        const PersistenceDiagram reference = compute_diagrams(base);
        for (const double alpha : {0.5, 2.0, 10.0}) {
            DissimilarityMatrix scaled = base;
            for (double& v : scaled.values) v *= alpha;
            const PersistenceDiagram got = compute_diagrams(scaled);
            REQUIRE(got.dim0.size() == reference.dim0.size());
            REQUIRE(got.dim1.size() == reference.dim1.size());
            for (std::size_t i = 0; i < got.dim1.size(); ++i) {
                CHECK(got.dim1[i].birth == alpha * reference.dim1[i].birth);
                CHECK(got.dim1[i].death == alpha * reference.dim1[i].death);
            }
            for (std::size_t i = 0; i < got.dim0.size(); ++i)
                CHECK(got.dim0[i].death == alpha * reference.dim0[i].death);
        }
    }
}

TEST_CASE("structural diagram invariants on random matrices") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const DissimilarityMatrix d = testutil::random_matrix(rng, n);
        const Filtration f = build_filtration(d);
        const PersistenceDiagram diagram = compute_diagrams(d);

        CHECK(diagram.dim0.size() == n - 1);
        for (const auto& p : diagram.dim0) CHECK(p.birth == 0.0);

        std::vector<double> edge_values;
        for (const auto& e : f.edges()) edge_values.push_back(e.value);
        for (const auto& p : diagram.dim1) {
            CHECK(p.birth < p.death);
            CHECK(std::count(edge_values.begin(), edge_values.end(), p.birth) > 0);
            // deaths are triangle values, i.e. the max of some edge triple --
            // with the clique rule every triangle value is itself an edge value
            CHECK(std::count(edge_values.begin(), edge_values.end(), p.death) > 0);
        }
    }
}
