#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "dynstate/analysis.hpp"

using namespace dynstate;

namespace {

std::vector<double> pairwise_distances(const std::vector<std::array<double, 2>>& pts) {
    const std::size_t n = pts.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i * n + j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
    return d;
}

} // namespace

TEST_CASE("mds recovers the unit square") {
    const std::vector<std::array<double, 2>> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const std::vector<double> d = pairwise_distances(corners);
    const auto projected = mds_2d(d, 4);
    const std::vector<double> recovered = pairwise_distances(projected);
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(recovered[i] == doctest::Approx(d[i]).epsilon(1e-9));
}

TEST_CASE("mds puts identical rows at the same point") {
    // two coincident points at distance 1 from a third
    const std::vector<double> d{0, 0, 1, //
                                0, 0, 1, //
                                1, 1, 0};
    const auto projected = mds_2d(d, 3);
    CHECK(std::abs(projected[0][0] - projected[1][0]) <= 1e-8);
    CHECK(std::abs(projected[0][1] - projected[1][1]) <= 1e-8);
}

TEST_CASE("mds reproduces an equilateral triangle") {
    const std::vector<double> d{0, 1, 1, //
                                1, 0, 1, //
                                1, 1, 0};
    const auto projected = mds_2d(d, 3);
    const std::vector<double> recovered = pairwise_distances(projected);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(recovered[i * 3 + j] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mds handles the all-zero matrix") {
    const std::vector<double> d(9, 0.0);
    const auto projected = mds_2d(d, 3);
    for (const auto& p : projected) {
        CHECK(p[0] == 0.0);
        CHECK(p[1] == 0.0);
    }
}

TEST_CASE("mds geometry is invariant under relabeling") {
    std::mt19937_64 rng(311);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::vector<std::array<double, 2>> pts(7);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    const std::vector<double> d = pairwise_distances(pts);
    const std::size_t n = pts.size();

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> shuffled(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            shuffled[i * n + j] = d[perm[i] * n + perm[j]];

    const auto base = mds_2d(d, n);
    const auto moved = mds_2d(shuffled, n);
    const std::vector<double> base_d = pairwise_distances(base);
    const std::vector<double> moved_d = pairwise_distances(moved);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            CHECK(moved_d[i * n + j] == doctest::Approx(base_d[perm[i] * n + perm[j]]).epsilon(1e-9));
}

TEST_CASE("svm separates two clean blobs for every seed") {
    std::mt19937_64 rng(401);
    std::normal_distribution<double> jitter(0.0, 0.3);
    std::vector<std::array<double, 2>> pts;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        pts.push_back({-3.0 + jitter(rng), jitter(rng)});
        labels.push_back(-1);
        pts.push_back({3.0 + jitter(rng), jitter(rng)});
        labels.push_back(1);
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        CHECK(svm_rbf_separation(pts, labels, seed) == 1.0);
}

TEST_CASE("svm on random labels scores near the majority fraction") {
    std::mt19937_64 rng(419);
    std::normal_distribution<double> jitter(0.0, 1.0);
    std::vector<std::array<double, 2>> pts;
    std::vector<int> labels;
    int positives = 0;
    constexpr int kPoints = 80; // enough that the soft margin cannot memorize
    for (int i = 0; i < kPoints; ++i) {
        pts.push_back({jitter(rng), jitter(rng)});
        const int label = (rng() & 1) ? 1 : -1;
        positives += label == 1;
        labels.push_back(label);
    }
    const double majority = std::max(positives, kPoints - positives) / double(kPoints);
    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) mean += svm_rbf_separation(pts, labels, seed);
    mean /= 100.0;
    CHECK(mean >= majority - 0.15);
    CHECK(mean <= majority + 0.15);
}

TEST_CASE("svm rejects single-class input") {
    const std::vector<std::array<double, 2>> pts{{0, 0}, {1, 1}};
    CHECK_THROWS_AS(svm_rbf_separation(pts, {1, 1}, 1), validation_error);
}

TEST_CASE("bin sweep surfaces per-point failures on a constant signal") {
    const TimeSeries constant{std::vector<double>(64, 1.0), 10.0, "flat"};
    const SweepResult sweep =
        bin_sweep(constant, 1, 2, 2, 2, DistanceKind::unweighted_shortest, 1);
    REQUIRE(sweep.x_values.size() == 1);
    REQUIRE(sweep.series.size() == 1);
    CHECK(sweep.series[0].errors[0].find("degenerate") != std::string::npos);
    CHECK(std::isnan(sweep.series[0].entropy[0]));
}

TEST_CASE("bin sweep enforces the documented range") {
    const TimeSeries ts = sine_series(4.0, 50.0, 3.14159);
    CHECK_THROWS_AS(bin_sweep(ts, 26, 2, 1, 5, DistanceKind::unweighted_shortest, 1),
                    validation_error);
    CHECK_THROWS_AS(bin_sweep(ts, 26, 2, 2, 21, DistanceKind::unweighted_shortest, 1),
                    validation_error);
}

TEST_CASE("noise sweep: the no-noise sentinel reproduces the clean pipeline") {
    const double pi = 3.14159265358979323846;
    const TimeSeries clean = sine_series((100.0 + 26.0 + 5.0) / 50.0, 50.0, pi);
    const TimeSeries rough = add_noise_snr(sine_series(8.0, 50.0, pi), 0.0, 99); // scrambled

    NoiseSweepConfig config;
    config.snr_db = {std::numeric_limits<double>::infinity()};
    config.seeds = {1, 2};
    config.method = SymbolMethod::coarse;
    config.params.tau = 26;
    config.params.dim = 2;
    config.params.bins = 10;
    config.params.distance = DistanceKind::unweighted_shortest;
    config.jobs = 1;
    const NoiseSweepResult result = noise_sweep(clean, rough, config);

    PipelineParams params = config.params;
    params.method = SymbolMethod::coarse;
    const double clean_entropy =
        persistent_entropy(run_pipeline(clean, params).dim1).value;
    CHECK(result.sweep.series[0].entropy[0] == clean_entropy);
    CHECK(result.sweep.series[0].entropy_stdev[0] == 0.0);
    REQUIRE(result.breakdown_snr_db.has_value());
}

TEST_CASE("battery on two identical opposite-labeled series scores one half") {
    const double pi = 3.14159265358979323846;
    const TimeSeries ts = sine_series((100.0 + 26.0 + 5.0) / 50.0, 50.0, pi);
    BatterySeries a{ts, Regime::periodic, 26, 2, 10};
    BatterySeries b{ts, Regime::chaotic, 26, 2, 10};
    const BatteryResult result =
        battery({a, b}, SymbolMethod::coarse, DistanceKind::unweighted_shortest, 10, 1);
    CHECK(result.accuracy_mean == 0.5);
    CHECK(result.accuracy_stdev == 0.0);
    CHECK(result.bottleneck[1] == 0.0);
}

TEST_CASE("battery skips failing series and reports them") {
    const double pi = 3.14159265358979323846;
    const TimeSeries good = sine_series((100.0 + 26.0 + 5.0) / 50.0, 50.0, pi);
    const TimeSeries faster = sine_series((100.0 + 26.0 + 5.0) / 50.0, 50.0, 2.0 * pi);
    TimeSeries flat{std::vector<double>(200, 1.0), 50.0, "flat"};
    BatterySeries a{good, Regime::periodic, 26, 2, 10};
    BatterySeries b{faster, Regime::chaotic, 13, 2, 10};
    BatterySeries c{flat, Regime::chaotic, 26, 2, 10};
    const BatteryResult result =
        battery({a, b, c}, SymbolMethod::coarse, DistanceKind::unweighted_shortest, 5, 1);
    CHECK(result.n == 2);
    REQUIRE(result.skipped.size() == 1);
    CHECK(result.skipped[0].find("flat") != std::string::npos);
}
