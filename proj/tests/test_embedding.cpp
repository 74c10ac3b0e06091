#include <doctest.h>

#include <cmath>
#include <random>

#include "dynstate/embedding.hpp"
#include "dynstate/signals.hpp"

using namespace dynstate;

namespace {

TimeSeries series(std::vector<double> xs, double fs = 1.0) { return {std::move(xs), fs, ""}; }

// Shared slow fixture: the periodic/chaotic pair at the reference settings.
const TimeSeries& rossler(bool chaotic) {
    static const TimeSeries periodic = [] {
        SystemSpec spec;
        spec.name = "rossler";
        spec.parameters = {{"a", 0.1}, {"b", 0.2}, {"c", 14.0}};
        spec.initial_state = {-0.4, 0.6, 1.0};
        return simulate(spec, 1000.0, 22.0, 0.77);
    }();
    static const TimeSeries chaotic_ts = [] {
        SystemSpec spec;
        spec.name = "rossler";
        spec.parameters = {{"a", 0.15}, {"b", 0.2}, {"c", 14.0}};
        spec.initial_state = {-0.4, 0.6, 1.0};
        spec.regime = Regime::chaotic;
        return simulate(spec, 1000.0, 22.0, 0.77);
    }();
    return chaotic ? chaotic_ts : periodic;
}

} // namespace

TEST_CASE("delay embedding basic layouts") {
    const Embedding e1 = delay_embed(series({1, 2, 3, 4, 5}), 1, 2);
    REQUIRE(e1.count() == 4);
    CHECK(e1.vec(0)[0] == 1.0);
    CHECK(e1.vec(0)[1] == 2.0);
    CHECK(e1.vec(3)[0] == 4.0);
    CHECK(e1.vec(3)[1] == 5.0);

    const Embedding e2 = delay_embed(series({1, 2, 3, 4, 5}), 2, 2);
    REQUIRE(e2.count() == 3);
    CHECK(e2.vec(0)[0] == 1.0);
    CHECK(e2.vec(0)[1] == 3.0);
    CHECK(e2.vec(2)[0] == 3.0);
    CHECK(e2.vec(2)[1] == 5.0);

    CHECK(e2.source_min() == 1.0);
    CHECK(e2.source_max() == 5.0);
}

TEST_CASE("embedding rejects too-short signals") {
    CHECK_THROWS_AS(delay_embed(series({1, 2}), 2, 2), validation_error);
    CHECK_THROWS_AS(delay_embed(series({1, 2, 3, 4}), 1, 5), validation_error);
    // exactly one vector is still legal
    CHECK(delay_embed(series({1, 2, 3}), 2, 2).count() == 1);
}

TEST_CASE("reconstruction identity: column zero reproduces the signal") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    std::vector<double> xs(400);
    for (double& x : xs) x = value(rng);
    const TimeSeries ts = series(xs);
    for (const auto [tau, dim] : {std::pair{1, 2}, {3, 4}, {7, 3}}) {
        const Embedding emb = delay_embed(ts, tau, dim);
        REQUIRE(emb.count() == xs.size() - static_cast<std::size_t>(tau * (dim - 1)));
        for (std::size_t i = 0; i < emb.count(); ++i) {
            REQUIRE(emb.vec(i)[0] == xs[i]);
            for (int j = 0; j < dim; ++j)
                REQUIRE(emb.vec(i)[static_cast<std::size_t>(j)] ==
                        xs[i + static_cast<std::size_t>(j * tau)]);
        }
    }
}

TEST_CASE("hyperdiagonal distance worked values") {
    auto embed_of = [](std::vector<double> flat, int dim) {
        const std::size_t count = flat.size() / static_cast<std::size_t>(dim);
        return Embedding(std::move(flat), count, dim, 1, -10.0, 10.0);
    };
    const auto diag = hyperdiagonal_distance(embed_of({3.0, 3.0, 3.0}, 3));
    CHECK(diag[0] == doctest::Approx(0.0).epsilon(1e-12));

    const auto ortho = hyperdiagonal_distance(embed_of({1.0, -1.0}, 2));
    CHECK(ortho[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const auto unit = hyperdiagonal_distance(embed_of({1.0, 0.0, 0.0}, 3));
    CHECK(unit[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("hyperdiagonal distance invariances") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 4);
        std::vector<double> v(static_cast<std::size_t>(dim));
        for (double& c : v) c = value(rng);
        const double shift = value(rng);
        std::vector<double> shifted = v;
        for (double& c : shifted) c += shift;

        auto dist_of = [dim](std::vector<double> data) {
            return hyperdiagonal_distance(Embedding(std::move(data), 1, dim, 1, -100.0, 100.0))[0];
        };
        CHECK(dist_of(v) == doctest::Approx(dist_of(shifted)).epsilon(1e-9));

        // scaling acts linearly on the orthogonal component
        std::vector<double> doubled = v;
        for (double& c : doubled) c *= 2.0;
        CHECK(dist_of(doubled) == doctest::Approx(2.0 * dist_of(v)).epsilon(1e-9));
    }
}

TEST_CASE("white noise has no prominent entropy peak") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> xs(4000);
    for (double& x : xs) x = gauss(rng);
    const DelaySelection sel = select_delay_mpe(series(xs), 3, 60);
    CHECK(sel.no_prominent_peak);
    CHECK(sel.tau == 30);
}

TEST_CASE("mpe delay selection is deterministic") {
    const TimeSeries& ts = rossler(false);
    const DelaySelection a = select_delay_mpe(ts);
    const DelaySelection b = select_delay_mpe(ts);
    CHECK(a.tau == b.tau);
    CHECK_FALSE(a.no_prominent_peak);
}

TEST_CASE("mpe delay for the reference periodic system lands near 43") {
    const DelaySelection sel = select_delay_mpe(rossler(false));
    CHECK_FALSE(sel.no_prominent_peak);
    CHECK(sel.tau >= 35);
    CHECK(sel.tau <= 51);
}

TEST_CASE("mpe delay tracks the sampling rate (calibrated tau = 50)") {
    // Same dynamics sampled so the expected delay scales to 50: fs such that
    // one mean orbit spans ~150 samples.
    SystemSpec spec;
    spec.name = "rossler";
    spec.parameters = {{"a", 0.1}, {"b", 0.2}, {"c", 14.0}};
    spec.initial_state = {-0.4, 0.6, 1.0};
    const TimeSeries ts = simulate(spec, 800.0, 22.0 * 50.0 / 43.0, 0.8);
    const DelaySelection sel = select_delay_mpe(ts);
    CHECK_FALSE(sel.no_prominent_peak);
    CHECK(sel.tau >= 42);
    CHECK(sel.tau <= 58);
}

TEST_CASE("fnn dimension: planar loop wants 2, returned 3") {
    const TimeSeries ts = sine_series(8.0, 50.0, 3.14159265358979323846);
    CHECK(select_dim_fnn(ts, 26, 6) == 3);
}

TEST_CASE("fnn dimension unfolds the chaotic attractor at 4") {
    // the chaotic trace needs three coordinates before neighbors stop lying,
    // and the selector adds one
    CHECK(select_dim_fnn(rossler(true), 43, 6) == 4);
    // the periodic orbit is one-dimensional and settles earlier
    CHECK(select_dim_fnn(rossler(false), 43, 6) == 3);
}

TEST_CASE("fnn rejects constant signals") {
    CHECK_THROWS_AS(select_dim_fnn(series(std::vector<double>(100, 1.0)), 2, 4), compute_error);
}
