// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include "dynstate/analysis.hpp"
#include "dynstate/repro.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace dynstate;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool ok, const std::string& what) {
        if (!ok) details_.push_back(what);
    }

    ~Criterion() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const bool ok = details_.empty();
        if (!ok) ++failures;
        std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number_,
                    title_.c_str(), seconds);
        for (const auto& d : details_) std::printf("       - %s\n", d.c_str());
        std::fflush(stdout);
    }

private:
    int number_;
    std::string title_;
    std::vector<std::string> details_;
    std::chrono::steady_clock::time_point start_;
};

std::filesystem::path artifact_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "dynstate-acceptance";
    std::filesystem::remove_all(dir);
    return dir;
}

void run_repro_criterion(int number, const std::string& title, const std::string& name) {
    Criterion c(number, title);
    try {
        const repro::Report report =
            repro::run(name, artifact_dir(), DYNSTATE_DATA_DIR, 0, false);
        for (const auto& check : report.checks)
            c.expect(check.passed, check.name + ": " + check.detail);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// ---- criterion 8 property suites -------------------------------------------

void property_oracle_equivalence(Criterion& c) {
    std::mt19937_64 rng(811);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const DissimilarityMatrix d = testutil::random_matrix(rng, n);
        const PersistenceDiagram mine = compute_diagrams(d);
        const oracle::Diagrams expected = oracle::rips_reduce(d.values, n);
        std::vector<std::pair<double, double>> dim0, dim1;
        for (const auto& p : mine.dim0) dim0.emplace_back(p.birth, p.death);
        for (const auto& p : mine.dim1) dim1.emplace_back(p.birth, p.death);
        std::sort(dim0.begin(), dim0.end());
        std::sort(dim1.begin(), dim1.end());
        if (dim0 != expected.dim0 || dim1 != expected.dim1) {
            c.expect(false, "oracle mismatch at trial " + std::to_string(trial));
            return;
        }
    }
}

void property_c9_cycle(Criterion& c) {
    const std::size_t n = 9;
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            values[i * n + j] = static_cast<double>(std::min(gap, n - gap));
        }
    DissimilarityMatrix d;
    d.n = n;
    d.values = std::move(values);
    const PersistenceDiagram diagram = compute_diagrams(d);
    c.expect(diagram.dim1.size() == 1 && diagram.dim1[0].birth == 1.0 &&
                 diagram.dim1[0].death == 3.0,
             "nine-cycle hop metric should give exactly {(1,3)}");
}

void property_bottleneck_axioms(Criterion& c) {
    std::mt19937_64 rng(821);
    auto random_diagram = [&rng](std::size_t max_points) {
        std::uniform_real_distribution<double> value(0.0, 3.0);
        std::uniform_real_distribution<double> life(0.01, 2.0);
        std::vector<PersistencePair> out(rng() % (max_points + 1));
        for (auto& p : out) {
            p.birth = value(rng);
            p.death = p.birth + life(rng);
        }
        return out;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = random_diagram(5);
        const auto b = random_diagram(5);
        const double ab = bottleneck(a, b);
        if (ab < 0.0 || bottleneck(b, a) != ab || bottleneck(a, a) != 0.0) {
            c.expect(false, "bottleneck axiom violation at trial " + std::to_string(trial));
            return;
        }
        if (trial % 3 == 0) {
            const auto cc = random_diagram(5);
            if (bottleneck(a, cc) > ab + bottleneck(b, cc) + 1e-12) {
                c.expect(false, "bottleneck triangle violation at trial " + std::to_string(trial));
                return;
            }
        }
    }
}

void property_scale_equivariance(Criterion& c) {
    std::mt19937_64 rng(823);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const DissimilarityMatrix base = testutil::random_matrix(rng, n);
        const PersistenceDiagram reference = compute_diagrams(base);
        for (const double alpha : {0.5, 2.0, 10.0}) {
            DissimilarityMatrix scaled = base;
            for (double& v : scaled.values) v *= alpha;
            const PersistenceDiagram got = compute_diagrams(scaled);
            bool ok = got.dim1.size() == reference.dim1.size() &&
                      got.dim0.size() == reference.dim0.size();
            for (std::size_t i = 0; ok && i < got.dim1.size(); ++i)
                ok = got.dim1[i].birth == alpha * reference.dim1[i].birth &&
                     got.dim1[i].death == alpha * reference.dim1[i].death;
            if (!ok) {
                c.expect(false, "diagram scale equivariance failed at alpha " + fmt(alpha));
                return;
            }
        }
        // bottleneck side of the property
        const auto d1 = compute_diagrams(testutil::random_matrix(rng, 2 + rng() % 6)).dim1;
        const double b0 = bottleneck(reference.dim1, d1);
        for (const double alpha : {0.5, 2.0, 10.0}) {
            auto scale = [alpha](std::vector<PersistencePair> d) {
                for (auto& p : d) {
                    p.birth *= alpha;
                    p.death *= alpha;
                }
                return d;
            };
            const double scaled = bottleneck(scale(reference.dim1), scale(d1));
            if (std::abs(scaled - alpha * b0) > 1e-12 * std::max(1.0, alpha * b0)) {
                c.expect(false, "bottleneck scale equivariance failed at alpha " + fmt(alpha));
                return;
            }
        }
    }
}

void property_row_stochastic(Criterion& c) {
    std::mt19937_64 rng(827);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 20;
        const TransitionNetwork net = testutil::random_network(rng, n);
        const std::vector<double> p = transition_matrix(net);
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += p[i * n + j];
            if (std::abs(row - 1.0) > 1e-12) {
                c.expect(false, "row sum off by " + fmt(row - 1.0));
                return;
            }
        }
    }
}

void property_noise_calibration(Criterion& c) {
    std::mt19937_64 rng(829);
    std::uniform_real_distribution<double> snr_of(3.0, 60.0);
    for (int trial = 0; trial < 100; ++trial) {
        TimeSeries ts = sine_series(1.0, 120.0, 1.0 + trial * 0.3);
        for (double& x : ts.samples) x *= 0.5 + 0.01 * trial;
        const double snr = snr_of(rng);
        const TimeSeries noisy = add_noise_snr(ts, snr, 1000 + static_cast<std::uint64_t>(trial));
        TimeSeries residual = ts;
        for (std::size_t i = 0; i < ts.samples.size(); ++i)
            residual.samples[i] = noisy.samples[i] - ts.samples[i];
        const double measured = 20.0 * std::log10(rms(ts) / rms(residual));
        if (std::abs(measured - snr) > 1e-9) {
            c.expect(false, "calibration off by " + fmt(measured - snr) + " dB");
            return;
        }
    }
}

void property_unit_weight_collapse(Criterion& c) {
    std::mt19937_64 rng(839);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 14;
        const TransitionNetwork net = testutil::random_network(rng, n, 1);
        const DissimilarityMatrix hop = unweighted_shortest_path(net);
        const DissimilarityMatrix weighted = weighted_shortest_path(net);
        const DissimilarityMatrix shortest = shortest_weighted_path(net);
        if (weighted.values != hop.values || shortest.values != hop.values) {
            c.expect(false, "distances disagree on a unit-weight graph, trial " +
                                std::to_string(trial));
            return;
        }
    }
}

} // namespace

int main() {
    {
        Criterion c(1, "coarse state digit expansion, worked example");
        const std::vector<double> v{3.5, 5.5, 2.5};
        const auto state = assign_cgss_state({v.data(), 3}, 8, 0.0, 8.0);
        c.expect(state == 172, "expected 172, got " + std::to_string(state));
    }

    run_repro_criterion(2, "four-node toy filtration", "fig4-toy");
    run_repro_criterion(3, "sinusoid worked example (single loop, death 12 +/- 2)",
                        "sine-method-example");
    run_repro_criterion(4, "reference-system entropy bands at paper parameters",
                        "rossler-entropy");
    run_repro_criterion(5, "bin sweep drop inside [10, 13]", "appendixA-binsweep");
    run_repro_criterion(6, "noise-robustness ordering of the two network kinds",
                        "noise-ordering");
    run_repro_criterion(7, "battery orderings and 100% ceilings", "table1-subset");

    {
        Criterion c(8, "property suites");
        property_oracle_equivalence(c);
        property_c9_cycle(c);
        property_bottleneck_axioms(c);
        property_scale_equivariance(c);
        property_row_stochastic(c);
        property_noise_calibration(c);
        property_unit_weight_collapse(c);
    }

    return failures;
}
