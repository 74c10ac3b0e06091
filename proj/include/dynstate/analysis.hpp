#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dynstate/diagstats.hpp"
#include "dynstate/networks.hpp"
#include "dynstate/signals.hpp"

namespace dynstate {

/// Everything needed to take a signal to a persistence diagram.
struct PipelineParams {
    int tau = 1;
    int dim = 2;
    SymbolMethod method = SymbolMethod::coarse;
    int bins = 12;                                            // coarse only
    DistanceKind distance = DistanceKind::unweighted_shortest;
    int diffusion_t = 0; // <= 0 picks the default
};

PersistenceDiagram run_pipeline(const TimeSeries& ts, const PipelineParams& params);

/// Classical (Torgerson) MDS to two dimensions. Negative eigenvalues clamp
/// to zero; each axis is flipped so its first nonzero coordinate is positive.
std::vector<std::array<double, 2>> mds_2d(const std::vector<double>& dist, std::size_t n);

struct RbfSvmModel {
    std::vector<std::array<double, 2>> points;
    std::vector<int> labels;
    std::vector<double> alpha;
    double bias = 0.0;
    double gamma = 1.0;

    double decision(double x, double y) const;
};

/// Soft-margin RBF SVM trained by SMO on all points. labels are +/-1.
/// C = 1, gamma = 1/(2 * variance of the flattened coordinates); the seed
/// shuffles SMO working-pair selection only.
RbfSvmModel svm_rbf_train(const std::vector<std::array<double, 2>>& points,
                          const std::vector<int>& labels, std::uint64_t seed);

/// Training-set accuracy of the fitted model (separation score, not held-out
/// classification).
double svm_rbf_separation(const std::vector<std::array<double, 2>>& points,
                          const std::vector<int>& labels, std::uint64_t seed);

struct LabeledEmbedding2D {
    std::vector<std::array<double, 2>> points;
    std::vector<Regime> labels;
    SymbolMethod network_kind = SymbolMethod::coarse;
    DistanceKind distance_kind = DistanceKind::unweighted_shortest;
};

struct SweepSeries {
    std::string label;
    std::vector<double> entropy;
    std::vector<double> entropy_stdev; // zero when a single evaluation per point
    std::vector<double> max_lifetime;
    std::vector<double> seconds;
    std::vector<std::string> errors; // empty string = point computed cleanly
};

struct SweepResult {
    std::vector<double> x_values; // bins or SNR dB, strictly monotone
    std::vector<SweepSeries> series;
};

/// Appendix-style bin sweep: one CGSSN pipeline per b in [b_lo, b_hi].
SweepResult bin_sweep(const TimeSeries& ts, int tau, int n, int b_lo, int b_hi,
                      DistanceKind distance, int jobs = 0);

struct NoiseSweepConfig {
    std::vector<double> snr_db; // monotone
    std::vector<std::uint64_t> seeds;
    SymbolMethod method = SymbolMethod::coarse;
    PipelineParams params; // tau/dim/bins/distance applied to both regimes
    int jobs = 0;
};

struct NoiseSweepResult {
    SweepResult sweep; // series "periodic" and "chaotic", mean +/- stdev per SNR
    /// Smallest grid SNR from which the periodic and chaotic mean +/- 1 stdev
    /// bands stay disjoint up through the cleanest point; unset if they
    /// overlap even there.
    std::optional<double> breakdown_snr_db;
};

NoiseSweepResult noise_sweep(const TimeSeries& periodic, const TimeSeries& chaotic,
                             const NoiseSweepConfig& config);

struct BatterySeries {
    TimeSeries ts;
    Regime regime = Regime::periodic;
    int tau = 1;
    int dim = 4;
    int bins = 12; // coarse only
};

struct BatteryResult {
    std::vector<double> bottleneck; // n x n over the series that succeeded
    std::size_t n = 0;
    LabeledEmbedding2D embedding;
    std::vector<double> accuracies; // one per seed
    double accuracy_mean = 0.0;
    double accuracy_stdev = 0.0;
    std::vector<std::string> skipped; // per-series failure log
};

/// Full pipeline per series -> bottleneck matrix -> MDS -> SVM separation
/// over seeds 1..seed_count.
BatteryResult battery(const std::vector<BatterySeries>& dataset, SymbolMethod network_kind,
                      DistanceKind distance_kind, int seed_count = 100, int jobs = 0,
                      int diffusion_t = 0);

} // namespace dynstate
