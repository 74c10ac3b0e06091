#include "dynstate/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "dynstate/graphdist.hpp"
#include "dynstate/parallel.hpp"

namespace dynstate {

PersistenceDiagram run_pipeline(const TimeSeries& ts, const PipelineParams& params) {
    const Embedding emb = delay_embed(ts, params.tau, params.dim);
    const SymbolSequence seq = symbolize(emb, params.method, params.bins);
    const TransitionNetwork net = build_network(seq);
    const DissimilarityMatrix d = node_distance_matrix(net, params.distance, params.diffusion_t);
    return compute_diagrams(d);
}

std::vector<std::array<double, 2>> mds_2d(const std::vector<double>& dist, std::size_t n) {
    if (dist.size() != n * n) throw validation_error("mds_2d: matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i * n + i] != 0.0) throw validation_error("mds_2d: nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist[i * n + j] != dist[j * n + i])
                throw validation_error("mds_2d: asymmetric input");
    }

    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd sq(ni, ni);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist[i * n + j];
            sq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d * d;
        }

    const Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(ni, ni) - Eigen::MatrixXd::Constant(ni, ni, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd gram = -0.5 * centering * sq * centering;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw compute_error("mds_2d: eigendecomposition failed");

    std::vector<std::array<double, 2>> out(n, {0.0, 0.0});
    // Eigenvalues come back ascending; use the top two.
    for (int axis = 0; axis < 2; ++axis) {
        const Eigen::Index col = ni - 1 - axis;
        if (col < 0) break;
        const double scale = std::sqrt(std::max(0.0, solver.eigenvalues()(col)));
        Eigen::VectorXd coord = solver.eigenvectors().col(col) * scale;
        for (Eigen::Index i = 0; i < ni; ++i) {
            if (coord(i) != 0.0) {
                if (coord(i) < 0.0) coord = -coord;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out[i][axis] = coord(static_cast<Eigen::Index>(i));
    }
    return out;
}

double RbfSvmModel::decision(double x, double y) const {
    double acc = bias;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (alpha[i] == 0.0) continue;
        const double dx = points[i][0] - x;
        const double dy = points[i][1] - y;
        acc += alpha[i] * labels[i] * std::exp(-gamma * (dx * dx + dy * dy));
    }
    return acc;
}

namespace {

double coordinate_variance(const std::vector<std::array<double, 2>>& points) {
    double mean = 0.0;
    for (const auto& p : points) mean += p[0] + p[1];
    mean /= static_cast<double>(2 * points.size());
    double var = 0.0;
    for (const auto& p : points) {
        var += (p[0] - mean) * (p[0] - mean);
        var += (p[1] - mean) * (p[1] - mean);
    }
    return var / static_cast<double>(2 * points.size());
}

} // namespace

// Platt-style SMO with randomized second-index choice; C = 1.
RbfSvmModel svm_rbf_train(const std::vector<std::array<double, 2>>& points,
                          const std::vector<int>& labels, std::uint64_t seed) {
    const std::size_t n = points.size();
    if (n != labels.size()) throw validation_error("svm: points/labels size mismatch");
    bool pos = false, neg = false;
    for (int y : labels) {
        if (y == 1) pos = true;
        else if (y == -1) neg = true;
        else throw validation_error("svm: labels must be +/-1");
    }
    if (!pos || !neg) throw validation_error("svm: degenerate single-class input");

    const double var = coordinate_variance(points);
    RbfSvmModel model;
    model.points = points;
    model.labels = labels;
    model.gamma = var > 0.0 ? 1.0 / (2.0 * var) : 1.0;
    model.alpha.assign(n, 0.0);

    std::vector<double> kernel(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = points[i][0] - points[j][0];
            const double dy = points[i][1] - points[j][1];
            kernel[i * n + j] = std::exp(-model.gamma * (dx * dx + dy * dy));
        }

    constexpr double C = 1.0;
    constexpr double tol = 1e-4;
    constexpr int max_stale_sweeps = 3;
    const int max_total_sweeps = 2000;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    auto decision_on = [&](std::size_t i) {
        double acc = model.bias;
        for (std::size_t k = 0; k < n; ++k)
            if (model.alpha[k] != 0.0) acc += model.alpha[k] * labels[k] * kernel[k * n + i];
        return acc;
    };

    int stale = 0;
    for (int sweep = 0; sweep < max_total_sweeps && stale < max_stale_sweeps; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        int changed = 0;
        for (const std::size_t i : order) {
            const double err_i = decision_on(i) - labels[i];
            const bool violates = (labels[i] * err_i < -tol && model.alpha[i] < C) ||
                                  (labels[i] * err_i > tol && model.alpha[i] > 0.0);
            if (!violates) continue;

            std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
            if (j >= i) ++j;
            const double err_j = decision_on(j) - labels[j];

            const double alpha_i_old = model.alpha[i];
            const double alpha_j_old = model.alpha[j];
            double lo, hi;
            if (labels[i] != labels[j]) {
                lo = std::max(0.0, alpha_j_old - alpha_i_old);
                hi = std::min(C, C + alpha_j_old - alpha_i_old);
            } else {
                lo = std::max(0.0, alpha_i_old + alpha_j_old - C);
                hi = std::min(C, alpha_i_old + alpha_j_old);
            }
            if (lo >= hi) continue;
            const double eta = 2.0 * kernel[i * n + j] - kernel[i * n + i] - kernel[j * n + j];
            if (eta >= 0.0) continue;

            double alpha_j = alpha_j_old - labels[j] * (err_i - err_j) / eta;
            alpha_j = std::clamp(alpha_j, lo, hi);
            if (std::abs(alpha_j - alpha_j_old) < 1e-7) continue;
            const double alpha_i =
                alpha_i_old + labels[i] * labels[j] * (alpha_j_old - alpha_j);

            const double b1 = model.bias - err_i -
                              labels[i] * (alpha_i - alpha_i_old) * kernel[i * n + i] -
                              labels[j] * (alpha_j - alpha_j_old) * kernel[i * n + j];
            const double b2 = model.bias - err_j -
                              labels[i] * (alpha_i - alpha_i_old) * kernel[i * n + j] -
                              labels[j] * (alpha_j - alpha_j_old) * kernel[j * n + j];
            if (alpha_i > 0.0 && alpha_i < C) model.bias = b1;
            else if (alpha_j > 0.0 && alpha_j < C) model.bias = b2;
            else model.bias = 0.5 * (b1 + b2);

            model.alpha[i] = alpha_i;
            model.alpha[j] = alpha_j;
            ++changed;
        }
        stale = changed == 0 ? stale + 1 : 0;
    }
    return model;
}

double svm_rbf_separation(const std::vector<std::array<double, 2>>& points,
                          const std::vector<int>& labels, std::uint64_t seed) {
    const RbfSvmModel model = svm_rbf_train(points, labels, seed);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int predicted = model.decision(points[i][0], points[i][1]) >= 0.0 ? 1 : -1;
        if (predicted == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(points.size());
}

namespace {

struct PointOutcome {
    double entropy = std::numeric_limits<double>::quiet_NaN();
    double max_life = std::numeric_limits<double>::quiet_NaN();
    double seconds = 0.0;
    std::string error;
};

PointOutcome evaluate_point(const TimeSeries& ts, const PipelineParams& params) {
    PointOutcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        const PersistenceDiagram diagram = run_pipeline(ts, params);
        out.entropy = persistent_entropy(diagram.dim1).value;
        out.max_life = max_lifetime(diagram.dim1);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace

SweepResult bin_sweep(const TimeSeries& ts, int tau, int n, int b_lo, int b_hi,
                      DistanceKind distance, int jobs) {
    if (b_lo < 2 || b_hi > 20 || b_lo > b_hi)
        throw validation_error("bin_sweep: bin range must lie within [2, 20]");

    SweepResult result;
    for (int b = b_lo; b <= b_hi; ++b) result.x_values.push_back(b);

    SweepSeries series;
    series.label = ts.label.empty() ? "signal" : ts.label;
    const std::size_t count = result.x_values.size();
    series.entropy.assign(count, 0.0);
    series.entropy_stdev.assign(count, 0.0);
    series.max_lifetime.assign(count, 0.0);
    series.seconds.assign(count, 0.0);
    series.errors.assign(count, "");

    parallel_for(count, jobs, [&](std::size_t idx) {
        PipelineParams params;
        params.tau = tau;
        params.dim = n;
        params.method = SymbolMethod::coarse;
        params.bins = static_cast<int>(result.x_values[idx]);
        params.distance = distance;
        const PointOutcome outcome = evaluate_point(ts, params);
        series.entropy[idx] = outcome.entropy;
        series.max_lifetime[idx] = outcome.max_life;
        series.seconds[idx] = outcome.seconds;
        series.errors[idx] = outcome.error;
    });

    result.series.push_back(std::move(series));
    return result;
}

namespace {

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stdev_of(const std::vector<double>& xs, double mean) {
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

} // namespace

NoiseSweepResult noise_sweep(const TimeSeries& periodic, const TimeSeries& chaotic,
                             const NoiseSweepConfig& config) {
    if (config.snr_db.empty()) throw validation_error("noise_sweep: empty SNR grid");
    if (config.seeds.empty()) throw validation_error("noise_sweep: no seeds");
    for (std::size_t i = 1; i < config.snr_db.size(); ++i) {
        const bool ascending = config.snr_db[1] > config.snr_db[0];
        if (ascending ? config.snr_db[i] <= config.snr_db[i - 1]
                      : config.snr_db[i] >= config.snr_db[i - 1])
            throw validation_error("noise_sweep: SNR grid must be strictly monotone");
    }

    // Work over ascending SNR internally (noisiest first).
    std::vector<double> grid = config.snr_db;
    std::sort(grid.begin(), grid.end());

    const std::size_t points = grid.size();
    const std::size_t seeds = config.seeds.size();
    const std::array<const TimeSeries*, 2> inputs{&periodic, &chaotic};

    // entry layout: regime-major, then grid point, then seed
    std::vector<PointOutcome> outcomes(2 * points * seeds);
    PipelineParams params = config.params;
    params.method = config.method;
    parallel_for(outcomes.size(), config.jobs, [&](std::size_t w) {
        const std::size_t regime = w / (points * seeds);
        const std::size_t point = (w / seeds) % points;
        const std::size_t seed_idx = w % seeds;
        const TimeSeries noisy =
            add_noise_snr(*inputs[regime], grid[point], config.seeds[seed_idx]);
        outcomes[w] = evaluate_point(noisy, params);
    });

    NoiseSweepResult result;
    result.sweep.x_values = grid;
    std::array<SweepSeries, 2> series;
    series[0].label = "periodic";
    series[1].label = "chaotic";
    for (std::size_t r = 0; r < 2; ++r) {
        series[r].entropy.resize(points);
        series[r].entropy_stdev.resize(points);
        series[r].max_lifetime.resize(points);
        series[r].seconds.resize(points);
        series[r].errors.assign(points, "");
        for (std::size_t p = 0; p < points; ++p) {
            std::vector<double> entropies, lifetimes, times;
            for (std::size_t s = 0; s < seeds; ++s) {
                const PointOutcome& o = outcomes[r * points * seeds + p * seeds + s];
                if (!o.error.empty()) {
                    if (series[r].errors[p].empty()) series[r].errors[p] = o.error;
                    continue;
                }
                entropies.push_back(o.entropy);
                lifetimes.push_back(o.max_life);
                times.push_back(o.seconds);
            }
            if (entropies.empty()) {
                series[r].entropy[p] = std::numeric_limits<double>::quiet_NaN();
                series[r].entropy_stdev[p] = std::numeric_limits<double>::quiet_NaN();
                series[r].max_lifetime[p] = std::numeric_limits<double>::quiet_NaN();
                series[r].seconds[p] = 0.0;
                continue;
            }
            const double mean = mean_of(entropies);
            series[r].entropy[p] = mean;
            series[r].entropy_stdev[p] = stdev_of(entropies, mean);
            series[r].max_lifetime[p] = mean_of(lifetimes);
            series[r].seconds[p] = mean_of(times);
        }
    }

    // Breakdown: smallest grid SNR from which separation holds monotonically
    // up through the cleanest point.
    std::optional<double> breakdown;
    for (std::size_t p = points; p-- > 0;) {
        const double per_lo = series[0].entropy[p] - series[0].entropy_stdev[p];
        const double per_hi = series[0].entropy[p] + series[0].entropy_stdev[p];
        const double cha_lo = series[1].entropy[p] - series[1].entropy_stdev[p];
        const double cha_hi = series[1].entropy[p] + series[1].entropy_stdev[p];
        const bool disjoint = std::isfinite(per_lo) && std::isfinite(cha_lo) &&
                              (per_hi < cha_lo || cha_hi < per_lo);
        if (!disjoint) break;
        breakdown = grid[p];
    }
    result.breakdown_snr_db = breakdown;
    result.sweep.series.assign(series.begin(), series.end());
    return result;
}

BatteryResult battery(const std::vector<BatterySeries>& dataset, SymbolMethod network_kind,
                      DistanceKind distance_kind, int seed_count, int jobs, int diffusion_t) {
    if (dataset.empty()) throw validation_error("battery: empty dataset");
    if (seed_count < 1) throw validation_error("battery: seed_count must be >= 1");

    struct SeriesOutcome {
        std::vector<PersistencePair> dim1;
        std::string error;
    };
    std::vector<SeriesOutcome> outcomes(dataset.size());
    parallel_for(dataset.size(), jobs, [&](std::size_t i) {
        PipelineParams params;
        params.tau = dataset[i].tau;
        params.dim = dataset[i].dim;
        params.method = network_kind;
        params.bins = dataset[i].bins;
        params.distance = distance_kind;
        params.diffusion_t = diffusion_t;
        try {
            outcomes[i].dim1 = run_pipeline(dataset[i].ts, params).dim1;
        } catch (const std::exception& e) {
            outcomes[i].error = e.what();
        }
    });

    BatteryResult result;
    std::vector<std::vector<PersistencePair>> diagrams;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (!outcomes[i].error.empty()) {
            result.skipped.push_back(dataset[i].ts.label + ": " + outcomes[i].error);
            continue;
        }
        diagrams.push_back(std::move(outcomes[i].dim1));
        result.embedding.labels.push_back(dataset[i].regime);
    }
    if (diagrams.size() < 2) throw compute_error("battery: fewer than 2 series survived");

    result.n = diagrams.size();
    result.bottleneck = bottleneck_matrix(diagrams, jobs);
    result.embedding.points = mds_2d(result.bottleneck, result.n);
    result.embedding.network_kind = network_kind;
    result.embedding.distance_kind = distance_kind;

    std::vector<int> labels;
    labels.reserve(result.n);
    for (const Regime r : result.embedding.labels)
        labels.push_back(r == Regime::chaotic ? 1 : -1);

    result.accuracies.resize(static_cast<std::size_t>(seed_count));
    parallel_for(static_cast<std::size_t>(seed_count), jobs, [&](std::size_t s) {
        result.accuracies[s] =
            svm_rbf_separation(result.embedding.points, labels, static_cast<std::uint64_t>(s + 1));
    });
    result.accuracy_mean = mean_of(result.accuracies);
    result.accuracy_stdev = stdev_of(result.accuracies, result.accuracy_mean);
    return result;
}

} // namespace dynstate
