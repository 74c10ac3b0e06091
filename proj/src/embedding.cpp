#include "dynstate/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dynstate {

Embedding delay_embed(const TimeSeries& ts, int tau, int n) {
    if (tau < 1) throw validation_error("delay_embed: tau must be >= 1");
    if (n < 2) throw validation_error("delay_embed: dimension must be >= 2");
    const std::size_t span = static_cast<std::size_t>(tau) * static_cast<std::size_t>(n - 1);
    if (ts.samples.size() <= span)
        throw validation_error("signal too short: need L > tau*(n-1) = " + std::to_string(span));

    const std::size_t count = ts.samples.size() - span;
    std::vector<double> data(count * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < count; ++i)
        for (int j = 0; j < n; ++j)
            data[i * n + j] = ts.samples[i + static_cast<std::size_t>(j) * tau];

    const auto [lo, hi] = std::minmax_element(ts.samples.begin(), ts.samples.end());
    return Embedding(std::move(data), count, n, tau, *lo, *hi);
}

namespace {

// Normalized permutation entropy of the ordinal patterns at delay tau.
double permutation_entropy(const std::vector<double>& x, int tau, int n_pe) {
    const std::size_t span = static_cast<std::size_t>(tau) * static_cast<std::size_t>(n_pe - 1);
    const std::size_t count = x.size() - span;

    std::size_t factorial = 1;
    for (int i = 2; i <= n_pe; ++i) factorial *= static_cast<std::size_t>(i);
    std::vector<std::size_t> hist(factorial, 0);

    std::vector<int> order(static_cast<std::size_t>(n_pe));
    for (std::size_t i = 0; i < count; ++i) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return x[i + static_cast<std::size_t>(a) * tau] < x[i + static_cast<std::size_t>(b) * tau];
        });
        // Lehmer code -> pattern index
        std::size_t idx = 0;
        for (int j = 0; j < n_pe; ++j) {
            int smaller = 0;
            for (int k = j + 1; k < n_pe; ++k)
                if (order[k] < order[j]) ++smaller;
            std::size_t f = 1;
            for (int k = 2; k <= n_pe - 1 - j; ++k) f *= static_cast<std::size_t>(k);
            idx += static_cast<std::size_t>(smaller) * f;
        }
        ++hist[idx];
    }

    double h = 0.0;
    for (std::size_t c : hist) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(count);
        h -= p * std::log2(p);
    }
    return h / std::log2(static_cast<double>(factorial));
}

} // namespace

DelaySelection select_delay_mpe(const TimeSeries& ts, int n_pe, int tau_max) {
    if (tau_max < 2) throw validation_error("select_delay_mpe: tau_max must be >= 2");
    if (n_pe < 2) throw validation_error("select_delay_mpe: n_pe must be >= 2");
    const std::size_t span = static_cast<std::size_t>(tau_max) * static_cast<std::size_t>(n_pe - 1);
    if (ts.samples.size() <= span)
        throw validation_error("signal too short for tau_max=" + std::to_string(tau_max));

    std::vector<double> curve(static_cast<std::size_t>(tau_max) + 1, 0.0);
    for (int tau = 1; tau <= tau_max; ++tau)
        curve[static_cast<std::size_t>(tau)] = permutation_entropy(ts.samples, tau, n_pe);

    const double global_max = *std::max_element(curve.begin() + 1, curve.end());
    const double global_min = *std::min_element(curve.begin() + 1, curve.end());

    // A flat curve (white-noise-like signal) has no usable peak.
    if (global_max - global_min < 0.05)
        return {tau_max / 2, true};

    for (int tau = 2; tau < tau_max; ++tau) {
        const double v = curve[static_cast<std::size_t>(tau)];
        if (v > curve[static_cast<std::size_t>(tau) - 1] &&
            v > curve[static_cast<std::size_t>(tau) + 1] && v >= 0.95 * global_max)
            return {tau, false};
    }
    return {tau_max / 2, true};
}

int select_dim_fnn(const TimeSeries& ts, int tau, int n_max, double rtol) {
    if (n_max < 2) throw validation_error("select_dim_fnn: n_max must be >= 2");
    if (tau < 1) throw validation_error("select_dim_fnn: tau must be >= 1");
    const std::size_t span = static_cast<std::size_t>(tau) * static_cast<std::size_t>(n_max);
    if (ts.samples.size() <= span)
        throw validation_error("signal too short for n_max=" + std::to_string(n_max));

    const auto [lo, hi] = std::minmax_element(ts.samples.begin(), ts.samples.end());
    if (*hi - *lo <= 0.0)
        throw compute_error("select_dim_fnn: degenerate constant signal (zero range)");

    const std::vector<double>& x = ts.samples;
    for (int n = 1; n < n_max; ++n) {
        // Vectors comparable across n and n+1 share the index range below.
        const std::size_t count = x.size() - static_cast<std::size_t>(tau) * static_cast<std::size_t>(n);
        std::size_t false_neighbors = 0;
        std::size_t evaluated = 0;
        for (std::size_t i = 0; i < count; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = count;
            for (std::size_t j = 0; j < count; ++j) {
                if (j == i) continue;
                double d2 = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double diff = x[i + static_cast<std::size_t>(k) * tau] -
                                        x[j + static_cast<std::size_t>(k) * tau];
                    d2 += diff * diff;
                    if (d2 >= best) break;
                }
                if (d2 < best) {
                    best = d2;
                    best_j = j;
                }
            }
            if (best_j == count) continue;
            const double dist = std::sqrt(best);
            const double next_gap =
                std::abs(x[i + static_cast<std::size_t>(n) * tau] -
                         x[best_j + static_cast<std::size_t>(n) * tau]);
            ++evaluated;
            if (dist == 0.0) {
                if (next_gap > 0.0) ++false_neighbors;
                continue;
            }
            if (next_gap / dist > rtol) ++false_neighbors;
        }
        if (evaluated == 0) continue;
        const double fraction =
            static_cast<double>(false_neighbors) / static_cast<double>(evaluated);
        if (fraction < 0.01) return std::min(n + 1, n_max);
    }
    return n_max;
}

std::vector<double> hyperdiagonal_distance(const Embedding& emb) {
    const int n = emb.dim();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> out(emb.count());
    for (std::size_t i = 0; i < emb.count(); ++i) {
        const auto v = emb.vec(i);
        double proj = 0.0;
        for (double c : v) proj += c;
        proj *= inv_sqrt_n;
        double d2 = 0.0;
        for (double c : v) {
            const double r = c - proj * inv_sqrt_n;
            d2 += r * r;
        }
        out[i] = std::sqrt(std::max(0.0, d2));
    }
    return out;
}

} // namespace dynstate
