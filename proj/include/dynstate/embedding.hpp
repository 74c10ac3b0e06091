#pragma once

#include <span>
#include <vector>

#include "dynstate/signals.hpp"

namespace dynstate {

/// Delay-coordinate reconstruction: count() vectors v_i with
/// v_i[j] = x_{i + j*tau}, stored row-major.
class Embedding {
public:
    Embedding(std::vector<double> data, std::size_t count, int dim, int delay,
              double source_min, double source_max)
        : data_(std::move(data)), count_(count), dim_(dim), delay_(delay),
          source_min_(source_min), source_max_(source_max) {}

    std::size_t count() const { return count_; }
    int dim() const { return dim_; }
    int delay() const { return delay_; }
    double source_min() const { return source_min_; }
    double source_max() const { return source_max_; }

    std::span<const double> vec(std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

private:
    std::vector<double> data_;
    std::size_t count_;
    int dim_;
    int delay_;
    double source_min_;
    double source_max_;
};

Embedding delay_embed(const TimeSeries& ts, int tau, int n);

struct DelaySelection {
    int tau = 0;
    bool no_prominent_peak = false; // flat entropy curve, tau fell back to tau_max/2
};

/// Delay at the first prominent maximum of normalized permutation entropy
/// over tau in [1, tau_max].
DelaySelection select_delay_mpe(const TimeSeries& ts, int n_pe = 3, int tau_max = 100);

/// Smallest dimension with a false-nearest-neighbor fraction under 1%,
/// plus one, capped at n_max. Kennel distance-ratio criterion.
int select_dim_fnn(const TimeSeries& ts, int tau, int n_max = 8, double rtol = 15.0);

/// Euclidean distance from each embedding vector to the line x_1 = ... = x_n.
std::vector<double> hyperdiagonal_distance(const Embedding& emb);

} // namespace dynstate
