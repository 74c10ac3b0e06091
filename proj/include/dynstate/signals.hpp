#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dynstate/errors.hpp"

namespace dynstate {

/// Uniformly sampled scalar signal.
struct TimeSeries {
    std::vector<double> samples;
    double sample_rate = 0.0; // Hz
    std::string label;

    std::size_t size() const { return samples.size(); }
};

enum class Regime { periodic, chaotic };

std::string to_string(Regime r);
Regime parse_regime(const std::string& s);

/// A registered dynamical system plus the parameter values and initial
/// state to simulate it with.
struct SystemSpec {
    std::string name;
    std::map<std::string, double> parameters;
    std::vector<double> initial_state;
    Regime regime = Regime::periodic;
};

/// Names of the built-in vector fields (rossler, lorenz, vanderpol, linear).
std::vector<std::string> registered_systems();

/// Fixed-step RK4 at step 1/sample_rate. Returns the first state coordinate
/// with the leading discard_fraction of samples removed.
/// Throws compute_error (with the failure time) if the state goes non-finite.
TimeSeries simulate(const SystemSpec& spec, double duration_s, double sample_rate,
                    double discard_fraction);

/// Read one numeric column from a CSV file. Rejects NaN/empty cells with the
/// offending 1-based row number in the error message.
TimeSeries ingest_csv(const std::string& path, double sample_rate, std::size_t column = 0);

double rms(const TimeSeries& ts);

/// Add zero-mean Gaussian noise scaled so the realized SNR (in dB, against the
/// drawn noise vector's own RMS) equals snr_db exactly. snr_db = +infinity is
/// the no-noise sentinel. Deterministic for a fixed seed.
TimeSeries add_noise_snr(const TimeSeries& ts, double snr_db, std::uint64_t seed);

/// Synthetic sinusoid x_k = sin(omega * k / sample_rate).
TimeSeries sine_series(double duration_s, double sample_rate, double omega);

/// Simulation recipe shipped with the repo: system + sampling + embedding
/// parameters that downstream experiments use for this signal.
struct SystemPreset {
    SystemSpec spec;
    double sample_rate = 0.0;
    double duration_s = 0.0;
    double discard_fraction = 0.0;
    int tau = 0;       // embedding delay, samples
    int opn_dim = 7;   // ordinal embedding dimension
    int cgssn_dim = 4; // coarse-grained embedding dimension
    int bins = 12;     // bins per dimension for the coarse grid
};

/// Load named presets from a JSON config (see data/systems.json).
std::map<std::string, SystemPreset> load_presets(const std::string& path);

/// Simulate a named preset from an already-loaded preset table.
TimeSeries simulate_preset(const SystemPreset& preset);

} // namespace dynstate
