#include "dynstate/signals.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dynstate {

std::string to_string(Regime r) {
    return r == Regime::periodic ? "periodic" : "chaotic";
}

Regime parse_regime(const std::string& s) {
    if (s == "periodic") return Regime::periodic;
    if (s == "chaotic") return Regime::chaotic;
    throw validation_error("unknown regime '" + s + "' (expected periodic|chaotic)");
}

namespace {

struct SystemDef {
    int dim;
    std::vector<std::string> param_names;
    // rhs(t, params, state, deriv)
    std::function<void(double, const double*, const double*, double*)> rhs;
};

const std::map<std::string, SystemDef>& system_registry() {
    static const std::map<std::string, SystemDef> reg = {
        {"rossler",
         {3,
          {"a", "b", "c"},
          [](double, const double* p, const double* s, double* d) {
              d[0] = -s[1] - s[2];
              d[1] = s[0] + p[0] * s[1];
              d[2] = p[1] + s[2] * (s[0] - p[2]);
          }}},
        {"lorenz",
         {3,
          {"beta", "rho", "sigma"},
          [](double, const double* p, const double* s, double* d) {
              d[0] = p[2] * (s[1] - s[0]);
              d[1] = s[0] * (p[1] - s[2]) - s[1];
              d[2] = s[0] * s[1] - p[0] * s[2];
          }}},
        {"vanderpol",
         {2,
          {"amp", "mu", "omega"},
          [](double t, const double* p, const double* s, double* d) {
              d[0] = s[1];
              d[1] = p[1] * (1.0 - s[0] * s[0]) * s[1] - s[0] + p[0] * std::sin(p[2] * t);
          }}},
        {"linear",
         {1,
          {"rate"},
          [](double, const double* p, const double* s, double* d) { d[0] = p[0] * s[0]; }}},
    };
    return reg;
}

std::vector<double> ordered_params(const SystemDef& def, const SystemSpec& spec) {
    std::vector<double> out;
    out.reserve(def.param_names.size());
    for (const auto& name : def.param_names) {
        auto it = spec.parameters.find(name);
        if (it == spec.parameters.end())
            throw validation_error("system '" + spec.name + "' missing parameter '" + name + "'");
        out.push_back(it->second);
    }
    for (const auto& [k, v] : spec.parameters) {
        (void)v;
        if (std::find(def.param_names.begin(), def.param_names.end(), k) == def.param_names.end())
            throw validation_error("system '" + spec.name + "' has no parameter '" + k + "'");
    }
    return out;
}

} // namespace

std::vector<std::string> registered_systems() {
    std::vector<std::string> names;
    for (const auto& [k, v] : system_registry()) {
        (void)v;
        names.push_back(k);
    }
    return names;
}

TimeSeries simulate(const SystemSpec& spec, double duration_s, double sample_rate,
                    double discard_fraction) {
    if (duration_s <= 0.0) throw validation_error("duration_s must be > 0");
    if (sample_rate <= 0.0) throw validation_error("sample_rate must be > 0");
    if (discard_fraction < 0.0 || discard_fraction >= 1.0)
        throw validation_error("discard_fraction must lie in [0, 1)");
    auto it = system_registry().find(spec.name);
    if (it == system_registry().end())
        throw validation_error("unknown system '" + spec.name + "'");
    const SystemDef& def = it->second;
    if (static_cast<int>(spec.initial_state.size()) != def.dim)
        throw validation_error("system '" + spec.name + "' expects a " +
                               std::to_string(def.dim) + "-dimensional initial state");
    const std::vector<double> params = ordered_params(def, spec);

    const auto total = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
    if (total < 2) throw validation_error("duration too short for the requested sample rate");

    const double h = 1.0 / sample_rate;
    const int dim = def.dim;
    std::vector<double> y(spec.initial_state);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    std::vector<double> xs;
    xs.reserve(total);
    double t = 0.0;
    for (std::size_t step = 0; step < total; ++step) {
        xs.push_back(y[0]);
        def.rhs(t, params.data(), y.data(), k1.data());
        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        def.rhs(t + 0.5 * h, params.data(), tmp.data(), k2.data());
        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        def.rhs(t + 0.5 * h, params.data(), tmp.data(), k3.data());
        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
        def.rhs(t + h, params.data(), tmp.data(), k4.data());
        for (int i = 0; i < dim; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;
        for (int i = 0; i < dim; ++i) {
            if (!std::isfinite(y[i])) {
                std::ostringstream msg;
                msg << "trajectory of '" << spec.name << "' diverged at t=" << t << " s";
                throw compute_error(msg.str());
            }
        }
    }

    const auto drop = static_cast<std::size_t>(std::llround(discard_fraction * static_cast<double>(total)));
    if (total - drop < 2) throw validation_error("discard_fraction leaves fewer than 2 samples");
    TimeSeries out;
    out.samples.assign(xs.begin() + static_cast<std::ptrdiff_t>(drop), xs.end());
    out.sample_rate = sample_rate;
    out.label = spec.name + "-" + to_string(spec.regime);
    return out;
}

TimeSeries ingest_csv(const std::string& path, double sample_rate, std::size_t column) {
    if (sample_rate <= 0.0) throw validation_error("sample_rate must be > 0");
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open '" + path + "'");

    TimeSeries out;
    out.sample_rate = sample_rate;
    out.label = path;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t start = 0;
        std::string cell;
        for (std::size_t c = 0;; ++c) {
            const std::size_t comma = line.find(',', start);
            cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (c == column) break;
            if (comma == std::string::npos) {
                throw compute_error("row " + std::to_string(row) + ": no column " +
                                    std::to_string(column));
            }
            start = comma + 1;
        }
        const auto first = cell.find_first_not_of(" \t");
        if (first == std::string::npos)
            throw compute_error("row " + std::to_string(row) + ": empty cell");
        const auto last = cell.find_last_not_of(" \t");
        cell = cell.substr(first, last - first + 1);
        double value = 0.0;
        const char* begin = cell.data();
        const char* end = cell.data() + cell.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end)
            throw compute_error("row " + std::to_string(row) + ": cannot parse '" + cell + "'");
        if (!std::isfinite(value))
            throw compute_error("row " + std::to_string(row) + ": non-finite value");
        out.samples.push_back(value);
    }
    if (out.samples.size() < 2)
        throw compute_error("'" + path + "' holds fewer than 2 numeric rows");
    return out;
}

double rms(const TimeSeries& ts) {
    if (ts.samples.empty()) throw validation_error("rms of an empty series");
    double acc = 0.0;
    for (double x : ts.samples) acc += x * x;
    return std::sqrt(acc / static_cast<double>(ts.samples.size()));
}

TimeSeries add_noise_snr(const TimeSeries& ts, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0) return ts; // no-noise sentinel
    const double signal_rms = rms(ts);
    if (signal_rms <= 0.0) throw compute_error("add_noise_snr: zero-RMS input signal");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(ts.samples.size());
    double acc = 0.0;
    for (double& v : noise) {
        v = gauss(rng);
        acc += v * v;
    }
    const double realized_rms = std::sqrt(acc / static_cast<double>(noise.size()));
    if (realized_rms == 0.0) throw compute_error("add_noise_snr: degenerate noise draw");
    // Scale by the realized RMS so the measured SNR matches snr_db exactly.
    const double target_rms = signal_rms / std::pow(10.0, snr_db / 20.0);
    const double scale = target_rms / realized_rms;

    TimeSeries out = ts;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += scale * noise[i];
    return out;
}

TimeSeries sine_series(double duration_s, double sample_rate, double omega) {
    if (duration_s <= 0.0 || sample_rate <= 0.0)
        throw validation_error("sine_series needs positive duration and sample rate");
    const auto total = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
    TimeSeries out;
    out.sample_rate = sample_rate;
    out.label = "sine";
    out.samples.resize(total);
    for (std::size_t k = 0; k < total; ++k)
        out.samples[k] = std::sin(omega * static_cast<double>(k) / sample_rate);
    return out;
}

std::map<std::string, SystemPreset> load_presets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open preset file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("preset file '" + path + "': " + e.what());
    }

    std::map<std::string, SystemPreset> out;
    for (const auto& [name, entry] : doc.items()) {
        SystemPreset p;
        p.spec.name = entry.at("system").get<std::string>();
        p.spec.regime = parse_regime(entry.at("regime").get<std::string>());
        for (const auto& [k, v] : entry.at("parameters").items())
            p.spec.parameters[k] = v.get<double>();
        p.spec.initial_state = entry.at("initial_state").get<std::vector<double>>();
        p.sample_rate = entry.at("sample_rate").get<double>();
        p.duration_s = entry.at("duration_s").get<double>();
        p.discard_fraction = entry.at("discard_fraction").get<double>();
        p.tau = entry.at("tau").get<int>();
        if (entry.contains("opn_dim")) p.opn_dim = entry.at("opn_dim").get<int>();
        if (entry.contains("cgssn_dim")) p.cgssn_dim = entry.at("cgssn_dim").get<int>();
        if (entry.contains("bins")) p.bins = entry.at("bins").get<int>();
        out.emplace(name, std::move(p));
    }
    return out;
}

TimeSeries simulate_preset(const SystemPreset& preset) {
    return simulate(preset.spec, preset.duration_s, preset.sample_rate, preset.discard_fraction);
}

} // namespace dynstate
