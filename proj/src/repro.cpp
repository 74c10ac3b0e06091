#include "dynstate/repro.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "dynstate/analysis.hpp"
#include "dynstate/io.hpp"
#include "dynstate/plot.hpp"

namespace dynstate::repro {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

struct Context {
    std::filesystem::path out;
    std::filesystem::path data;
    int jobs = 0;
    bool plot = false;
    Report report;

    void check(const std::string& name, bool passed, const std::string& detail) {
        report.checks.push_back({name, passed, detail});
    }
    void write(const std::string& file, const std::string& text) const {
        io::write_text(out / file, text);
    }
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

DissimilarityMatrix load_fixture_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open fixture '" + path.string() + "'");
    json doc;
    in >> doc;
    DissimilarityMatrix d;
    d.n = doc.at("n").get<std::size_t>();
    d.values.reserve(d.n * d.n);
    for (const auto& row : doc.at("matrix"))
        for (const auto& cell : row) d.values.push_back(cell.get<double>());
    if (d.values.size() != d.n * d.n)
        throw validation_error("fixture matrix shape mismatch");
    return d;
}

SystemPreset preset_or_throw(const std::map<std::string, SystemPreset>& presets,
                             const std::string& name) {
    auto it = presets.find(name);
    if (it == presets.end()) throw validation_error("preset '" + name + "' not found");
    return it->second;
}

// ---- fig4-toy -------------------------------------------------------------

void run_fig4(Context& ctx) {
    const DissimilarityMatrix d = load_fixture_matrix(ctx.data / "fig4_toy.json");
    const PersistenceDiagram diagram = compute_diagrams(d);
    ctx.write("diagram.json", io::diagram_json(diagram).dump(2) + "\n");

    std::vector<double> deaths;
    for (const auto& p : diagram.dim0) deaths.push_back(p.death);
    std::sort(deaths.begin(), deaths.end());
    const std::vector<double> expected_deaths{0.5, 1.0, 1.0};
    ctx.check("dim0-deaths", deaths == expected_deaths,
              "expected {0.5, 1, 1}, got " + json(deaths).dump());

    const bool dim1_ok = diagram.dim1.size() == 1 && diagram.dim1[0].birth == 1.0 &&
                         diagram.dim1[0].death == 2.0;
    ctx.check("dim1-single-loop", dim1_ok,
              "expected {(1, 2)}, got " + io::diagram_json(diagram)["dim1"].dump());

    ctx.report.summary["dim0_deaths"] = deaths;
    ctx.report.summary["dim1"] = io::diagram_json(diagram)["dim1"];
}

// ---- sine-method-example ---------------------------------------------------

void run_sine(Context& ctx) {
    // One revolution of embedded vectors (100 at tau = 26) plus a short
    // overlap so the loop closes through the boundary cells: 131 samples of
    // sin(pi t) at 50 Hz.
    constexpr int kTau = 26;
    constexpr int kDim = 2;
    constexpr int kBins = 10;
    const TimeSeries ts = sine_series((100.0 + kTau + 5.0) / 50.0, 50.0, kPi);

    const Embedding emb = delay_embed(ts, kTau, kDim);
    const SymbolSequence seq = symbolize(emb, SymbolMethod::coarse, kBins);
    const TransitionNetwork net = build_network(seq);
    const DissimilarityMatrix dist = unweighted_shortest_path(net);
    const PersistenceDiagram diagram = compute_diagrams(dist);

    ctx.write("signal.csv", io::timeseries_csv(ts));
    ctx.write("edges.csv", io::edge_list_csv(net));
    ctx.write("diagram.json", io::diagram_json(diagram).dump(2) + "\n");

    ctx.check("single-loop", diagram.dim1.size() == 1,
              "expected exactly one dim1 pair, got " + std::to_string(diagram.dim1.size()));
    if (diagram.dim1.size() == 1) {
        const auto& p = diagram.dim1[0];
        ctx.check("loop-birth", p.birth == 1.0, "birth " + fmt(p.birth) + ", expected 1");
        ctx.check("loop-death", p.death >= 10.0 && p.death <= 14.0,
                  "death " + fmt(p.death) + ", expected 12 +/- 2");
        ctx.report.summary["birth"] = p.birth;
        ctx.report.summary["death"] = p.death;
    }
    ctx.report.summary["nodes"] = net.node_count();
    ctx.report.summary["edges"] = net.edge_count();
}

// ---- rossler-entropy --------------------------------------------------------

void run_rossler_entropy(Context& ctx) {
    const auto presets = load_presets((ctx.data / "systems.json").string());
    const SystemPreset periodic = preset_or_throw(presets, "rossler-periodic");
    const SystemPreset chaotic = preset_or_throw(presets, "rossler-chaotic");
    const TimeSeries ts_per = simulate_preset(periodic);
    const TimeSeries ts_cha = simulate_preset(chaotic);

    struct Case {
        const char* name;
        const TimeSeries* ts;
        SymbolMethod method;
        int dim;
        double lo, hi; // accepted entropy band
    };
    const std::vector<Case> cases{
        {"cgssn-periodic", &ts_per, SymbolMethod::coarse, periodic.cgssn_dim, 0.0, 0.10},
        {"cgssn-chaotic", &ts_cha, SymbolMethod::coarse, chaotic.cgssn_dim, 0.70, 1.01},
        {"opn-periodic", &ts_per, SymbolMethod::ordinal, periodic.opn_dim, 0.30, 0.70},
        {"opn-chaotic", &ts_cha, SymbolMethod::ordinal, chaotic.opn_dim, 0.75, 1.01},
    };

    for (const Case& c : cases) {
        PipelineParams params;
        params.tau = periodic.tau;
        params.dim = c.dim;
        params.method = c.method;
        params.bins = periodic.bins;
        params.distance = DistanceKind::unweighted_shortest;
        const PersistenceDiagram diagram = run_pipeline(*c.ts, params);
        const double entropy = persistent_entropy(diagram.dim1).value;
        ctx.write(std::string(c.name) + ".diagram.json", io::diagram_json(diagram).dump(2) + "\n");
        ctx.report.summary[c.name] = entropy;
        ctx.check(c.name, entropy >= c.lo && entropy <= c.hi,
                  "E'(D1) = " + fmt(entropy) + ", accepted [" + fmt(c.lo) + ", " + fmt(c.hi) + "]");
    }
}

// ---- appendixA-binsweep ------------------------------------------------------

void run_binsweep(Context& ctx) {
    const auto presets = load_presets((ctx.data / "systems.json").string());
    const SystemPreset periodic = preset_or_throw(presets, "rossler-periodic");

    // This experiment samples the same orbit at 35 Hz (delay rescaled to
    // match): at 22 Hz the sampled strands of the period-3 orbit graze cell
    // boundaries at a few bin counts, which blurs the single-loop regime the
    // sweep is after.
    constexpr double kSampleRate = 35.0;
    constexpr int kTau = 68;
    const TimeSeries ts =
        simulate(periodic.spec, periodic.duration_s, kSampleRate, periodic.discard_fraction);

    const SweepResult sweep = bin_sweep(ts, kTau, periodic.cgssn_dim, 2, 20,
                                        DistanceKind::unweighted_shortest, ctx.jobs);
    ctx.write("sweep.csv", io::sweep_csv(sweep));
    ctx.write("timings.csv", io::sweep_timings_csv(sweep));
    if (ctx.plot) {
        plot::LineSeries entropy{"E'(D1)", sweep.series[0].entropy, {}};
        plot::LineSeries life{"max(L1)", sweep.series[0].max_lifetime, {}};
        ctx.write("sweep.svg",
                  plot::line_chart("Bin sweep, periodic regime", "bins per dimension",
                                   sweep.x_values, {entropy, life}));
    }

    // Smallest b from which E' stays below 0.1 for the rest of the range.
    const auto& entropy = sweep.series[0].entropy;
    int b_star = -1;
    for (std::size_t i = 0; i < entropy.size(); ++i) {
        bool stays = true;
        for (std::size_t j = i; j < entropy.size(); ++j)
            if (!(entropy[j] < 0.1)) {
                stays = false;
                break;
            }
        if (stays) {
            b_star = static_cast<int>(sweep.x_values[i]);
            break;
        }
    }
    ctx.report.summary["b_star"] = b_star;
    ctx.check("entropy-drop", b_star >= 10 && b_star <= 13,
              "E' settles below 0.1 from b = " + std::to_string(b_star) + ", expected within [10, 13]");
    if (b_star > 2) {
        const std::size_t at = static_cast<std::size_t>(b_star - 2);
        const double before = sweep.series[0].max_lifetime[at - 1];
        const double after = sweep.series[0].max_lifetime[at];
        ctx.report.summary["max_lifetime_before"] = before;
        ctx.report.summary["max_lifetime_after"] = after;
        ctx.check("max-lifetime-jump", after > before,
                  "max(L1) " + fmt(before) + " -> " + fmt(after) + " at b*");
    }
}

// ---- noise-ordering -----------------------------------------------------------

void run_noise(Context& ctx) {
    const auto presets = load_presets((ctx.data / "systems.json").string());
    const SystemPreset periodic = preset_or_throw(presets, "rossler-periodic");
    const SystemPreset chaotic = preset_or_throw(presets, "rossler-chaotic");
    const TimeSeries ts_per = simulate_preset(periodic);
    const TimeSeries ts_cha = simulate_preset(chaotic);

    NoiseSweepConfig config;
    config.snr_db = {22.0, 24.0, 26.0, 28.0, 30.0, 32.0, 36.0, 40.0};
    config.seeds = {1, 2, 3, 4, 5};
    config.jobs = ctx.jobs;
    config.params.tau = periodic.tau;
    config.params.distance = DistanceKind::unweighted_shortest;

    config.method = SymbolMethod::coarse;
    config.params.dim = periodic.cgssn_dim;
    config.params.bins = periodic.bins;
    const NoiseSweepResult cgssn = noise_sweep(ts_per, ts_cha, config);

    config.method = SymbolMethod::ordinal;
    config.params.dim = periodic.opn_dim;
    const NoiseSweepResult opn = noise_sweep(ts_per, ts_cha, config);

    ctx.write("cgssn_sweep.csv", io::sweep_csv(cgssn.sweep));
    ctx.write("cgssn_timings.csv", io::sweep_timings_csv(cgssn.sweep));
    ctx.write("opn_sweep.csv", io::sweep_csv(opn.sweep));
    ctx.write("opn_timings.csv", io::sweep_timings_csv(opn.sweep));
    if (ctx.plot) {
        auto chart = [](const NoiseSweepResult& r, const std::string& title) {
            plot::LineSeries per{"periodic", r.sweep.series[0].entropy,
                                 r.sweep.series[0].entropy_stdev};
            plot::LineSeries cha{"chaotic", r.sweep.series[1].entropy,
                                 r.sweep.series[1].entropy_stdev};
            return plot::line_chart(title, "SNR (dB)", r.sweep.x_values, {per, cha});
        };
        ctx.write("cgssn_sweep.svg", chart(cgssn, "Coarse-grained network under noise"));
        ctx.write("opn_sweep.svg", chart(opn, "Ordinal network under noise"));
    }

    const double inf = std::numeric_limits<double>::infinity();
    const double bd_cgssn = cgssn.breakdown_snr_db.value_or(inf);
    const double bd_opn = opn.breakdown_snr_db.value_or(inf);
    ctx.report.summary["cgssn_breakdown_db"] = bd_cgssn;
    ctx.report.summary["opn_breakdown_db"] = bd_opn;

    ctx.check("cgssn-breakdown", bd_cgssn <= 27.0,
              "coarse-grained breakdown " + fmt(bd_cgssn) + " dB, expected <= 27");
    ctx.check("opn-breakdown", bd_opn >= 28.0,
              "ordinal breakdown " + fmt(bd_opn) + " dB, expected >= 28");
    ctx.check("ordering", bd_cgssn < bd_opn,
              "coarse-grained (" + fmt(bd_cgssn) + ") should break down below ordinal (" +
                  fmt(bd_opn) + ")");
}

// ---- table1-subset --------------------------------------------------------------

void run_table1(Context& ctx) {
    const auto presets = load_presets((ctx.data / "systems.json").string());

    const std::vector<DistanceKind> distances{
        DistanceKind::unweighted_shortest, DistanceKind::shortest_weighted,
        DistanceKind::weighted_shortest, DistanceKind::diffusion};

    auto dataset_for = [&](SymbolMethod kind) {
        std::vector<BatterySeries> dataset;
        for (const auto& [name, preset] : presets) {
            BatterySeries series;
            series.ts = simulate_preset(preset);
            series.ts.label = name;
            series.regime = preset.spec.regime;
            series.tau = preset.tau;
            series.dim = kind == SymbolMethod::coarse ? preset.cgssn_dim : preset.opn_dim;
            series.bins = preset.bins;
            dataset.push_back(std::move(series));
        }
        return dataset;
    };
    const std::vector<BatterySeries> coarse_set = dataset_for(SymbolMethod::coarse);
    const std::vector<BatterySeries> ordinal_set = dataset_for(SymbolMethod::ordinal);

    // One walk length for every network: the per-network default mixes scales
    // across systems and blurs the periodic cluster.
    constexpr int kDiffusionT = 4;

    std::string table = "network,distance,accuracy_mean,accuracy_stdev\n";
    std::map<DistanceKind, std::pair<BatteryResult, BatteryResult>> results;
    for (const DistanceKind distance : distances) {
        BatteryResult cgssn =
            battery(coarse_set, SymbolMethod::coarse, distance, 100, ctx.jobs, kDiffusionT);
        BatteryResult opn =
            battery(ordinal_set, SymbolMethod::ordinal, distance, 100, ctx.jobs, kDiffusionT);
        table += "cgssn," + to_string(distance) + ',' + fmt(cgssn.accuracy_mean) + ',' +
                 fmt(cgssn.accuracy_stdev) + '\n';
        table += "opn," + to_string(distance) + ',' + fmt(opn.accuracy_mean) + ',' +
                 fmt(opn.accuracy_stdev) + '\n';

        ctx.write("mds_cgssn_" + to_string(distance) + ".json",
                  io::embedding2d_json(cgssn.embedding).dump(2) + "\n");
        ctx.write("mds_opn_" + to_string(distance) + ".json",
                  io::embedding2d_json(opn.embedding).dump(2) + "\n");
        if (ctx.plot) {
            auto scatter = [](const BatteryResult& r, const std::string& title) {
                std::vector<int> labels;
                for (const Regime reg : r.embedding.labels)
                    labels.push_back(reg == Regime::chaotic ? 1 : -1);
                const RbfSvmModel model = svm_rbf_train(r.embedding.points, labels, 1);
                return plot::scatter_with_boundary(
                    title, r.embedding.points, labels,
                    [model](double x, double y) { return model.decision(x, y); });
            };
            ctx.write("mds_cgssn_" + to_string(distance) + ".svg",
                      scatter(cgssn, "Coarse-grained, " + to_string(distance)));
            ctx.write("mds_opn_" + to_string(distance) + ".svg",
                      scatter(opn, "Ordinal, " + to_string(distance)));
        }

        ctx.report.summary["cgssn_" + to_string(distance)] = {
            {"mean", cgssn.accuracy_mean}, {"stdev", cgssn.accuracy_stdev}};
        ctx.report.summary["opn_" + to_string(distance)] = {{"mean", opn.accuracy_mean},
                                                            {"stdev", opn.accuracy_stdev}};

        ctx.check("ordering-" + to_string(distance), cgssn.accuracy_mean >= opn.accuracy_mean,
                  "coarse-grained mean " + fmt(cgssn.accuracy_mean) + " vs ordinal " +
                      fmt(opn.accuracy_mean));
        results.emplace(distance, std::make_pair(std::move(cgssn), std::move(opn)));
    }
    ctx.write("accuracies.csv", table);

    const BatteryResult& sw = results.at(DistanceKind::shortest_weighted).first;
    ctx.check("cgssn-shortest-weighted-ceiling", sw.accuracy_mean == 1.0 && sw.accuracy_stdev == 0.0,
              "mean " + fmt(sw.accuracy_mean) + ", stdev " + fmt(sw.accuracy_stdev));
    const BatteryResult& diff = results.at(DistanceKind::diffusion).first;
    ctx.check("cgssn-diffusion-ceiling", diff.accuracy_mean == 1.0 && diff.accuracy_stdev == 0.0,
              "mean " + fmt(diff.accuracy_mean) + ", stdev " + fmt(diff.accuracy_stdev));
}

using Runner = void (*)(Context&);

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> reg = {
        {"fig4-toy", run_fig4},
        {"sine-method-example", run_sine},
        {"rossler-entropy", run_rossler_entropy},
        {"appendixA-binsweep", run_binsweep},
        {"noise-ordering", run_noise},
        {"table1-subset", run_table1},
    };
    return reg;
}

} // namespace

std::vector<std::string> registered() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) {
        (void)fn;
        names.push_back(name);
    }
    return names;
}

Report run(const std::string& name, const std::filesystem::path& out_dir,
           const std::filesystem::path& data_dir, int jobs, bool plot) {
    auto it = registry().find(name);
    if (it == registry().end()) {
        std::string known;
        for (const auto& n : registered()) known += " " + n;
        throw validation_error("unknown reproduction '" + name + "'; registered:" + known);
    }
    Context ctx;
    ctx.out = out_dir / name;
    ctx.data = data_dir;
    ctx.jobs = jobs;
    ctx.plot = plot;
    ctx.report.name = name;
    it->second(ctx);
    ctx.report.summary["name"] = name;
    ctx.report.summary["passed"] = ctx.report.passed();
    return ctx.report;
}

} // namespace dynstate::repro
