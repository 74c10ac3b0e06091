// Command-line surface over the dynamic-state detection pipeline: simulate or
// ingest a signal, build its transitional network, measure it with persistent
// homology, and drive the batch experiments. Prints a one-line JSON summary
// to stdout; artifacts land in the output directory.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dynstate/analysis.hpp"
#include "dynstate/io.hpp"
#include "dynstate/plot.hpp"
#include "dynstate/repro.hpp"

using nlohmann::json;
using namespace dynstate;

#ifndef DYNSTATE_DATA_DIR
#define DYNSTATE_DATA_DIR "data"
#endif

namespace {

struct CommonOpts {
    std::string out_dir = "out";
    std::string data_dir = DYNSTATE_DATA_DIR;
    int jobs = 0;
    bool plot = false;
};

struct InputOpts {
    std::string system; // preset name
    std::string csv;
    double fs = 0.0;
    std::size_t column = 0;
};

struct EmbedOpts {
    int tau = 0;
    int dim = 0;
    bool auto_tau = false;
    bool auto_dim = false;
};

struct NetworkOpts {
    std::string kind = "coarse";
    int bins = 12;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out_dir, "output directory")->envname("DYNSTATE_OUT");
    cmd->add_option("--data", opts.data_dir, "data directory with systems.json")
        ->envname("DYNSTATE_DATA");
    cmd->add_option("--jobs", opts.jobs, "worker threads (0 = all cores)")
        ->envname("DYNSTATE_JOBS");
    cmd->add_flag("--plot", opts.plot, "emit SVG plots");
}

void add_input(CLI::App* cmd, InputOpts& opts) {
    cmd->add_option("--system", opts.system, "built-in system preset (see systems.json)");
    cmd->add_option("--csv", opts.csv, "input CSV path");
    cmd->add_option("--fs", opts.fs, "sample rate for --csv input (Hz)");
    cmd->add_option("--column", opts.column, "CSV column index");
}

void add_embedding(CLI::App* cmd, EmbedOpts& opts) {
    cmd->add_option("--tau", opts.tau, "embedding delay (samples)");
    cmd->add_option("--dim", opts.dim, "embedding dimension");
    cmd->add_flag("--auto-tau", opts.auto_tau, "select tau by permutation entropy");
    cmd->add_flag("--auto-dim", opts.auto_dim, "select dimension by false nearest neighbors");
}

struct LoadedInput {
    TimeSeries ts;
    std::optional<SystemPreset> preset;
};

LoadedInput load_input(const InputOpts& in, const CommonOpts& common) {
    if (in.system.empty() == in.csv.empty())
        throw validation_error("exactly one of --system or --csv is required");
    LoadedInput loaded;
    if (!in.system.empty()) {
        const auto presets =
            load_presets((std::filesystem::path(common.data_dir) / "systems.json").string());
        auto it = presets.find(in.system);
        if (it == presets.end()) {
            std::string known;
            for (const auto& [k, v] : presets) {
                (void)v;
                known += " " + k;
            }
            throw validation_error("unknown preset '" + in.system + "'; known:" + known);
        }
        loaded.preset = it->second;
        loaded.ts = simulate_preset(it->second);
    } else {
        if (in.fs <= 0.0) throw validation_error("--csv input needs --fs > 0");
        loaded.ts = ingest_csv(in.csv, in.fs, in.column);
    }
    return loaded;
}

// Resolve tau/dim from flags, auto-selection, or the preset defaults.
struct ResolvedEmbedding {
    int tau;
    int dim;
    bool tau_fallback = false;
};

ResolvedEmbedding resolve_embedding(const LoadedInput& input, const EmbedOpts& embed,
                                    SymbolMethod method) {
    ResolvedEmbedding out{embed.tau, embed.dim};
    if (embed.auto_tau) {
        const DelaySelection sel = select_delay_mpe(input.ts);
        out.tau = sel.tau;
        out.tau_fallback = sel.no_prominent_peak;
    } else if (out.tau <= 0 && input.preset) {
        out.tau = input.preset->tau;
    }
    if (out.tau <= 0) throw validation_error("need --tau, --auto-tau, or a preset default");
    if (embed.auto_dim) {
        out.dim = select_dim_fnn(input.ts, out.tau);
    } else if (out.dim <= 0 && input.preset) {
        out.dim = method == SymbolMethod::coarse ? input.preset->cgssn_dim
                                                 : input.preset->opn_dim;
    }
    if (out.dim <= 0) throw validation_error("need --dim, --auto-dim, or a preset default");
    return out;
}

void emit(const json& summary) { std::cout << summary.dump() << "\n"; }

json series_summary(const TimeSeries& ts) {
    return json{{"label", ts.label},
                {"samples", ts.samples.size()},
                {"sample_rate", ts.sample_rate},
                {"rms", rms(ts)}};
}

int dispatch(CLI::App& app) {
    // ---- simulate -----------------------------------------------------------
    auto* simulate_cmd = app.add_subcommand("simulate", "simulate a preset or re-emit a CSV");
    static CommonOpts sim_common;
    static InputOpts sim_input;
    static double sim_snr = std::numeric_limits<double>::infinity();
    static std::uint64_t sim_seed = 1;
    add_common(simulate_cmd, sim_common);
    add_input(simulate_cmd, sim_input);
    simulate_cmd->add_option("--snr", sim_snr, "additive Gaussian noise level (dB), inf = none");
    simulate_cmd->add_option("--seed", sim_seed, "noise seed");
    simulate_cmd->callback([&] {
        LoadedInput input = load_input(sim_input, sim_common);
        if (!std::isinf(sim_snr)) input.ts = add_noise_snr(input.ts, sim_snr, sim_seed);
        io::write_text(std::filesystem::path(sim_common.out_dir) / "signal.csv",
                       io::timeseries_csv(input.ts));
        emit(series_summary(input.ts));
    });

    // ---- embed ---------------------------------------------------------------
    auto* embed_cmd = app.add_subcommand("embed", "delay-embed a signal");
    static CommonOpts emb_common;
    static InputOpts emb_input;
    static EmbedOpts emb_embed;
    add_common(embed_cmd, emb_common);
    add_input(embed_cmd, emb_input);
    add_embedding(embed_cmd, emb_embed);
    embed_cmd->callback([&] {
        const LoadedInput input = load_input(emb_input, emb_common);
        const ResolvedEmbedding resolved =
            resolve_embedding(input, emb_embed, SymbolMethod::coarse);
        const Embedding emb = delay_embed(input.ts, resolved.tau, resolved.dim);
        std::string csv;
        for (std::size_t i = 0; i < emb.count(); ++i) {
            for (int j = 0; j < emb.dim(); ++j) {
                if (j) csv += ',';
                csv += std::to_string(emb.vec(i)[static_cast<std::size_t>(j)]);
            }
            csv += '\n';
        }
        io::write_text(std::filesystem::path(emb_common.out_dir) / "embedding.csv", csv);
        emit(json{{"tau", resolved.tau},
                  {"dim", resolved.dim},
                  {"vectors", emb.count()},
                  {"tau_fallback", resolved.tau_fallback}});
    });

    // ---- network ---------------------------------------------------------------
    auto* net_cmd = app.add_subcommand("network", "build the transitional network");
    static CommonOpts net_common;
    static InputOpts net_input;
    static EmbedOpts net_embed;
    static NetworkOpts net_opts;
    add_common(net_cmd, net_common);
    add_input(net_cmd, net_input);
    add_embedding(net_cmd, net_embed);
    net_cmd->add_option("--kind", net_opts.kind, "ordinal|coarse");
    net_cmd->add_option("--bins", net_opts.bins, "bins per dimension (coarse only)");
    net_cmd->callback([&] {
        const SymbolMethod method = parse_symbol_method(net_opts.kind);
        const LoadedInput input = load_input(net_input, net_common);
        const ResolvedEmbedding resolved = resolve_embedding(input, net_embed, method);
        const Embedding emb = delay_embed(input.ts, resolved.tau, resolved.dim);
        const SymbolSequence seq = symbolize(emb, method, net_opts.bins);
        const TransitionNetwork net = build_network(seq);
        const auto out = std::filesystem::path(net_common.out_dir);
        io::write_text(out / "edges.csv", io::edge_list_csv(net));
        io::write_text(out / "adjacency.json", io::adjacency_json(net).dump(2) + "\n");
        emit(json{{"kind", net_opts.kind},
                  {"nodes", net.node_count()},
                  {"edges", net.edge_count()},
                  {"alphabet", seq.alphabet_size}});
    });

    // ---- persist / entropy -------------------------------------------------------
    for (const bool entropy_only : {false, true}) {
        auto* cmd = app.add_subcommand(entropy_only ? "entropy" : "persist",
                                       entropy_only
                                           ? "persistent entropy of the network's diagram"
                                           : "persistence diagram of the network");
        static CommonOpts common_of[2];
        static InputOpts input_of[2];
        static EmbedOpts embed_of[2];
        static NetworkOpts net_of[2];
        static std::string distance_of[2] = {"unweighted", "unweighted"};
        static int diffusion_of[2] = {0, 0};
        const int slot = entropy_only ? 1 : 0;
        add_common(cmd, common_of[slot]);
        add_input(cmd, input_of[slot]);
        add_embedding(cmd, embed_of[slot]);
        cmd->add_option("--kind", net_of[slot].kind, "ordinal|coarse");
        cmd->add_option("--bins", net_of[slot].bins, "bins per dimension (coarse only)");
        cmd->add_option("--distance", distance_of[slot],
                        "unweighted|weighted|shortest-weighted|diffusion");
        cmd->add_option("--diffusion-t", diffusion_of[slot], "diffusion walk length (0 = auto)");
        cmd->callback([&, slot, entropy_only] {
            const CommonOpts& common = common_of[slot];
            const SymbolMethod method = parse_symbol_method(net_of[slot].kind);
            const DistanceKind distance = parse_distance_kind(distance_of[slot]);
            const LoadedInput input = load_input(input_of[slot], common);
            const ResolvedEmbedding resolved =
                resolve_embedding(input, embed_of[slot], method);
            const Embedding emb = delay_embed(input.ts, resolved.tau, resolved.dim);
            const SymbolSequence seq = symbolize(emb, method, net_of[slot].bins);
            const TransitionNetwork net = build_network(seq);
            const DissimilarityMatrix dist =
                node_distance_matrix(net, distance, diffusion_of[slot]);
            const PersistenceDiagram diagram = compute_diagrams(dist);
            const DiagramSummary summary = summarize(diagram.dim1);

            const auto out = std::filesystem::path(common.out_dir);
            io::write_text(out / "diagram.json", io::diagram_json(diagram).dump(2) + "\n");
            if (!entropy_only) {
                io::write_text(out / "distance.csv", io::matrix_csv(dist.values, dist.n));
                io::write_text(out / "distance.meta.json",
                               io::matrix_sidecar_json(dist).dump(2) + "\n");
            }
            emit(json{{"kind", net_of[slot].kind},
                      {"distance", distance_of[slot]},
                      {"nodes", net.node_count()},
                      {"entropy", summary.entropy},
                      {"empty_diagram", summary.empty},
                      {"max_lifetime", summary.max_lifetime},
                      {"pairs", summary.pair_count}});
        });
    }

    // ---- bottleneck ------------------------------------------------------------
    auto* bn_cmd = app.add_subcommand("bottleneck", "bottleneck distance of two diagram files");
    static std::string bn_a, bn_b;
    static int bn_dim = 1;
    bn_cmd->add_option("diagram_a", bn_a, "diagram JSON path")->required();
    bn_cmd->add_option("diagram_b", bn_b, "diagram JSON path")->required();
    bn_cmd->add_option("--homology-dim", bn_dim, "0 or 1")->check(CLI::Range(0, 1));
    bn_cmd->callback([&] {
        auto load_slice = [&](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw validation_error("cannot open '" + path + "'");
            json doc;
            in >> doc;
            std::vector<PersistencePair> out;
            for (const auto& pair : doc.at(bn_dim == 0 ? "dim0" : "dim1"))
                out.push_back({pair[0].get<double>(), pair[1].get<double>()});
            return out;
        };
        const auto da = load_slice(bn_a);
        const auto db = load_slice(bn_b);
        emit(json{{"bottleneck", bottleneck(da, db)},
                  {"dim", bn_dim},
                  {"pairs_a", da.size()},
                  {"pairs_b", db.size()}});
    });

    // ---- mds --------------------------------------------------------------------
    auto* mds_cmd = app.add_subcommand("mds", "2-D classical MDS of a distance matrix CSV");
    static CommonOpts mds_common;
    static std::string mds_matrix;
    add_common(mds_cmd, mds_common);
    mds_cmd->add_option("--matrix", mds_matrix, "square CSV matrix")->required();
    mds_cmd->callback([&] {
        const TimeSeries probe = ingest_csv(mds_matrix, 1.0, 0); // row count probe
        const std::size_t n = probe.samples.size();
        std::vector<double> values(n * n);
        for (std::size_t c = 0; c < n; ++c) {
            const TimeSeries col = ingest_csv(mds_matrix, 1.0, c);
            if (col.samples.size() != n)
                throw validation_error("matrix CSV is not square");
            for (std::size_t r = 0; r < n; ++r) values[r * n + c] = col.samples[r];
        }
        const auto points = mds_2d(values, n);
        std::string csv = "x,y\n";
        for (const auto& p : points)
            csv += std::to_string(p[0]) + "," + std::to_string(p[1]) + "\n";
        io::write_text(std::filesystem::path(mds_common.out_dir) / "mds.csv", csv);
        emit(json{{"points", n}});
    });

    // ---- bin-sweep -----------------------------------------------------------------
    auto* bs_cmd = app.add_subcommand("bin-sweep", "entropy/lifetime across bin counts");
    static CommonOpts bs_common;
    static InputOpts bs_input;
    static EmbedOpts bs_embed;
    static int bs_lo = 2, bs_hi = 20;
    static std::string bs_distance = "unweighted";
    add_common(bs_cmd, bs_common);
    add_input(bs_cmd, bs_input);
    add_embedding(bs_cmd, bs_embed);
    bs_cmd->add_option("--bmin", bs_lo, "smallest bin count");
    bs_cmd->add_option("--bmax", bs_hi, "largest bin count");
    bs_cmd->add_option("--distance", bs_distance, "distance kind");
    bs_cmd->callback([&] {
        const LoadedInput input = load_input(bs_input, bs_common);
        const ResolvedEmbedding resolved =
            resolve_embedding(input, bs_embed, SymbolMethod::coarse);
        const SweepResult sweep =
            bin_sweep(input.ts, resolved.tau, resolved.dim, bs_lo, bs_hi,
                      parse_distance_kind(bs_distance), bs_common.jobs);
        const auto out = std::filesystem::path(bs_common.out_dir);
        io::write_text(out / "sweep.csv", io::sweep_csv(sweep));
        io::write_text(out / "timings.csv", io::sweep_timings_csv(sweep));
        if (bs_common.plot) {
            plot::LineSeries entropy{"E'(D1)", sweep.series[0].entropy, {}};
            plot::LineSeries life{"max(L1)", sweep.series[0].max_lifetime, {}};
            io::write_text(out / "sweep.svg",
                           plot::line_chart("Bin sweep", "bins per dimension", sweep.x_values,
                                            {entropy, life}));
        }
        emit(json{{"points", sweep.x_values.size()}, {"label", sweep.series[0].label}});
    });

    // ---- noise-sweep ------------------------------------------------------------------
    auto* ns_cmd = app.add_subcommand("noise-sweep", "entropy separation across SNR levels");
    static CommonOpts ns_common;
    static std::string ns_periodic = "rossler-periodic", ns_chaotic = "rossler-chaotic";
    static std::string ns_kind = "coarse", ns_distance = "unweighted";
    static std::vector<double> ns_grid;
    static int ns_seeds = 5;
    static int ns_diffusion_t = 0;
    add_common(ns_cmd, ns_common);
    ns_cmd->add_option("--periodic", ns_periodic, "periodic preset name");
    ns_cmd->add_option("--chaotic", ns_chaotic, "chaotic preset name");
    ns_cmd->add_option("--kind", ns_kind, "ordinal|coarse");
    ns_cmd->add_option("--distance", ns_distance, "distance kind");
    ns_cmd->add_option("--snr", ns_grid, "SNR grid in dB (monotone)");
    ns_cmd->add_option("--seeds", ns_seeds, "noise seeds per grid point");
    ns_cmd->add_option("--diffusion-t", ns_diffusion_t, "diffusion walk length (0 = auto)");
    ns_cmd->callback([&] {
        const auto presets = load_presets(
            (std::filesystem::path(ns_common.data_dir) / "systems.json").string());
        const auto per_it = presets.find(ns_periodic);
        const auto cha_it = presets.find(ns_chaotic);
        if (per_it == presets.end() || cha_it == presets.end())
            throw validation_error("unknown preset in --periodic/--chaotic");
        NoiseSweepConfig config;
        config.snr_db = ns_grid.empty()
                            ? std::vector<double>{22, 24, 26, 28, 30, 32, 36, 40}
                            : ns_grid;
        for (int s = 1; s <= ns_seeds; ++s) config.seeds.push_back(static_cast<std::uint64_t>(s));
        config.method = parse_symbol_method(ns_kind);
        config.jobs = ns_common.jobs;
        config.params.tau = per_it->second.tau;
        config.params.dim = config.method == SymbolMethod::coarse ? per_it->second.cgssn_dim
                                                                  : per_it->second.opn_dim;
        config.params.bins = per_it->second.bins;
        config.params.distance = parse_distance_kind(ns_distance);
        config.params.diffusion_t = ns_diffusion_t;
        const NoiseSweepResult result = noise_sweep(simulate_preset(per_it->second),
                                                    simulate_preset(cha_it->second), config);
        const auto out = std::filesystem::path(ns_common.out_dir);
        io::write_text(out / "sweep.csv", io::sweep_csv(result.sweep));
        io::write_text(out / "timings.csv", io::sweep_timings_csv(result.sweep));
        if (ns_common.plot) {
            plot::LineSeries per{"periodic", result.sweep.series[0].entropy,
                                 result.sweep.series[0].entropy_stdev};
            plot::LineSeries cha{"chaotic", result.sweep.series[1].entropy,
                                 result.sweep.series[1].entropy_stdev};
            io::write_text(out / "sweep.svg",
                           plot::line_chart("Noise sweep (" + ns_kind + ")", "SNR (dB)",
                                            result.sweep.x_values, {per, cha}));
        }
        json summary{{"kind", ns_kind}, {"points", result.sweep.x_values.size()}};
        if (result.breakdown_snr_db) summary["breakdown_db"] = *result.breakdown_snr_db;
        else summary["breakdown_db"] = nullptr;
        emit(summary);
    });

    // ---- battery ------------------------------------------------------------------------
    auto* bat_cmd = app.add_subcommand("battery", "multi-system separation experiment");
    static CommonOpts bat_common;
    static std::string bat_kind = "coarse", bat_distance = "diffusion";
    static std::vector<std::string> bat_systems;
    static int bat_seeds = 100;
    static int bat_diffusion_t = 0;
    add_common(bat_cmd, bat_common);
    bat_cmd->add_option("--kind", bat_kind, "ordinal|coarse");
    bat_cmd->add_option("--distance", bat_distance, "distance kind");
    bat_cmd->add_option("--systems", bat_systems, "preset names (default: all)");
    bat_cmd->add_option("--seeds", bat_seeds, "SVM seed count");
    bat_cmd->add_option("--diffusion-t", bat_diffusion_t, "diffusion walk length (0 = auto)");
    bat_cmd->callback([&] {
        const SymbolMethod method = parse_symbol_method(bat_kind);
        const auto presets = load_presets(
            (std::filesystem::path(bat_common.data_dir) / "systems.json").string());
        std::vector<BatterySeries> dataset;
        for (const auto& [name, preset] : presets) {
            if (!bat_systems.empty() &&
                std::find(bat_systems.begin(), bat_systems.end(), name) == bat_systems.end())
                continue;
            BatterySeries series;
            series.ts = simulate_preset(preset);
            series.ts.label = name;
            series.regime = preset.spec.regime;
            series.tau = preset.tau;
            series.dim =
                method == SymbolMethod::coarse ? preset.cgssn_dim : preset.opn_dim;
            series.bins = preset.bins;
            dataset.push_back(std::move(series));
        }
        const BatteryResult result = battery(dataset, method, parse_distance_kind(bat_distance),
                                             bat_seeds, bat_common.jobs, bat_diffusion_t);
        const auto out = std::filesystem::path(bat_common.out_dir);
        io::write_text(out / "bottleneck.csv", io::matrix_csv(result.bottleneck, result.n));
        io::write_text(out / "mds.json", io::embedding2d_json(result.embedding).dump(2) + "\n");
        std::string acc = "seed,accuracy\n";
        for (std::size_t s = 0; s < result.accuracies.size(); ++s)
            acc += std::to_string(s + 1) + "," + std::to_string(result.accuracies[s]) + "\n";
        io::write_text(out / "accuracies.csv", acc);
        if (bat_common.plot) {
            std::vector<int> labels;
            for (const Regime reg : result.embedding.labels)
                labels.push_back(reg == Regime::chaotic ? 1 : -1);
            const RbfSvmModel model = svm_rbf_train(result.embedding.points, labels, 1);
            io::write_text(out / "mds.svg",
                           plot::scatter_with_boundary(
                               "Separation (" + bat_kind + ", " + bat_distance + ")",
                               result.embedding.points, labels,
                               [&model](double x, double y) { return model.decision(x, y); }));
        }
        emit(json{{"kind", bat_kind},
                  {"distance", bat_distance},
                  {"series", result.n},
                  {"skipped", result.skipped},
                  {"accuracy_mean", result.accuracy_mean},
                  {"accuracy_stdev", result.accuracy_stdev}});
    });

    // ---- repro --------------------------------------------------------------------------
    auto* repro_cmd = app.add_subcommand("repro", "run a bundled reproduction");
    static CommonOpts repro_common;
    static std::string repro_name;
    add_common(repro_cmd, repro_common);
    repro_cmd->add_option("name", repro_name, "reproduction name")->required();
    repro_cmd->callback([&] {
        const repro::Report report =
            repro::run(repro_name, repro_common.out_dir, repro_common.data_dir,
                       repro_common.jobs, repro_common.plot);
        for (const auto& check : report.checks)
            std::cerr << (check.passed ? "[PASS] " : "[FAIL] ") << report.name << "/"
                      << check.name << ": " << check.detail << "\n";
        emit(report.summary);
        if (!report.passed()) throw compute_error("reproduction '" + repro_name + "' failed");
    });

    app.require_subcommand(1);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transitional-network dynamic state detection"};
    dispatch(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints usage; help exits 0
        return code == 0 ? 0 : 1;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const compute_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
