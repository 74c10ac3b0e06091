#include "dynstate/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace dynstate::io {

namespace {

// Shortest round-trip formatting, so reruns are byte-identical.
std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write '" + path.string() + "'");
    out << text;
}

std::string timeseries_csv(const TimeSeries& ts) {
    std::string out;
    for (double v : ts.samples) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::string edge_list_csv(const TransitionNetwork& net) {
    std::string out = "u,v,weight\n";
    for (const auto& e : net.edges()) {
        out += std::to_string(net.symbols()[static_cast<std::size_t>(e.u)]);
        out += ',';
        out += std::to_string(net.symbols()[static_cast<std::size_t>(e.v)]);
        out += ',';
        out += std::to_string(e.weight);
        out += '\n';
    }
    return out;
}

nlohmann::json adjacency_json(const TransitionNetwork& net) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : net.edges())
        edges.push_back({net.symbols()[static_cast<std::size_t>(e.u)],
                         net.symbols()[static_cast<std::size_t>(e.v)], e.weight});
    return nlohmann::json{{"node_count", net.node_count()},
                          {"edge_count", net.edge_count()},
                          {"symbols", net.symbols()},
                          {"edges", edges}};
}

std::string matrix_csv(const std::vector<double>& values, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out += ',';
            out += format_double(values[i * n + j]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json matrix_sidecar_json(const DissimilarityMatrix& d) {
    nlohmann::json sidecar{{"kind", to_string(d.kind)}, {"n", d.n}};
    if (d.kind == DistanceKind::diffusion) sidecar["diffusion_t"] = d.diffusion_t;
    return sidecar;
}

nlohmann::json diagram_json(const PersistenceDiagram& diagram) {
    auto pairs_json = [](const std::vector<PersistencePair>& pairs) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& p : pairs) out.push_back({p.birth, p.death});
        return out;
    };
    nlohmann::json provenance{{"distance", to_string(diagram.kind)}};
    if (diagram.kind == DistanceKind::diffusion) provenance["diffusion_t"] = diagram.diffusion_t;
    return nlohmann::json{{"dim0", pairs_json(diagram.dim0)},
                          {"dim1", pairs_json(diagram.dim1)},
                          {"provenance", provenance}};
}

std::string sweep_csv(const SweepResult& sweep, bool include_times) {
    std::string out = "x";
    for (const auto& s : sweep.series) {
        out += "," + s.label + "_entropy," + s.label + "_entropy_stdev," + s.label +
               "_max_lifetime," + s.label + "_error";
        if (include_times) out += "," + s.label + "_seconds";
    }
    out += '\n';
    for (std::size_t i = 0; i < sweep.x_values.size(); ++i) {
        out += format_double(sweep.x_values[i]);
        for (const auto& s : sweep.series) {
            out += ',' + format_double(s.entropy[i]);
            out += ',' + format_double(s.entropy_stdev[i]);
            out += ',' + format_double(s.max_lifetime[i]);
            out += ',';
            for (const char c : s.errors[i]) out += c == ',' ? ';' : c; // keep the CSV parseable
            if (include_times) out += ',' + format_double(s.seconds[i]);
        }
        out += '\n';
    }
    return out;
}

std::string sweep_timings_csv(const SweepResult& sweep) {
    std::string out = "x";
    for (const auto& s : sweep.series) out += "," + s.label + "_seconds";
    out += '\n';
    for (std::size_t i = 0; i < sweep.x_values.size(); ++i) {
        out += format_double(sweep.x_values[i]);
        for (const auto& s : sweep.series) out += ',' + format_double(s.seconds[i]);
        out += '\n';
    }
    return out;
}

nlohmann::json embedding2d_json(const LabeledEmbedding2D& embedding) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < embedding.points.size(); ++i)
        points.push_back({{"x", embedding.points[i][0]},
                          {"y", embedding.points[i][1]},
                          {"label", to_string(embedding.labels[i])}});
    return nlohmann::json{{"points", points},
                          {"network_kind", to_string(embedding.network_kind)},
                          {"distance_kind", to_string(embedding.distance_kind)}};
}

} // namespace dynstate::io
