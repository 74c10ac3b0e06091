#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "dynstate/analysis.hpp"
#include "dynstate/graphdist.hpp"
#include "dynstate/homology.hpp"
#include "dynstate/networks.hpp"

namespace dynstate::io {

/// Write text to path, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

std::string timeseries_csv(const TimeSeries& ts);

/// Edge list as "u,v,weight" rows over the original symbols.
std::string edge_list_csv(const TransitionNetwork& net);

nlohmann::json adjacency_json(const TransitionNetwork& net);

std::string matrix_csv(const std::vector<double>& values, std::size_t n);

/// Kind/params sidecar for an exported matrix.
nlohmann::json matrix_sidecar_json(const DissimilarityMatrix& d);

nlohmann::json diagram_json(const PersistenceDiagram& diagram);

std::string sweep_csv(const SweepResult& sweep, bool include_times = false);

/// Wall-clock column split out so the main artifacts stay reproducible.
std::string sweep_timings_csv(const SweepResult& sweep);

nlohmann::json embedding2d_json(const LabeledEmbedding2D& embedding);

} // namespace dynstate::io
