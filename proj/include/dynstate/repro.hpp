#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dynstate::repro {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string name;
    std::vector<Check> checks;
    nlohmann::json summary;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Registered reproduction names.
std::vector<std::string> registered();

/// Run one named reproduction: writes its artifacts under out_dir/<name>/ and
/// returns per-assertion results. data_dir must hold systems.json and
/// fig4_toy.json.
Report run(const std::string& name, const std::filesystem::path& out_dir,
           const std::filesystem::path& data_dir, int jobs = 0, bool plot = false);

} // namespace dynstate::repro
