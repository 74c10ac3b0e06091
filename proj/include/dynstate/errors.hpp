#pragma once

#include <stdexcept>
#include <string>

namespace dynstate {

/// Bad arguments or inconsistent configuration, detected before any work runs.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Failure discovered mid-computation (divergent trajectory, degenerate
/// sequence, undefined statistic, ...).
class compute_error : public std::runtime_error {
public:
    explicit compute_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dynstate
