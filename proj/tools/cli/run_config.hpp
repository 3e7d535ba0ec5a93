#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermo/properties.hpp"
#include "thermo/zoo.hpp"

namespace thermo::cli {

/// Bad config: JSON syntax (with line and column) or a field (with its path).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    /// Unset only for a properties sweep over the whole zoo.
    std::optional<ZooEntry> entry;
    ZooParams zoo_params;
    bool zoo_params_set = false;
    std::optional<Potential> potential;
    std::string potential_label = "default";
    std::vector<double> eps;       // empty: the entry's default grid
    int n_max = 0;                 // 0: the entry's default
    std::vector<int> q_grid{2, 3};
    std::vector<int> pipeline_n;   // empty: 2..min(n_max, 10)
    std::optional<double> pipeline_eps;
    SolverMode mode = SolverMode::exact;
    std::uint64_t seed = 0;
    std::filesystem::path out = "out";
    double witness_gate = invariance_tolerance;
    PropertyOptions properties;
};

/// `base_dir` resolves relative paths inside the config.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = ".");
RunConfig load_run_config(const std::filesystem::path& path);

SolverMode parse_mode(const std::string& s);
const char* to_string(SolverMode m);

/// Defaults filled in from the entry. The potential defaults to 0.
int effective_n_max(const RunConfig& c);
std::vector<double> effective_eps(const RunConfig& c);
std::vector<int> effective_pipeline_n(const RunConfig& c);
Potential effective_potential(const RunConfig& c);

} // namespace thermo::cli
