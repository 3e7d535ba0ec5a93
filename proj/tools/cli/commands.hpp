#pragma once

#include <iosfwd>
#include <string>

#include "run_config.hpp"

namespace thermo::cli {

/// Exit statuses shared by every verb.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_runtime = 3;

int cmd_zoo_list(std::ostream& out);
int cmd_zoo_describe(const std::string& name, std::ostream& out);

/// pressure.csv and summary.json.
int cmd_estimate(const RunConfig& config, std::ostream& log);

/// verify_vp.json, mu_star.csv and, on coded systems, gibbs.json.
int cmd_verify_vp(const RunConfig& config, std::ostream& log);

/// properties.csv and properties.json; exit_failed when any check fails.
int cmd_properties(const RunConfig& config, std::ostream& log);

} // namespace thermo::cli
