#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rotamp/cli/experiment_config.hpp"

namespace rotamp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

const std::vector<std::string>& command_names();

// Runs one subcommand. Tables go to <out>/<command>.csv, the resolved config
// and the headline numbers to <out>/<command>_summary.json, a key: value
// report to `out`. Exceptions are mapped to exit codes and reported on `err`.
int run_command(const std::string& name, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace rotamp::cli
