#pragma once

#include <string>

#include "isoschatten/config.hpp"
#include "isoschatten/report.hpp"

namespace isoschatten {

// Runs one experiment end to end: parses and rescales the domains to the
// reference measure, drives the spectral/trace pipelines at the configured
// resolutions, Richardson-budgets every compared quantity, and writes
// report.json plus spectrum/functional CSVs into `output_dir`.
//
// Throws Error(ConfigParseError | NotATriangle) on invalid configuration;
// pipeline failures are embedded in the report's `errors` section instead.
ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& output_dir);

// Convenience wrapper mapping outcomes to process exit codes:
// 0 all verdicts hold, 1 verdict failure, 2 usage/config error, 3 numerical
// failure.
int run(const ExperimentConfig& config, const std::string& output_dir);

}  // namespace isoschatten
