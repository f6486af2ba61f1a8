#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trimedge/estimators.hpp"
#include "trimedge/montecarlo.hpp"
#include "trimedge_cli/report.hpp"

namespace trimedge::cli {

enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2, kExitDegenerate = 3 };

/// Runs the command line `args` (without the program name). Never throws;
/// failures become exit codes with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// JSON report for one sample. Throws InvalidArgument for bad inputs and
/// DegenerateData when S_N = 0. `level` requests a confidence interval.
Json analyze_sample(const std::vector<double>& values, const std::string& source, double alpha,
                    double beta, std::optional<double> level,
                    BetaHatVariant variant = BetaHatVariant::kMatchesPopulation);

/// Reads a simulation config document. Unknown keys and wrong types are
/// schema violations (InvalidArgument).
SimulationConfig simulation_config_from_json(const Json& doc);

/// Writes sup_distance.csv, empirical_expansion.csv (when requested),
/// summary.json and any dumped samples into `dir`. Returns the files written.
std::vector<std::filesystem::path> write_simulation_outputs(const SimulationResult& result,
                                                            const std::filesystem::path& dir);

}  // namespace trimedge::cli
