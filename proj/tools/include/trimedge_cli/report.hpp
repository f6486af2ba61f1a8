#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "trimedge/edgeworth.hpp"
#include "trimedge/estimators.hpp"
#include "trimedge/montecarlo.hpp"
#include "trimedge/population.hpp"
#include "trimedge/ustat.hpp"

namespace trimedge::cli {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal; "nan"/"inf" spelled out.
std::string format_number(double v);

/// Describes how replicate streams are derived from the base seed.
Json seed_provenance(std::uint64_t base_seed);

Json to_json(const PopulationFunctionals& pop);
Json to_json(const PluginEstimates& est);
Json to_json(const ExpansionCoefficients& c);
Json to_json(const TrimSpec& spec);
Json to_json(const SimulationConfig& config);
Json to_json(const SupDistanceRow& row);
Json to_json(const EmpiricalExpansionRow& row);
Json to_json(const RemainderStudy& study);
Json to_json(const RateStudy& study);
Json to_json(const MomentCheckReport& report);
Json to_json(const BiasReport& report);

std::string sup_rows_csv(const std::vector<SupDistanceRow>& rows);
std::string empirical_rows_csv(const std::vector<EmpiricalExpansionRow>& rows);
std::string remainder_csv(const RemainderStudy& study);
std::string rate_csv(const std::vector<RateStudy>& studies);
std::string moment_csv(const std::vector<MomentCheckReport>& reports);
std::string bias_csv(const std::vector<BiasReport>& reports);

/// summary.json of a simulation run. Wall-clock runtime is left out so that
/// repeated runs serialize identically.
Json simulation_summary(const SimulationResult& result);

}  // namespace trimedge::cli
