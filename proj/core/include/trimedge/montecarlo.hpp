#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trimedge/distributions.hpp"
#include "trimedge/edgeworth.hpp"
#include "trimedge/estimators.hpp"
#include "trimedge/population.hpp"

namespace trimedge {

struct ModelSpec {
  std::string family;
  std::vector<double> params;

  DistributionModel build() const { return make_model(family, params); }
};

enum class Target { kNormal, kPopulationExpansion, kEmpiricalExpansion };

Target parse_target(std::string_view name);
std::string_view target_name(Target t);
StatisticKind parse_kind(std::string_view name);
std::string_view kind_name(StatisticKind k);

inline constexpr std::size_t kMinSupDistanceReps = 1000;

struct SimulationConfig {
  ModelSpec model;
  double alpha = 0.1;
  double beta = 0.9;
  std::vector<std::size_t> n_list;
  std::size_t reps = 200000;
  std::uint64_t base_seed = 0;
  std::vector<StatisticKind> kinds{StatisticKind::kStudentized};
  std::vector<Target> targets{Target::kNormal, Target::kPopulationExpansion};
  /// Replicates whose own empirical expansion is compared with the pooled df.
  std::size_t expansion_reps = 200;
  BetaHatVariant beta_hat_variant = BetaHatVariant::kMatchesPopulation;
  bool dump_sample = false;
  unsigned workers = 0;  // 0 = hardware concurrency; never affects results

  /// Throws InvalidArgument on schema violations (reps below the minimum,
  /// empty n_list, a size with an empty trim range, ...).
  void validate() const;
  bool has_target(Target t) const;
};

/// What a simulation knows about the truth. `functionals` is empty for models
/// that violate the smoothness hypotheses; mu_trim is always available.
struct PopulationContext {
  double mu_trim = 0;
  std::optional<PopulationFunctionals> functionals;
};

PopulationContext population_context(const DistributionModel& model, const TrimLevels& levels);

struct ReplicateRecord {
  double normalized = 0;   // NaN when functionals are unavailable
  double studentized = 0;  // NaN when S_N = 0
  PluginEstimates estimates;
};

/// All replicates at one size; replicate r uses replicate_stream(seed, n, r).
std::vector<ReplicateRecord> simulate_replicates(const SimulationConfig& config,
                                                 const DistributionModel& model,
                                                 const PopulationContext& pop, std::size_t n);

/// Statistic values for the first configured kind, in replicate order.
std::vector<double> simulate_statistic(const SimulationConfig& config, std::size_t n);

struct SupDistanceRow {
  std::size_t n = 0;
  StatisticKind kind{};
  Target target{};
  std::size_t replicates = 0;        // values entering the empirical df
  std::size_t degenerate = 0;        // replicates dropped (S_N = 0)
  double sup_distance = 0;
  double mc_standard_error = 0;      // 20-way batch means
  double sqrt_n_scaled = 0;
  bool target_exits_unit_interval = false;
};

inline constexpr std::size_t kStandardErrorBatches = 20;

/// Sup distance of the empirical df of `values` (replicate order) to Phi or to
/// a raw expansion, with the batch-means standard error.
SupDistanceRow sup_distance_row(std::span<const double> values, std::size_t n, StatisticKind kind,
                                Target target, const ExpansionCoefficients* expansion);

/// Points where a raw expansion can peak between jumps of a step function.
std::vector<double> expansion_critical_points(const ExpansionCoefficients& c);

struct EmpiricalExpansionRow {
  std::size_t n = 0;
  StatisticKind kind{};
  std::size_t replicates = 0;            // replicates with their own expansion
  std::size_t variance_degenerate = 0;
  std::size_t density_degenerate = 0;
  double median_sup = 0;
  double mean_sup = 0;
  double p95_sup = 0;
  double population_sup = 0;             // NaN when functionals are unavailable
  double normal_sup = 0;
};

EmpiricalExpansionRow empirical_expansion_row(std::span<const double> values,
                                              std::span<const ReplicateRecord> records,
                                              std::size_t n, StatisticKind kind,
                                              std::size_t expansion_reps,
                                              const ExpansionCoefficients* population);

struct DumpedSample {
  std::size_t n = 0;
  std::vector<double> values;  // replicate 0, in draw order
  PluginEstimates estimates;
};

struct SimulationResult {
  SimulationConfig config;
  PopulationContext population;
  std::vector<SupDistanceRow> sup_rows;
  std::vector<EmpiricalExpansionRow> empirical_rows;
  std::vector<DumpedSample> dumped;
  double runtime_seconds = 0;  // wall clock; not part of any serialized artifact
};

/// Simulates each size once and evaluates every configured (kind, target).
SimulationResult run_simulation(const SimulationConfig& config);

struct SupDistanceReport {
  std::uint64_t base_seed = 0;
  std::size_t reps = 0;
  std::vector<SupDistanceRow> rows;
  double runtime_seconds = 0;
};

/// Needs >= 3 sizes spanning at least a decade. Ignores the empirical target.
SupDistanceReport rate_study(SimulationConfig config);

/// Distribution over replicates of sup |F_hat - expansion built from replicate r|.
std::vector<EmpiricalExpansionRow> empirical_expansion_study(SimulationConfig config);

struct BiasReport {
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t base_seed = 0;
  double mc_bias = 0;  // (beta - alpha)(mean T_N - mu)
  double standard_error = 0;
  double beta_n = 0;
  double z_score = 0;  // (mc_bias - beta_n) / standard_error
};

/// Requires reps >= 10^5.
BiasReport bias_study(const DistributionModel& model, const TrimLevels& levels, std::size_t n,
                      std::size_t reps, std::uint64_t base_seed, unsigned workers = 0);

struct RateRow {
  std::size_t n = 0;
  std::size_t reps = 0;
  double median_abs_error = 0;
  double p90_abs_error = 0;
};

struct RateStudy {
  std::string quantity;
  std::uint64_t base_seed = 0;
  std::vector<RateRow> rows;
  double log_median_slope = 0;
};

/// |f_hat(xi_nu) - f(xi_nu)| for nu = alpha (at_beta = false) or beta.
RateStudy density_rate_study(const DistributionModel& model, const TrimLevels& levels,
                             std::span<const std::size_t> n_list, std::size_t reps,
                             bool at_beta, std::uint64_t base_seed, unsigned workers = 0);

/// |mu_hat_{r,W} - mu_{r,W}| for the r-th raw Winsorized moment.
RateStudy moment_rate_study(const DistributionModel& model, const TrimLevels& levels,
                            std::span<const std::size_t> n_list, std::size_t reps, int r,
                            std::uint64_t base_seed, unsigned workers = 0);

}  // namespace trimedge
