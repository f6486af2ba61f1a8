#include "trimedge/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "trimedge/errors.hpp"
#include "trimedge/normal.hpp"
#include "trimedge/parallel.hpp"
#include "trimedge/rng.hpp"
#include "trimedge/summary.hpp"
#include "trimedge/sup_distance.hpp"

namespace trimedge {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool contains_kind(const std::vector<StatisticKind>& kinds, StatisticKind k) {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

std::vector<double> statistic_of(std::span<const ReplicateRecord> records, StatisticKind kind) {
  std::vector<double> out(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    out[i] = kind == StatisticKind::kNormalized ? records[i].normalized : records[i].studentized;
  }
  return out;
}

std::vector<double> finite_sorted(std::span<const double> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (std::isfinite(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_rate_sizes(std::span<const std::size_t> n_list) {
  if (n_list.size() < 3) throw InvalidArgument("a rate study needs at least 3 sample sizes");
  const auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
  if (static_cast<double>(*hi) < 10.0 * static_cast<double>(*lo)) {
    throw InvalidArgument("sample sizes of a rate study must span at least a factor of 10");
  }
}

RateStudy finish_rate_study(std::string quantity, std::uint64_t seed, std::vector<RateRow> rows) {
  std::vector<double> log_n;
  std::vector<double> log_med;
  for (const auto& r : rows) {
    log_n.push_back(std::log(static_cast<double>(r.n)));
    log_med.push_back(std::log(r.median_abs_error));
  }
  RateStudy study{std::move(quantity), seed, std::move(rows), 0.0};
  study.log_median_slope = ls_slope(log_n, log_med);
  return study;
}

template <class ErrorOf>
RateStudy error_rate_study(std::string quantity, const DistributionModel& model,
                           const TrimLevels& levels, std::span<const std::size_t> n_list,
                           std::size_t reps, std::uint64_t seed, unsigned workers,
                           ErrorOf error_of) {
  require_rate_sizes(n_list);
  if (reps < 2) throw InvalidArgument("reps must be at least 2");
  std::vector<RateRow> rows;
  for (std::size_t n : n_list) {
    const TrimSpec spec(levels, n);
    std::vector<double> err(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
      auto stream = replicate_stream(seed, n, r);
      const SortedSample s(sample(model, n, stream));
      err[r] = std::abs(error_of(s, spec));
    });
    rows.push_back({n, reps, median_of(err), quantile_of(err, 0.9)});
  }
  return finish_rate_study(std::move(quantity), seed, std::move(rows));
}

}  // namespace

Target parse_target(std::string_view name) {
  if (name == "normal") return Target::kNormal;
  if (name == "population_expansion") return Target::kPopulationExpansion;
  if (name == "empirical_expansion") return Target::kEmpiricalExpansion;
  throw InvalidArgument("unknown target '" + std::string(name) + "'");
}

std::string_view target_name(Target t) {
  switch (t) {
    case Target::kNormal: return "normal";
    case Target::kPopulationExpansion: return "population_expansion";
    case Target::kEmpiricalExpansion: return "empirical_expansion";
  }
  return "unknown";
}

StatisticKind parse_kind(std::string_view name) {
  if (name == "normalized") return StatisticKind::kNormalized;
  if (name == "studentized") return StatisticKind::kStudentized;
  throw InvalidArgument("unknown statistic kind '" + std::string(name) + "'");
}

std::string_view kind_name(StatisticKind k) {
  return k == StatisticKind::kNormalized ? "normalized" : "studentized";
}

bool SimulationConfig::has_target(Target t) const {
  return std::find(targets.begin(), targets.end(), t) != targets.end();
}

void SimulationConfig::validate() const {
  TrimLevels::make(alpha, beta);
  if (n_list.empty()) throw InvalidArgument("n_list is empty");
  for (std::size_t n : n_list) TrimSpec(alpha, beta, n);
  if (reps < kMinSupDistanceReps) {
    throw InvalidArgument("reps must be at least " + std::to_string(kMinSupDistanceReps) +
                          " for a sup-distance estimate");
  }
  if (reps >= (std::size_t{1} << 32)) throw InvalidArgument("reps must be below 2^32");
  if (kinds.empty()) throw InvalidArgument("no statistic kind selected");
  if (targets.empty()) throw InvalidArgument("no target selected");
  if (has_target(Target::kEmpiricalExpansion) && expansion_reps == 0) {
    throw InvalidArgument("expansion_reps must be positive");
  }
}

PopulationContext population_context(const DistributionModel& model, const TrimLevels& levels) {
  PopulationContext ctx;
  try {
    ctx.functionals = compute_functionals(model, levels);
    ctx.mu_trim = ctx.functionals->mu_trim;
  } catch (const ModelError&) {
    ctx.mu_trim = trimmed_population_mean(model, levels);
  }
  return ctx;
}

std::vector<ReplicateRecord> simulate_replicates(const SimulationConfig& config,
                                                 const DistributionModel& model,
                                                 const PopulationContext& pop, std::size_t n) {
  const TrimSpec spec(config.alpha, config.beta, n);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double width = config.beta - config.alpha;
  const double sigma_w = pop.functionals ? pop.functionals->sigma_W() : kNaN;

  std::vector<ReplicateRecord> records(config.reps);
  parallel_for(config.reps, config.workers, [&](std::size_t r) {
    auto stream = replicate_stream(config.base_seed, n, r);
    const SortedSample s(sample(model, n, stream));
    auto& rec = records[r];
    rec.estimates = compute_plugins(s, spec, config.beta_hat_variant);
    const double centered = root_n * (rec.estimates.t_n - pop.mu_trim) * width;
    rec.normalized = centered / sigma_w;
    rec.studentized = rec.estimates.variance_degenerate ? kNaN : centered / rec.estimates.s_n();
  });
  return records;
}

std::vector<double> simulate_statistic(const SimulationConfig& config, std::size_t n) {
  SimulationConfig single = config;
  single.n_list = {n};
  single.validate();
  const auto model = config.model.build();
  const auto pop = population_context(model, TrimLevels::make(config.alpha, config.beta));
  const StatisticKind kind = config.kinds.front();
  if (kind == StatisticKind::kNormalized && !pop.functionals) {
    throw ModelError("the normalized statistic needs sigma_W, which this model lacks");
  }
  const auto records = simulate_replicates(config, model, pop, n);
  return statistic_of(records, kind);
}

std::vector<double> expansion_critical_points(const ExpansionCoefficients& c) {
  auto pts = expansion_stationary_points(c);
  const auto more = correction_stationary_points(c);
  pts.insert(pts.end(), more.begin(), more.end());
  std::sort(pts.begin(), pts.end());
  return pts;
}

SupDistanceRow sup_distance_row(std::span<const double> values, std::size_t n, StatisticKind kind,
                                Target target, const ExpansionCoefficients* expansion) {
  if (target == Target::kEmpiricalExpansion) {
    throw InvalidArgument("the empirical-expansion target has its own summary");
  }
  if (target == Target::kPopulationExpansion && expansion == nullptr) {
    throw InvalidArgument("population expansion requested without coefficients");
  }
  std::function<double(double)> cdf;
  std::vector<double> extra;
  if (target == Target::kNormal) {
    cdf = [](double x) { return normal_cdf(x); };
  } else {
    cdf = [c = *expansion](double x) { return expansion_cdf(c, x); };
    extra = expansion_critical_points(*expansion);
  }

  SupDistanceRow row;
  row.n = n;
  row.kind = kind;
  row.target = target;

  const auto sorted = finite_sorted(values);
  if (sorted.empty()) throw DegenerateData("every replicate was degenerate");
  row.replicates = sorted.size();
  row.degenerate = values.size() - sorted.size();
  row.sup_distance = sorted_cdf_sup_distance(sorted, cdf, extra);
  row.sqrt_n_scaled = row.sup_distance * std::sqrt(static_cast<double>(n));

  // Batch means over consecutive replicates: sd / sqrt(batches) approximates
  // the error of the pooled estimate.
  std::vector<double> batch_sups;
  const std::size_t b = kStandardErrorBatches;
  for (std::size_t i = 0; i < b; ++i) {
    const std::size_t lo = values.size() * i / b;
    const std::size_t hi = values.size() * (i + 1) / b;
    const auto part = finite_sorted(values.subspan(lo, hi - lo));
    if (!part.empty()) batch_sups.push_back(sorted_cdf_sup_distance(part, cdf, extra));
  }
  row.mc_standard_error = batch_sups.size() > 1
                              ? sd_of(batch_sups) / std::sqrt(static_cast<double>(batch_sups.size()))
                              : kNaN;

  if (target == Target::kPopulationExpansion) {
    std::vector<double> probe = extra;
    probe.push_back(sorted.front());
    probe.push_back(sorted.back());
    for (double x : probe) {
      const double v = cdf(x);
      if (v < 0.0 || v > 1.0) row.target_exits_unit_interval = true;
    }
  }
  return row;
}

EmpiricalExpansionRow empirical_expansion_row(std::span<const double> values,
                                              std::span<const ReplicateRecord> records,
                                              std::size_t n, StatisticKind kind,
                                              std::size_t expansion_reps,
                                              const ExpansionCoefficients* population) {
  EmpiricalExpansionRow row;
  row.n = n;
  row.kind = kind;
  const auto sorted = finite_sorted(values);
  if (sorted.empty()) throw DegenerateData("every replicate was degenerate");

  std::vector<double> sups;
  const std::size_t limit = std::min(expansion_reps, records.size());
  for (std::size_t r = 0; r < limit; ++r) {
    const auto& est = records[r].estimates;
    if (est.variance_degenerate) {
      ++row.variance_degenerate;
      continue;
    }
    if (est.density_degenerate) ++row.density_degenerate;
    const auto c = empirical_expansion(est, kind).coefficients;
    sups.push_back(sorted_cdf_sup_distance(
        sorted, [&c](double x) { return expansion_cdf(c, x); }, expansion_critical_points(c)));
  }
  row.replicates = sups.size();
  if (sups.empty()) {
    row.median_sup = row.mean_sup = row.p95_sup = kNaN;
  } else {
    row.median_sup = median_of(sups);
    row.mean_sup = mean_of(sups);
    row.p95_sup = quantile_of(sups, 0.95);
  }
  row.normal_sup = sorted_cdf_sup_distance(sorted, [](double x) { return normal_cdf(x); });
  if (population != nullptr) {
    const auto& c = *population;
    row.population_sup = sorted_cdf_sup_distance(
        sorted, [&c](double x) { return expansion_cdf(c, x); }, expansion_critical_points(c));
  } else {
    row.population_sup = kNaN;
  }
  return row;
}

SimulationResult run_simulation(const SimulationConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto model = config.model.build();
  const auto levels = TrimLevels::make(config.alpha, config.beta);

  SimulationResult result;
  result.config = config;
  result.population = population_context(model, levels);
  const auto& pop = result.population;
  if (!pop.functionals) {
    if (contains_kind(config.kinds, StatisticKind::kNormalized) ||
        config.has_target(Target::kPopulationExpansion)) {
      throw ModelError(
          "population functionals are unavailable for this model; only the studentized "
          "statistic with normal or empirical-expansion targets can be simulated");
    }
  }

  for (std::size_t n : config.n_list) {
    const auto records = simulate_replicates(config, model, pop, n);
    const TrimSpec spec(levels, n);
    if (config.dump_sample) {
      auto stream = replicate_stream(config.base_seed, n, 0);
      result.dumped.push_back({n, sample(model, n, stream), records.front().estimates});
    }
    for (StatisticKind kind : config.kinds) {
      const auto values = statistic_of(records, kind);
      std::optional<ExpansionCoefficients> pop_exp;
      if (pop.functionals) pop_exp = population_expansion(*pop.functionals, spec, kind);
      for (Target t : config.targets) {
        if (t == Target::kEmpiricalExpansion) {
          result.empirical_rows.push_back(empirical_expansion_row(
              values, records, n, kind, config.expansion_reps, pop_exp ? &*pop_exp : nullptr));
        } else {
          result.sup_rows.push_back(
              sup_distance_row(values, n, kind, t, pop_exp ? &*pop_exp : nullptr));
        }
      }
    }
  }
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SupDistanceReport rate_study(SimulationConfig config) {
  require_rate_sizes(config.n_list);
  std::erase(config.targets, Target::kEmpiricalExpansion);
  if (config.targets.empty()) throw InvalidArgument("no target selected");
  config.dump_sample = false;
  const auto result = run_simulation(config);
  return {config.base_seed, config.reps, result.sup_rows, result.runtime_seconds};
}

std::vector<EmpiricalExpansionRow> empirical_expansion_study(SimulationConfig config) {
  config.targets = {Target::kEmpiricalExpansion};
  config.dump_sample = false;
  return run_simulation(config).empirical_rows;
}

BiasReport bias_study(const DistributionModel& model, const TrimLevels& levels, std::size_t n,
                      std::size_t reps, std::uint64_t base_seed, unsigned workers) {
  if (reps < 100000) throw InvalidArgument("a bias study needs at least 10^5 replicates");
  const auto pop = compute_functionals(model, levels);
  const TrimSpec spec(levels, n);
  const double width = levels.beta - levels.alpha;
  std::vector<double> dev(reps);
  parallel_for(reps, workers, [&](std::size_t r) {
    auto stream = replicate_stream(base_seed, n, r);
    const SortedSample s(sample(model, n, stream));
    dev[r] = width * (trimmed_mean(s, spec) - pop.mu_trim);
  });
  BiasReport rep;
  rep.n = n;
  rep.reps = reps;
  rep.base_seed = base_seed;
  rep.mc_bias = mean_of(dev);
  rep.standard_error = sd_of(dev) / std::sqrt(static_cast<double>(reps));
  rep.beta_n = bias_term(pop, spec);
  rep.z_score = (rep.mc_bias - rep.beta_n) / rep.standard_error;
  return rep;
}

RateStudy density_rate_study(const DistributionModel& model, const TrimLevels& levels,
                             std::span<const std::size_t> n_list, std::size_t reps, bool at_beta,
                             std::uint64_t base_seed, unsigned workers) {
  const auto pop = compute_functionals(model, levels);
  const double truth = at_beta ? pop.f_beta : pop.f_alpha;
  return error_rate_study(
      at_beta ? "density_beta" : "density_alpha", model, levels, n_list, reps, base_seed, workers,
      [&](const SortedSample& s, const TrimSpec& spec) {
        return kernel_density_at_quantile(s, at_beta ? spec.m() : spec.k()) - truth;
      });
}

RateStudy moment_rate_study(const DistributionModel& model, const TrimLevels& levels,
                            std::span<const std::size_t> n_list, std::size_t reps, int r,
                            std::uint64_t base_seed, unsigned workers) {
  if (r < 1) throw InvalidArgument("moment order must be positive");
  const double truth = winsorized_raw_moment(model, levels, r);
  return error_rate_study(
      "moment_" + std::to_string(r), model, levels, n_list, reps, base_seed, workers,
      [&](const SortedSample& s, const TrimSpec& spec) {
        return plugin_raw_moment(s, spec, r) - truth;
      });
}

}  // namespace trimedge
