#include "trimedge_cli/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace trimedge::cli {
namespace {

std::string_view bool_text(bool b) { return b ? "true" : "false"; }

std::string_view variant_name(BetaHatVariant v) {
  return v == BetaHatVariant::kAsPrinted ? "as_printed" : "matches_population";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

Json seed_provenance(std::uint64_t base_seed) {
  return Json{{"base_seed", base_seed},
              {"generator", "philox4x32-10"},
              {"key", "base_seed"},
              {"counter", "(block index, n * 2^32 + replicate)"}};
}

Json to_json(const PopulationFunctionals& p) {
  return Json{{"alpha", p.levels.alpha},   {"beta", p.levels.beta},
              {"xi_alpha", p.xi_alpha},    {"xi_beta", p.xi_beta},
              {"f_alpha", p.f_alpha},      {"f_beta", p.f_beta},
              {"mu_trim", p.mu_trim},      {"mu_W", p.mu_W},
              {"sigma2_W", p.sigma2_W},    {"gamma3_W", p.gamma3_W},
              {"delta2_W", p.delta2_W},    {"lambda1", p.lambda1},
              {"lambda2", p.lambda2},      {"quad_tol", p.quad_tol}};
}

Json to_json(const PluginEstimates& e) {
  return Json{{"n", e.n},
              {"t_n", e.t_n},
              {"mu_hat_W", e.mu_hat_W},
              {"s2_n", e.s2_n},
              {"s_n", e.s_n()},
              {"f_hat_alpha", e.f_hat_alpha},
              {"f_hat_beta", e.f_hat_beta},
              {"lambda1_hat", e.lambda1_hat},
              {"lambda2_hat", e.lambda2_hat},
              {"beta_n_hat", e.beta_n_hat},
              {"delta", e.delta},
              {"variance_degenerate", e.variance_degenerate},
              {"density_degenerate", e.density_degenerate}};
}

Json to_json(const ExpansionCoefficients& c) {
  return Json{{"kind", kind_name(c.kind)},
              {"source", c.source == CoefficientSource::kPopulation ? "population" : "empirical"},
              {"n", c.n},
              {"lambda1", c.lambda1},
              {"lambda2", c.lambda2},
              {"bias_over_sigma", c.bias_over_sigma},
              {"quadratic_coefficient", c.quadratic_coefficient()},
              {"constant_coefficient", c.constant_coefficient()}};
}

Json to_json(const TrimSpec& s) {
  return Json{{"alpha", s.alpha()}, {"beta", s.beta()}, {"n", s.n()}, {"k", s.k()}, {"m", s.m()}};
}

Json to_json(const SimulationConfig& c) {
  Json kinds = Json::array();
  for (auto k : c.kinds) kinds.push_back(kind_name(k));
  Json targets = Json::array();
  for (auto t : c.targets) targets.push_back(target_name(t));
  return Json{{"family", c.model.family},
              {"params", c.model.params},
              {"alpha", c.alpha},
              {"beta", c.beta},
              {"n_list", c.n_list},
              {"reps", c.reps},
              {"seed", c.base_seed},
              {"kinds", kinds},
              {"targets", targets},
              {"expansion_reps", c.expansion_reps},
              {"beta_hat_variant", variant_name(c.beta_hat_variant)}};
}

Json to_json(const SupDistanceRow& r) {
  return Json{{"n", r.n},
              {"kind", kind_name(r.kind)},
              {"target", target_name(r.target)},
              {"replicates", r.replicates},
              {"degenerate", r.degenerate},
              {"sup_distance", r.sup_distance},
              {"mc_standard_error", r.mc_standard_error},
              {"sqrt_n_scaled", r.sqrt_n_scaled},
              {"target_exits_unit_interval", r.target_exits_unit_interval}};
}

Json to_json(const EmpiricalExpansionRow& r) {
  return Json{{"n", r.n},
              {"kind", kind_name(r.kind)},
              {"replicates", r.replicates},
              {"variance_degenerate", r.variance_degenerate},
              {"density_degenerate", r.density_degenerate},
              {"median_sup", r.median_sup},
              {"mean_sup", r.mean_sup},
              {"p95_sup", r.p95_sup},
              {"population_sup", r.population_sup},
              {"normal_sup", r.normal_sup}};
}

Json to_json(const RemainderStudy& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    rows.push_back(Json{{"n", r.n},
                        {"reps", r.reps},
                        {"median_abs_raw", r.median_abs_raw},
                        {"p90_abs_raw", r.p90_abs_raw},
                        {"p99_abs_raw", r.p99_abs_raw},
                        {"median_abs_scaled", r.median_abs_scaled},
                        {"p99_abs_scaled", r.p99_abs_scaled}});
  }
  return Json{{"diagnostic", remainder_kind_name(s.kind)},
              {"seed", seed_provenance(s.base_seed)},
              {"log_median_slope", s.log_median_slope},
              {"p99_scaled_ratio", s.p99_scaled_ratio},
              {"rows", rows}};
}

Json to_json(const RateStudy& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    rows.push_back(Json{{"n", r.n},
                        {"reps", r.reps},
                        {"median_abs_error", r.median_abs_error},
                        {"p90_abs_error", r.p90_abs_error}});
  }
  return Json{{"quantity", s.quantity},
              {"seed", seed_provenance(s.base_seed)},
              {"log_median_slope", s.log_median_slope},
              {"rows", rows}};
}

Json to_json(const MomentCheckReport& r) {
  return Json{{"n", r.n},
              {"reps", r.reps},
              {"seed", seed_provenance(r.base_seed)},
              {"mean", r.mean},
              {"mean_se", r.mean_se},
              {"variance", r.variance},
              {"variance_se", r.variance_se},
              {"sigma2_W", r.sigma2_W},
              {"skewness", r.skewness},
              {"skewness_se", r.skewness_se},
              {"skewness_theory", r.skewness_theory}};
}

Json to_json(const BiasReport& r) {
  return Json{{"n", r.n},
              {"reps", r.reps},
              {"seed", seed_provenance(r.base_seed)},
              {"mc_bias", r.mc_bias},
              {"standard_error", r.standard_error},
              {"beta_n", r.beta_n},
              {"z_score", r.z_score}};
}

std::string sup_rows_csv(const std::vector<SupDistanceRow>& rows) {
  std::string out =
      "n,kind,target,replicates,degenerate,sup_distance,mc_standard_error,sqrt_n_scaled,"
      "target_exits_unit_interval\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.n, kind_name(r.kind),
                       target_name(r.target), r.replicates, r.degenerate,
                       format_number(r.sup_distance), format_number(r.mc_standard_error),
                       format_number(r.sqrt_n_scaled), bool_text(r.target_exits_unit_interval));
  }
  return out;
}

std::string empirical_rows_csv(const std::vector<EmpiricalExpansionRow>& rows) {
  std::string out =
      "n,kind,replicates,variance_degenerate,density_degenerate,median_sup,mean_sup,p95_sup,"
      "population_sup,normal_sup\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.n, kind_name(r.kind), r.replicates,
                       r.variance_degenerate, r.density_degenerate, format_number(r.median_sup),
                       format_number(r.mean_sup), format_number(r.p95_sup),
                       format_number(r.population_sup), format_number(r.normal_sup));
  }
  return out;
}

std::string remainder_csv(const RemainderStudy& s) {
  std::string out =
      "diagnostic,n,reps,median_abs_raw,p90_abs_raw,p99_abs_raw,median_abs_scaled,"
      "p99_abs_scaled\n";
  for (const auto& r : s.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", remainder_kind_name(s.kind), r.n, r.reps,
                       format_number(r.median_abs_raw), format_number(r.p90_abs_raw),
                       format_number(r.p99_abs_raw), format_number(r.median_abs_scaled),
                       format_number(r.p99_abs_scaled));
  }
  return out;
}

std::string rate_csv(const std::vector<RateStudy>& studies) {
  std::string out = "quantity,n,reps,median_abs_error,p90_abs_error\n";
  for (const auto& s : studies) {
    for (const auto& r : s.rows) {
      out += fmt::format("{},{},{},{},{}\n", s.quantity, r.n, r.reps,
                         format_number(r.median_abs_error), format_number(r.p90_abs_error));
    }
  }
  return out;
}

std::string moment_csv(const std::vector<MomentCheckReport>& reports) {
  std::string out =
      "n,reps,mean,mean_se,variance,variance_se,sigma2_W,skewness,skewness_se,skewness_theory\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.n, r.reps, format_number(r.mean),
                       format_number(r.mean_se), format_number(r.variance),
                       format_number(r.variance_se), format_number(r.sigma2_W),
                       format_number(r.skewness), format_number(r.skewness_se),
                       format_number(r.skewness_theory));
  }
  return out;
}

std::string bias_csv(const std::vector<BiasReport>& reports) {
  std::string out = "n,reps,mc_bias,standard_error,beta_n,z_score\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{},{},{},{}\n", r.n, r.reps, format_number(r.mc_bias),
                       format_number(r.standard_error), format_number(r.beta_n),
                       format_number(r.z_score));
  }
  return out;
}

Json simulation_summary(const SimulationResult& result) {
  Json sup = Json::array();
  for (const auto& r : result.sup_rows) sup.push_back(to_json(r));
  Json emp = Json::array();
  for (const auto& r : result.empirical_rows) emp.push_back(to_json(r));

  Json out{{"config", to_json(result.config)}, {"seed", seed_provenance(result.config.base_seed)}};
  out["population"] = {{"mu_trim", result.population.mu_trim}};
  if (result.population.functionals) {
    out["population"]["functionals"] = to_json(*result.population.functionals);
  } else {
    out["population"]["functionals"] = nullptr;
  }
  out["sup_distance"] = sup;
  out["empirical_expansion"] = emp;
  if (!result.dumped.empty()) {
    Json dumped = Json::array();
    for (const auto& d : result.dumped) {
      dumped.push_back(Json{{"n", d.n},
                            {"replicate", 0},
                            {"file", fmt::format("sample_n{}.txt", d.n)},
                            {"estimates", to_json(d.estimates)}});
    }
    out["dumped_samples"] = dumped;
  }
  return out;
}

}  // namespace trimedge::cli
