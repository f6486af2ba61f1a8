#include <gtest/gtest.h>

#include <cmath>

#include <cmath>

#include "trimedge/errors.hpp"
#include "trimedge/montecarlo.hpp"
#include "trimedge/normal.hpp"
#include "trimedge/summary.hpp"
#include "trimedge/sup_distance.hpp"
#include "trimedge_cli/report.hpp"

namespace trimedge {
namespace {

SimulationConfig small_config() {
  SimulationConfig c;
  c.model = {"exponential", {1}};
  c.alpha = 0.1;
  c.beta = 0.9;
  c.n_list = {50, 100};
  c.reps = 2000;
  c.base_seed = 77;
  c.kinds = {StatisticKind::kNormalized, StatisticKind::kStudentized};
  c.targets = {Target::kNormal, Target::kPopulationExpansion, Target::kEmpiricalExpansion};
  c.expansion_reps = 20;
  return c;
}

std::string serialize(const SimulationResult& r) {
  return cli::simulation_summary(r).dump(2) + cli::sup_rows_csv(r.sup_rows) +
         cli::empirical_rows_csv(r.empirical_rows);
}

double skewness(const std::vector<double>& v) {
  const double m = mean_of(v);
  double m2 = 0, m3 = 0;
  for (double x : v) {
    m2 += (x - m) * (x - m);
    m3 += (x - m) * (x - m) * (x - m);
  }
  m2 /= v.size();
  m3 /= v.size();
  return m3 / std::pow(m2, 1.5);
}

TEST(Simulation, OutputIndependentOfWorkerCount) {
  auto c = small_config();
  c.workers = 1;
  const auto one = serialize(run_simulation(c));
  for (unsigned w : {4u, 16u}) {
    c.workers = w;
    EXPECT_EQ(serialize(run_simulation(c)), one) << w << " workers";
  }
}

TEST(Simulation, RepeatedRunsAgree) {
  auto c = small_config();
  EXPECT_EQ(simulate_statistic(c, 100), simulate_statistic(c, 100));
}

TEST(Simulation, ConfigValidation) {
  auto c = small_config();
  c.reps = 999;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.n_list = {};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.alpha = 0.3;
  c.beta = 0.45;
  c.n_list = {4};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  EXPECT_THROW(rate_study(c), InvalidArgument);  // two sizes only
  c.n_list = {100, 200, 400};
  EXPECT_THROW(rate_study(c), InvalidArgument);  // less than a decade
}

TEST(Simulation, SymmetricNormalizedStatisticIsCentred) {
  SimulationConfig c;
  c.model = {"uniform", {0, 1}};
  c.alpha = 0.25;
  c.beta = 0.75;
  c.reps = 100000;
  c.base_seed = 5;
  c.kinds = {StatisticKind::kNormalized};
  const auto v = simulate_statistic(c, 400);
  EXPECT_LT(std::abs(mean_of(v)), 4 * sd_of(v) / std::sqrt(double(v.size())));
}

TEST(Simulation, ExponentialSkewnessMatchesExpansion) {
  SimulationConfig c;
  c.model = {"exponential", {1}};
  c.reps = 100000;
  c.base_seed = 6;
  c.kinds = {StatisticKind::kNormalized};
  const auto v = simulate_statistic(c, 400);
  const auto pop = compute_functionals(c.model.build(), TrimLevels::make(0.1, 0.9));
  const double theory = (pop.lambda1 + 3 * pop.lambda2) / 20.0;
  // Standard error of sample skewness for a near-normal population.
  const double se = std::sqrt(6.0 / v.size());
  EXPECT_LT(std::abs(skewness(v) - theory), 4 * se);
}

TEST(Simulation, UniformExpansionEqualsPhi) {
  SimulationConfig c;
  c.model = {"uniform", {0, 1}};
  c.alpha = 0.25;
  c.beta = 0.75;
  c.n_list = {100};
  c.reps = 5000;
  c.base_seed = 8;
  c.kinds = {StatisticKind::kNormalized, StatisticKind::kStudentized};
  const auto r = run_simulation(c);
  ASSERT_EQ(r.sup_rows.size(), 4u);
  EXPECT_EQ(r.sup_rows[0].sup_distance, r.sup_rows[1].sup_distance);
  EXPECT_EQ(r.sup_rows[2].sup_distance, r.sup_rows[3].sup_distance);
  EXPECT_FALSE(r.sup_rows[1].target_exits_unit_interval);
}

TEST(Simulation, BatchErrorAgreesWithSplitHalf) {
  // Root mean square of split-half errors over independent runs versus the
  // mean 20-batch standard error.
  double split_sq = 0, batch = 0;
  const int runs = 10;
  for (int i = 0; i < runs; ++i) {
    SimulationConfig c;
    c.model = {"exponential", {1}};
    c.reps = 4000;
    c.base_seed = 1000 + i;
    c.kinds = {StatisticKind::kStudentized};
    const auto v = simulate_statistic(c, 50);
    const std::span<const double> all(v);
    auto phi = [](double x) { return normal_cdf(x); };
    const double d1 = empirical_cdf_sup_distance(all.first(v.size() / 2), phi);
    const double d2 = empirical_cdf_sup_distance(all.last(v.size() / 2), phi);
    split_sq += (d1 - d2) * (d1 - d2) / 4;
    batch += sup_distance_row(v, 50, StatisticKind::kStudentized, Target::kNormal, nullptr)
                 .mc_standard_error;
  }
  const double split = std::sqrt(split_sq / runs);
  batch /= runs;
  EXPECT_LT(batch, 2 * split);
  EXPECT_GT(batch, split / 2);
}

TEST(Simulation, SymmetricEmpiricalExpansionTracksPhi) {
  SimulationConfig c;
  c.model = {"uniform", {0, 1}};
  c.alpha = 0.25;
  c.beta = 0.75;
  c.n_list = {400};
  c.reps = 20000;
  c.base_seed = 10;
  c.expansion_reps = 50;
  const auto rows = empirical_expansion_study(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].median_sup, rows[0].normal_sup, 0.01);
  EXPECT_EQ(rows[0].replicates + rows[0].variance_degenerate, 50u);
}

TEST(Simulation, ModelWithoutFunctionals) {
  SimulationConfig c;
  c.model = {"atomic", {0.4, 0.3}};
  c.alpha = 0.3;
  c.beta = 0.9;
  c.n_list = {60};
  c.reps = 1000;
  c.base_seed = 12;
  c.kinds = {StatisticKind::kStudentized};
  c.targets = {Target::kNormal, Target::kEmpiricalExpansion};
  c.expansion_reps = 10;
  const auto r = run_simulation(c);
  EXPECT_FALSE(r.population.functionals.has_value());
  EXPECT_EQ(r.sup_rows.size(), 1u);
  EXPECT_EQ(r.empirical_rows.size(), 1u);
  EXPECT_TRUE(std::isnan(r.empirical_rows[0].population_sup));

  c.targets = {Target::kPopulationExpansion};
  EXPECT_THROW(run_simulation(c), ModelError);
  c.targets = {Target::kNormal};
  c.kinds = {StatisticKind::kNormalized};
  EXPECT_THROW(run_simulation(c), ModelError);
}

TEST(BiasStudy, SymmetricCaseIsUnbiased) {
  const auto r = bias_study(make_model("uniform", {0, 1}), TrimLevels::make(0.25, 0.75), 100,
                            100000, 14);
  EXPECT_NEAR(r.beta_n, 0.0, 1e-15);
  EXPECT_LT(std::abs(r.mc_bias), 4 * r.standard_error);
  EXPECT_THROW(bias_study(make_model("uniform", {0, 1}), TrimLevels::make(0.25, 0.75), 100,
                          99999, 14),
               InvalidArgument);
}

TEST(BiasStudy, FractionalIndicesTracked) {
  const auto r = bias_study(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9), 105,
                            200000, 15);
  EXPECT_LT(std::abs(r.z_score), 4.0);
}

TEST(RateStudies, DensityAndMomentErrorsShrink) {
  const auto m = make_model("exponential", {1});
  const auto lv = TrimLevels::make(0.1, 0.9);
  const std::vector<std::size_t> n_list = {100, 1000, 10000};
  const auto d = density_rate_study(m, lv, n_list, 100, false, 16);
  EXPECT_LT(d.log_median_slope, -0.1);
  const auto mom = moment_rate_study(m, lv, n_list, 200, 2, 17);
  EXPECT_LT(mom.log_median_slope, -0.35);
  EXPECT_GT(mom.log_median_slope, -0.65);
  const std::vector<std::size_t> narrow = {100, 200, 400};
  EXPECT_THROW(density_rate_study(m, lv, narrow, 100, false, 16), InvalidArgument);
}

TEST(Targets, NamesRoundTrip) {
  for (auto t : {Target::kNormal, Target::kPopulationExpansion, Target::kEmpiricalExpansion}) {
    EXPECT_EQ(parse_target(target_name(t)), t);
  }
  EXPECT_THROW(parse_target("bootstrap"), InvalidArgument);
  EXPECT_EQ(parse_kind("normalized"), StatisticKind::kNormalized);
  EXPECT_THROW(parse_kind("raw"), InvalidArgument);
}

}  // namespace
}  // namespace trimedge
