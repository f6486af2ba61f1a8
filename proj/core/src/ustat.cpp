#include "trimedge/ustat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trimedge/errors.hpp"
#include "trimedge/parallel.hpp"
#include "trimedge/rng.hpp"
#include "trimedge/summary.hpp"

namespace trimedge {
namespace {

double winsorize(const PopulationFunctionals& pop, double x) {
  if (x <= pop.xi_alpha) return pop.xi_alpha;
  if (x > pop.xi_beta) return pop.xi_beta;
  return x;
}

std::size_t count_at_most(const SortedSample& s, double threshold) {
  const auto v = s.values();
  return static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), threshold) - v.begin());
}

}  // namespace

UStatDecomposition decompose(std::span<const double> sample, const PopulationFunctionals& pop) {
  if (sample.empty()) throw InvalidArgument("decompose needs a nonempty sample");
  const double a = pop.levels.alpha;
  const double b = pop.levels.beta;
  const double n = static_cast<double>(sample.size());

  UStatDecomposition d;
  double linear = 0.0;
  double second = 0.0;
  for (double x : sample) {
    const double w = winsorize(pop, x) - pop.mu_W;
    linear += w;
    second += w * w - pop.sigma2_W;
    if (x <= pop.xi_alpha) ++d.n_alpha;
    if (x <= pop.xi_beta) ++d.n_beta;
  }
  d.l_n = linear / std::sqrt(n);

  const double pairs_alpha = centered_indicator_pair_sum<double>(sample, pop.xi_alpha, a);
  const double pairs_beta = centered_indicator_pair_sum<double>(sample, pop.xi_beta, b);
  d.u_n = (-pairs_alpha / pop.f_alpha + pairs_beta / pop.f_beta) / (n * std::sqrt(n));

  const double dev_alpha = (static_cast<double>(d.n_alpha) - a * n) / n;
  const double dev_beta = (static_cast<double>(d.n_beta) - b * n) / n;
  d.v_n1 = 2.0 * a / pop.f_alpha * dev_alpha * (pop.mu_W - pop.xi_alpha) +
           2.0 * (1.0 - b) / pop.f_beta * dev_beta * (pop.mu_W - pop.xi_beta);
  d.v_n2 = second / n;
  return d;
}

RemainderKind parse_remainder_kind(std::string_view name) {
  if (name == "lemma31") return RemainderKind::kLemma31;
  if (name == "corollary31_first") return RemainderKind::kCorollary31First;
  if (name == "corollary31_second") return RemainderKind::kCorollary31Second;
  if (name == "lemma41") return RemainderKind::kLemma41;
  if (name == "lemma51") return RemainderKind::kLemma51;
  throw InvalidArgument("unknown diagnostic '" + std::string(name) + "'");
}

std::string_view remainder_kind_name(RemainderKind kind) {
  switch (kind) {
    case RemainderKind::kLemma31: return "lemma31";
    case RemainderKind::kCorollary31First: return "corollary31_first";
    case RemainderKind::kCorollary31Second: return "corollary31_second";
    case RemainderKind::kLemma41: return "lemma41";
    case RemainderKind::kLemma51: return "lemma51";
  }
  return "unknown";
}

double remainder_rate(RemainderKind kind, std::size_t n) {
  const double dn = static_cast<double>(n);
  const double log_n = std::log(dn);
  switch (kind) {
    case RemainderKind::kLemma31:
    case RemainderKind::kLemma51:
      return std::pow(log_n / dn, 0.75);
    case RemainderKind::kCorollary31First:
    case RemainderKind::kCorollary31Second:
      return std::pow(log_n / dn, 1.25);
    case RemainderKind::kLemma41:
      return std::pow(log_n, 1.25) * std::pow(dn, -0.75);
  }
  return 1.0;
}

double lemma41_centering(const PopulationFunctionals& pop, const TrimSpec& spec) {
  const double n = static_cast<double>(spec.n());
  const double expected_mean = pop.mu_trim + bias_term(pop, spec) / (spec.beta() - spec.alpha());
  return std::sqrt(n) * (static_cast<double>(spec.kept()) / n) * expected_mean;
}

RemainderSample bahadur_remainder(std::span<const double> raw, const PopulationFunctionals& pop,
                                  const TrimSpec& spec, RemainderKind kind) {
  const SortedSample s = SortedSample::from(raw);
  if (s.n() != spec.n()) throw InvalidArgument("trim spec does not match the sample size");
  const double n = static_cast<double>(s.n());
  const double a = spec.alpha();
  const double xa = pop.xi_alpha;
  const auto n_alpha = static_cast<long long>(count_at_most(s, xa));
  const auto k = static_cast<long long>(spec.k());
  const double dev = static_cast<double>(n_alpha) - a * n;

  double r = 0.0;
  switch (kind) {
    case RemainderKind::kLemma31:
      r = s.order_stat(spec.k()) - xa + dev / (n * pop.f_alpha);
      break;
    case RemainderKind::kCorollary31First:
      r = oriented_order_sum(s, k, n_alpha, [xa](double x) { return x - xa; }) / n +
          dev * dev / (2.0 * n * n * pop.f_alpha);
      break;
    case RemainderKind::kCorollary31Second:
      r = oriented_order_sum(s, k, n_alpha, [xa](double x) { return x * x - xa * xa; }) / n +
          dev * dev / (n * n) * xa / pop.f_alpha;
      break;
    case RemainderKind::kLemma41: {
      double kept = 0.0;
      for (std::size_t i = spec.k(); i <= spec.m(); ++i) kept += s.order_stat(i);
      const auto d = decompose(raw, pop);
      r = kept / std::sqrt(n) - lemma41_centering(pop, spec) - (d.l_n + d.u_n);
      break;
    }
    case RemainderKind::kLemma51: {
      const auto mom = plugin_mu_s2(s, spec);
      const auto d = decompose(raw, pop);
      r = mom.s2_n - pop.sigma2_W - (d.v_n1 + d.v_n2);
      break;
    }
  }
  return {s.n(), r, r / remainder_rate(kind, s.n())};
}

MomentCheckReport third_moment_check(const DistributionModel& model,
                                     const PopulationFunctionals& pop, std::size_t n,
                                     std::size_t reps, std::uint64_t base_seed, unsigned workers) {
  if (reps < 10000) throw InvalidArgument("third_moment_check needs reps >= 10^4");
  if (n < 2) throw InvalidArgument("third_moment_check needs n >= 2");
  std::vector<double> z(reps);
  parallel_for(reps, workers, [&](std::size_t r) {
    auto stream = replicate_stream(base_seed, n, r);
    const auto x = sample(model, n, stream);
    const auto d = decompose(x, pop);
    z[r] = d.l_n + d.u_n;
  });

  const double m = static_cast<double>(reps);
  std::vector<double> z2(reps), z3(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    z2[i] = z[i] * z[i];
    z3[i] = z2[i] * z[i];
  }
  MomentCheckReport rep;
  rep.n = n;
  rep.reps = reps;
  rep.base_seed = base_seed;
  rep.sigma2_W = pop.sigma2_W;
  rep.mean = mean_of(z);
  rep.mean_se = sd_of(z) / std::sqrt(m);
  // L_N + U_N is exactly centred, so moments are taken about zero.
  const double m2 = mean_of(z2);
  const double m3 = mean_of(z3);
  rep.variance = m2;
  rep.variance_se = sd_of(z2) / std::sqrt(m);
  rep.skewness = m3 / std::pow(m2, 1.5);
  // Delta method for m3 / m2^{3/2}.
  double c22 = 0, c33 = 0, c23 = 0;
  for (std::size_t i = 0; i < reps; ++i) {
    c22 += (z2[i] - m2) * (z2[i] - m2);
    c33 += (z3[i] - m3) * (z3[i] - m3);
    c23 += (z2[i] - m2) * (z3[i] - m3);
  }
  c22 /= m - 1;
  c33 /= m - 1;
  c23 /= m - 1;
  const double g3 = 1.0 / std::pow(m2, 1.5);
  const double g2 = -1.5 * m3 / std::pow(m2, 2.5);
  rep.skewness_se = std::sqrt((g3 * g3 * c33 + g2 * g2 * c22 + 2 * g2 * g3 * c23) / m);
  rep.skewness_theory = (pop.lambda1 + 3.0 * pop.lambda2) / std::sqrt(static_cast<double>(n));
  return rep;
}

RemainderStudy remainder_study(const DistributionModel& model, const TrimLevels& levels,
                               std::span<const std::size_t> n_list, std::size_t reps,
                               RemainderKind kind, std::uint64_t base_seed, unsigned workers) {
  if (n_list.size() < 2) throw InvalidArgument("remainder_study needs at least two sample sizes");
  if (reps < 100) throw InvalidArgument("remainder_study needs reps >= 100");
  const auto pop = compute_functionals(model, levels);
  RemainderStudy study;
  study.kind = kind;
  study.base_seed = base_seed;
  std::vector<double> log_n, log_med;
  for (std::size_t n : n_list) {
    const TrimSpec spec(levels, n);
    std::vector<double> raw(reps), scaled(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
      auto stream = replicate_stream(base_seed, n, r);
      const auto x = sample(model, n, stream);
      const auto rem = bahadur_remainder(x, pop, spec, kind);
      raw[r] = std::abs(rem.raw_remainder);
      scaled[r] = std::abs(rem.scaled_remainder);
    });
    RemainderRow row;
    row.n = n;
    row.reps = reps;
    row.median_abs_raw = median_of(raw);
    row.p90_abs_raw = quantile_of(raw, 0.90);
    row.p99_abs_raw = quantile_of(raw, 0.99);
    row.median_abs_scaled = median_of(scaled);
    row.p99_abs_scaled = quantile_of(scaled, 0.99);
    study.rows.push_back(row);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_med.push_back(std::log(row.median_abs_raw));
  }
  study.log_median_slope = ls_slope(log_n, log_med);
  double lo = study.rows.front().p99_abs_scaled, hi = lo;
  for (const auto& row : study.rows) {
    lo = std::min(lo, row.p99_abs_scaled);
    hi = std::max(hi, row.p99_abs_scaled);
  }
  study.p99_scaled_ratio = hi / lo;
  return study;
}

}  // namespace trimedge
