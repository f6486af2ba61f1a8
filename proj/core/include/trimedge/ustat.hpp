#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trimedge/distributions.hpp"
#include "trimedge/estimators.hpp"
#include "trimedge/population.hpp"

namespace trimedge {

/// Linear part, degree-two kernel part and variance linearization of the
/// trimmed mean for one simulated sample (true functionals known).
struct UStatDecomposition {
  double l_n = 0;  // N^{-1/2} sum (W_i - mu_W)
  double u_n = 0;  // sum_{i<j} U_{N,(i,j)}
  std::size_t n_alpha = 0;  // #{X_i <= xi_alpha}
  std::size_t n_beta = 0;
  double v_n1 = 0;
  double v_n2 = 0;
};

/// sum_{i<j} a_i a_j with a_i = 1{x_i <= threshold} - nu, through
/// ((sum a)^2 - sum a^2) / 2. Templated on the accumulator so tests can run it
/// in exact arithmetic.
template <class Real>
Real centered_indicator_pair_sum(std::span<const double> x, double threshold, double nu) {
  Real sum = 0;
  Real sum_sq = 0;
  const Real one = 1;
  const Real centre = nu;
  for (double v : x) {
    const Real a = (v <= threshold ? one : Real(0)) - centre;
    sum += a;
    sum_sq += a * a;
  }
  return (sum * sum - sum_sq) / 2;
}

UStatDecomposition decompose(std::span<const double> sample, const PopulationFunctionals& pop);

/// Oriented sum over 1-based order statistics:
/// sum_{i=from}^{to} g(X_i) = P(to) - P(from - 1) with P the prefix sum.
/// Empty when to == from - 1 and negated (over to+1 .. from-1) when to < from - 1.
template <class G>
double oriented_order_sum(const SortedSample& sample, long long from, long long to, G g) {
  auto plain = [&](long long lo, long long hi) {
    double s = 0.0;
    for (long long i = lo; i <= hi; ++i) s += g(sample.order_stat(static_cast<std::size_t>(i)));
    return s;
  };
  if (to >= from) return plain(from, to);
  if (to == from - 1) return 0.0;
  return -plain(to + 1, from - 1);
}

enum class RemainderKind {
  kLemma31,            // Bahadur: X_{k:N} vs xi_alpha - (N_alpha - alpha N)/(N f)
  kCorollary31First,   // (1/N) sum_{k}^{N_alpha} (X_i - xi_alpha)
  kCorollary31Second,  // (1/N) sum_{k}^{N_alpha} (X_i^2 - xi_alpha^2)
  kLemma41,            // trimmed mean minus its U-statistic approximation
  kLemma51,            // S_N^2 - sigma_W^2 - V_N
};

RemainderKind parse_remainder_kind(std::string_view name);
std::string_view remainder_kind_name(RemainderKind kind);

struct RemainderSample {
  std::size_t n = 0;
  double raw_remainder = 0;
  double scaled_remainder = 0;  // raw / (rate of the lemma)
};

/// The rate each remainder is claimed to attain:
/// lemma31, lemma51: (log N / N)^{3/4}; corollary31 variants: (log N / N)^{5/4};
/// lemma41: (log N)^{5/4} N^{-3/4}.
double remainder_rate(RemainderKind kind, std::size_t n);

/// Centering used for the Lemma 4.1 remainder: E of N^{-1/2} sum_{k}^{m} X_{i:N}
/// from the bias expansion, sqrt(N) ((m-k+1)/N) (mu + beta_N / (beta - alpha)).
double lemma41_centering(const PopulationFunctionals& pop, const TrimSpec& spec);

RemainderSample bahadur_remainder(std::span<const double> sample, const PopulationFunctionals& pop,
                                  const TrimSpec& spec, RemainderKind kind);

/// Monte Carlo check of Var(L_N + U_N) ~ sigma_W^2 and of the standardized
/// third moment ~ (lambda1 + 3 lambda2) / sqrt(N).
struct MomentCheckReport {
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t base_seed = 0;
  double mean = 0, mean_se = 0;
  double variance = 0, variance_se = 0;
  double sigma2_W = 0;
  double skewness = 0, skewness_se = 0;
  double skewness_theory = 0;  // (lambda1 + 3 lambda2) / sqrt(N)
};

/// Requires reps >= 10^4 (InvalidArgument otherwise).
MomentCheckReport third_moment_check(const DistributionModel& model,
                                     const PopulationFunctionals& pop, std::size_t n,
                                     std::size_t reps, std::uint64_t base_seed,
                                     unsigned workers = 0);

/// Per-N quantiles of |remainder| over replicates.
struct RemainderRow {
  std::size_t n = 0;
  std::size_t reps = 0;
  double median_abs_raw = 0;
  double p90_abs_raw = 0;
  double p99_abs_raw = 0;
  double median_abs_scaled = 0;
  double p99_abs_scaled = 0;
};

struct RemainderStudy {
  RemainderKind kind{};
  std::uint64_t base_seed = 0;
  std::vector<RemainderRow> rows;
  double log_median_slope = 0;  // least-squares slope of log median |raw| on log N
  double p99_scaled_ratio = 0;  // max / min of p99_abs_scaled across N
};

RemainderStudy remainder_study(const DistributionModel& model, const TrimLevels& levels,
                               std::span<const std::size_t> n_list, std::size_t reps,
                               RemainderKind kind, std::uint64_t base_seed, unsigned workers = 0);

}  // namespace trimedge
