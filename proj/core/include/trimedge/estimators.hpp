#pragma once

#include <span>
#include <vector>

#include "trimedge/trim.hpp"

namespace trimedge {

/// Order statistics of one sample. Sorting happens once, at construction.
class SortedSample {
 public:
  /// Throws InvalidArgument for fewer than 2 values or non-finite entries.
  explicit SortedSample(std::vector<double> values);
  static SortedSample from(std::span<const double> values);

  std::size_t n() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  /// 1-based order statistic X_{i:N}.
  double order_stat(std::size_t i) const { return values_[i - 1]; }

 private:
  struct AlreadySorted {};
  SortedSample(std::vector<double> values, AlreadySorted);

  std::vector<double> values_;

  friend SortedSample winsorize_sample(const SortedSample&, double, double);
};

/// T_N: mean of X_{k:N}, ..., X_{m:N}.
double trimmed_mean(const SortedSample& sample, const TrimSpec& spec);

/// Values <= lower become lower, values > upper become upper.
SortedSample winsorize_sample(const SortedSample& sample, double lower, double upper);

struct WinsorizedMoments {
  double mu_hat_W;
  double s2_n;
  bool degenerate;  // s2_n == 0
};

/// Three-block plug-in mean and variance with weights k/N, 1/N, (N-m+1)/N.
WinsorizedMoments plugin_mu_s2(const SortedSample& sample, const TrimSpec& spec);

/// r-th raw plug-in moment of the Winsorized variable (same weighting).
double plugin_raw_moment(const SortedSample& sample, const TrimSpec& spec, int r);

/// Third central plug-in moment gamma_hat_{3,W}.
double plugin_gamma3(const SortedSample& sample, const TrimSpec& spec);

/// S_N^{-3} gamma_hat_{3,W}. Throws DegenerateData when S_N = 0.
double lambda1_hat(const SortedSample& sample, const TrimSpec& spec);

/// Step-kernel density estimate at X_{r:N} with width N^{-1/4}:
/// N^{-3/4} #{i : 2 N^{1/4} |X_i - X_{r:N}| <= 1}.
double kernel_density_at_quantile(const SortedSample& sample, std::size_t r);

/// Same estimator with an explicit kernel width:
/// (N width)^{-1} #{i : |X_i - X_{r:N}| <= width / 2}.
double kernel_density_at_quantile(const SortedSample& sample, std::size_t r, double width);

/// Which density enters the beta-term of beta_hat_N. The printed estimator
/// reuses f_hat(xi_alpha) there; the default mirrors the population bias term
/// and uses f_hat(xi_beta).
enum class BetaHatVariant { kMatchesPopulation, kAsPrinted };

struct Lambda2Beta {
  double lambda2_hat;
  double beta_n_hat;
};

/// Throws DegenerateData when S_N = 0 or a density estimate is zero.
Lambda2Beta plugin_lambda2_beta(const SortedSample& sample, const TrimSpec& spec,
                                BetaHatVariant variant = BetaHatVariant::kMatchesPopulation);

/// sqrt(N) (T_N - mu0) / ((beta - alpha)^{-1} S_N). Throws DegenerateData when
/// S_N = 0.
double studentized_statistic(const SortedSample& sample, const TrimSpec& spec, double mu0);

/// All plug-ins from one sample. Degeneracies are flagged rather than thrown:
/// lambda fields are NaN when S_N = 0 and lambda2/beta are NaN when a density
/// estimate vanishes.
struct PluginEstimates {
  double t_n = 0;
  double mu_hat_W = 0;
  double s2_n = 0;
  double f_hat_alpha = 0;
  double f_hat_beta = 0;
  double lambda1_hat = 0;
  double lambda2_hat = 0;
  double beta_n_hat = 0;
  double delta = 0;  // kernel width N^{-1/4}
  std::size_t n = 0;
  bool variance_degenerate = false;
  bool density_degenerate = false;

  double s_n() const;
};

PluginEstimates compute_plugins(const SortedSample& sample, const TrimSpec& spec,
                                BetaHatVariant variant = BetaHatVariant::kMatchesPopulation);

}  // namespace trimedge
