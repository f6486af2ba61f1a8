#include "trimedge/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trimedge/errors.hpp"

namespace trimedge {
namespace {

void check_size(const SortedSample& sample, const TrimSpec& spec) {
  if (sample.n() != spec.n()) {
    throw InvalidArgument("trim spec built for n=" + std::to_string(spec.n()) +
                          " applied to a sample of size " + std::to_string(sample.n()));
  }
}

// Weighted sum over the three blocks of the Winsorized plug-in:
// (k/N) g(X_k) + (1/N) sum_{k<i<m} g(X_i) + ((N-m+1)/N) g(X_m).
// When k == m both boundary blocks use the same order statistic.
template <class G>
double three_block(const SortedSample& s, const TrimSpec& spec, G g) {
  const std::size_t k = spec.k();
  const std::size_t m = spec.m();
  const double n = static_cast<double>(s.n());
  double middle = 0.0;
  for (std::size_t i = k + 1; i + 1 <= m; ++i) middle += g(s.order_stat(i));
  return (static_cast<double>(k) * g(s.order_stat(k)) + middle +
          static_cast<double>(s.n() - m + 1) * g(s.order_stat(m))) /
         n;
}

std::size_t count_within(std::span<const double> v, std::size_t r, auto inside) {
  const std::size_t idx = r - 1;
  const double centre = v[idx];
  // inside(d) is monotone in |d| on each side of the centre in a sorted sample.
  std::size_t lo = idx;
  {
    std::size_t first = 0, last = idx;  // find smallest j in [0, idx] with inside
    while (first < last) {
      const std::size_t mid = first + (last - first) / 2;
      if (inside(centre - v[mid])) last = mid; else first = mid + 1;
    }
    lo = first;
  }
  std::size_t hi;
  {
    std::size_t first = idx, last = v.size() - 1;  // largest j in [idx, N-1] with inside
    while (first < last) {
      const std::size_t mid = first + (last - first + 1) / 2;
      if (inside(v[mid] - centre)) first = mid; else last = mid - 1;
    }
    hi = first;
  }
  return hi - lo + 1;
}

}  // namespace

SortedSample::SortedSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InvalidArgument("a sample needs at least 2 observations");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("sample contains a non-finite value");
  }
  std::stable_sort(values_.begin(), values_.end());
}

SortedSample::SortedSample(std::vector<double> values, AlreadySorted) : values_(std::move(values)) {}

SortedSample SortedSample::from(std::span<const double> values) {
  return SortedSample(std::vector<double>(values.begin(), values.end()));
}

double trimmed_mean(const SortedSample& sample, const TrimSpec& spec) {
  check_size(sample, spec);
  double sum = 0.0;
  for (std::size_t i = spec.k(); i <= spec.m(); ++i) sum += sample.order_stat(i);
  return sum / static_cast<double>(spec.kept());
}

SortedSample winsorize_sample(const SortedSample& sample, double lower, double upper) {
  if (lower > upper) throw InvalidArgument("winsorize_sample: lower > upper");
  std::vector<double> out(sample.values().begin(), sample.values().end());
  for (double& v : out) {
    if (v <= lower) v = lower;
    else if (v > upper) v = upper;
  }
  return SortedSample(std::move(out), SortedSample::AlreadySorted{});
}

WinsorizedMoments plugin_mu_s2(const SortedSample& sample, const TrimSpec& spec) {
  check_size(sample, spec);
  const double mu = three_block(sample, spec, [](double x) { return x; });
  // Second moment about mu_hat rather than E X^2 - mu^2: algebraically identical
  // for these weights (they sum to 1 when k < m) and free of cancellation.
  double s2 = three_block(sample, spec, [mu](double x) { return (x - mu) * (x - mu); });
  if (spec.k() == spec.m()) {
    // Weights sum to (N+1)/N; keep the literal raw-moment form.
    s2 = three_block(sample, spec, [](double x) { return x * x; }) - mu * mu;
  }
  s2 = std::max(s2, 0.0);
  return {mu, s2, s2 == 0.0};
}

double plugin_raw_moment(const SortedSample& sample, const TrimSpec& spec, int r) {
  check_size(sample, spec);
  return three_block(sample, spec, [r](double x) { return std::pow(x, r); });
}

double plugin_gamma3(const SortedSample& sample, const TrimSpec& spec) {
  const double mu = plugin_mu_s2(sample, spec).mu_hat_W;
  return three_block(sample, spec, [mu](double x) {
    const double d = x - mu;
    return d * d * d;
  });
}

double lambda1_hat(const SortedSample& sample, const TrimSpec& spec) {
  const auto mom = plugin_mu_s2(sample, spec);
  if (mom.degenerate) throw DegenerateData("zero Winsorized variance: lambda1_hat undefined");
  return plugin_gamma3(sample, spec) / (mom.s2_n * std::sqrt(mom.s2_n));
}

double kernel_density_at_quantile(const SortedSample& sample, std::size_t r) {
  if (r < 1 || r > sample.n()) throw InvalidArgument("order index out of range");
  const double n = static_cast<double>(sample.n());
  const double root4 = std::pow(n, 0.25);
  const std::size_t count = count_within(sample.values(), r, [root4](double d) {
    return 2.0 * root4 * std::abs(d) <= 1.0;
  });
  return static_cast<double>(count) * std::pow(n, -0.75);
}

double kernel_density_at_quantile(const SortedSample& sample, std::size_t r, double width) {
  if (r < 1 || r > sample.n()) throw InvalidArgument("order index out of range");
  if (!(width > 0.0)) throw InvalidArgument("kernel width must be positive");
  const double half = width / 2.0;
  const std::size_t count =
      count_within(sample.values(), r, [half](double d) { return std::abs(d) <= half; });
  return static_cast<double>(count) / (static_cast<double>(sample.n()) * width);
}

namespace {

Lambda2Beta lambda2_beta_from(const SortedSample& sample, const TrimSpec& spec, double mu_hat,
                              double s2, double t_n, double f_alpha, double f_beta,
                              BetaHatVariant variant) {
  const double a = spec.alpha();
  const double b = spec.beta();
  const double xk = sample.order_stat(spec.k());
  const double xm = sample.order_stat(spec.m());
  const double s3 = s2 * std::sqrt(s2);
  const double lambda2 = (-a * a / f_alpha * (mu_hat - xk) * (mu_hat - xk) +
                          (1.0 - b) * (1.0 - b) / f_beta * (mu_hat - xm) * (mu_hat - xm)) /
                         s3;
  const double f_upper = variant == BetaHatVariant::kAsPrinted ? f_alpha : f_beta;
  const double beta_n = (-spec.alpha_fraction() * (t_n - xk) - 0.5 * a * (1.0 - a) / f_alpha +
                         spec.beta_fraction() * (t_n - xm) + 0.5 * b * (1.0 - b) / f_upper) /
                        static_cast<double>(spec.n());
  return {lambda2, beta_n};
}

}  // namespace

Lambda2Beta plugin_lambda2_beta(const SortedSample& sample, const TrimSpec& spec,
                                BetaHatVariant variant) {
  const auto mom = plugin_mu_s2(sample, spec);
  if (mom.degenerate) throw DegenerateData("zero Winsorized variance: lambda2_hat undefined");
  const double fa = kernel_density_at_quantile(sample, spec.k());
  const double fb = kernel_density_at_quantile(sample, spec.m());
  if (!(fa > 0.0) || !(fb > 0.0)) throw DegenerateData("density estimate degenerate");
  return lambda2_beta_from(sample, spec, mom.mu_hat_W, mom.s2_n, trimmed_mean(sample, spec), fa,
                           fb, variant);
}

double studentized_statistic(const SortedSample& sample, const TrimSpec& spec, double mu0) {
  const auto mom = plugin_mu_s2(sample, spec);
  if (mom.degenerate) throw DegenerateData("zero Winsorized variance: cannot Studentize");
  const double t = trimmed_mean(sample, spec);
  const double n = static_cast<double>(spec.n());
  return std::sqrt(n) * (t - mu0) * (spec.beta() - spec.alpha()) / std::sqrt(mom.s2_n);
}

double PluginEstimates::s_n() const { return std::sqrt(s2_n); }

PluginEstimates compute_plugins(const SortedSample& sample, const TrimSpec& spec,
                                BetaHatVariant variant) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  PluginEstimates est;
  est.n = sample.n();
  est.t_n = trimmed_mean(sample, spec);
  const auto mom = plugin_mu_s2(sample, spec);
  est.mu_hat_W = mom.mu_hat_W;
  est.s2_n = mom.s2_n;
  est.delta = std::pow(static_cast<double>(sample.n()), -0.25);
  est.f_hat_alpha = kernel_density_at_quantile(sample, spec.k());
  est.f_hat_beta = kernel_density_at_quantile(sample, spec.m());
  est.variance_degenerate = mom.degenerate;
  est.density_degenerate = !(est.f_hat_alpha > 0.0) || !(est.f_hat_beta > 0.0);
  if (est.variance_degenerate) {
    est.lambda1_hat = est.lambda2_hat = est.beta_n_hat = kNaN;
    return est;
  }
  est.lambda1_hat = plugin_gamma3(sample, spec) / (est.s2_n * std::sqrt(est.s2_n));
  if (est.density_degenerate) {
    est.lambda2_hat = est.beta_n_hat = kNaN;
    return est;
  }
  const auto lb = lambda2_beta_from(sample, spec, est.mu_hat_W, est.s2_n, est.t_n,
                                    est.f_hat_alpha, est.f_hat_beta, variant);
  est.lambda2_hat = lb.lambda2_hat;
  est.beta_n_hat = lb.beta_n_hat;
  return est;
}

}  // namespace trimedge
