#include "trimedge/summary.hpp"

#include <algorithm>
#include <cmath>

#include "trimedge/errors.hpp"

namespace trimedge {

double mean_of(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("mean of empty data");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sd_of(std::span<const double> x) {
  if (x.size() < 2) throw InvalidArgument("standard deviation needs two values");
  const double mu = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double quantile_of(std::vector<double> x, double p) {
  if (x.empty()) throw InvalidArgument("quantile of empty data");
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

double median_of(std::vector<double> x) { return quantile_of(std::move(x), 0.5); }

double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("ls_slope needs paired data");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace trimedge
