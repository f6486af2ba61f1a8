#include "trimedge/sup_distance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "trimedge/errors.hpp"

namespace trimedge {

double sorted_cdf_sup_distance(std::span<const double> v,
                               const std::function<double(double)>& target,
                               std::span<const double> extra_points) {
  if (v.empty()) throw InvalidArgument("sup distance needs at least one value");
  const double m = static_cast<double>(v.size());
  double sup = 0.0;
  // One jump per distinct value: F_M goes from lo/M (left limit) to hi/M.
  // The left limit is compared with target just below the jump, which is
  // target(x) itself for a continuous target.
  for (std::size_t lo = 0; lo < v.size();) {
    std::size_t hi = lo + 1;
    while (hi < v.size() && v[hi] == v[lo]) ++hi;
    const double x = v[lo];
    const double at = target(x);
    const double below = target(std::nextafter(x, -HUGE_VAL));
    sup = std::max({sup, std::abs(static_cast<double>(hi) / m - at),
                    std::abs(static_cast<double>(lo) / m - below)});
    lo = hi;
  }
  for (double x : extra_points) {
    const auto count = std::upper_bound(v.begin(), v.end(), x) - v.begin();
    sup = std::max(sup, std::abs(static_cast<double>(count) / m - target(x)));
  }
  return sup;
}

double empirical_cdf_sup_distance(std::span<const double> values,
                                  const std::function<double(double)>& target,
                                  std::span<const double> extra_points) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_cdf_sup_distance(sorted, target, extra_points);
}

}  // namespace trimedge
