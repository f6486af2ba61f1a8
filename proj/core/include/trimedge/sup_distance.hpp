#pragma once

#include <functional>
#include <span>

namespace trimedge {

/// Kolmogorov distance sup_x |F_M(x) - target(x)| between the empirical cdf of
/// `values` and a target.
///
/// With a nondecreasing target the sup is attained at a jump point, from the
/// left or the right, so the jump points alone give the exact value. The left
/// limit of F_M is compared with the target just below the jump, so a
/// right-continuous step target (another empirical cdf) is also handled. A target
/// that is not monotone can also peak between jumps; pass its local extrema in
/// `extra_points` and they are evaluated against the empirical cdf too.
double empirical_cdf_sup_distance(std::span<const double> values,
                                  const std::function<double(double)>& target,
                                  std::span<const double> extra_points = {});

/// Same, for values already sorted ascending (no copy).
double sorted_cdf_sup_distance(std::span<const double> sorted_values,
                               const std::function<double(double)>& target,
                               std::span<const double> extra_points = {});

}  // namespace trimedge
