#pragma once

#include <span>
#include <vector>

namespace trimedge {

double mean_of(std::span<const double> x);
/// Sample standard deviation (divisor n - 1).
double sd_of(std::span<const double> x);
/// Linear-interpolation quantile (Hyndman-Fan type 7) of unsorted data.
double quantile_of(std::vector<double> x, double p);
double median_of(std::vector<double> x);
/// Least-squares slope of y on x.
double ls_slope(std::span<const double> x, std::span<const double> y);

}  // namespace trimedge
