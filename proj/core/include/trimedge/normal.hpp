#pragma once

namespace trimedge {

/// Complementary error function, W. J. Cody's rational Chebyshev
/// approximations (Math. Comp. 1969). Relative error below 1e-15 over the
/// double range.
double erfc_cody(double x);

/// Standard normal distribution function; absolute error < 1e-15 and
/// relative error ~1e-15 in the lower tail.
double normal_cdf(double x);

double normal_pdf(double x);

/// Inverse of normal_cdf on (0, 1): Acklam's rational starting value followed
/// by one Halley step against normal_cdf.
double normal_quantile(double p);

}  // namespace trimedge
