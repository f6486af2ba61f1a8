#pragma once

#include "trimedge/distributions.hpp"
#include "trimedge/trim.hpp"

namespace trimedge {

/// Population side of every comparison: trimming quantiles, densities there,
/// the trimmed location mu(alpha, beta) and the Winsorized cumulants.
struct PopulationFunctionals {
  TrimLevels levels;
  double xi_alpha;
  double xi_beta;
  double f_alpha;
  double f_beta;
  double mu_trim;   // (beta - alpha)^{-1} * integral_alpha^beta F^{-1}(u) du
  double mu_W;      // E Q(U)
  double sigma2_W;  // Var Q(U)
  double gamma3_W;  // E (Q(U) - mu_W)^3
  double delta2_W;
  double lambda1;   // gamma3_W / sigma_W^3
  double lambda2;   // delta2_W / sigma_W^3
  double quad_tol;

  double sigma_W() const;
};

/// Q(u): xi_alpha for u <= alpha, F^{-1}(u) on (alpha, beta], xi_beta above.
double winsorized_transform(const DistributionModel& model, const TrimLevels& levels, double u);

/// Absolute tolerance targeted by the adaptive quadrature.
inline constexpr double kQuadratureTolerance = 1e-10;

/// Evaluates all functionals. The integrals of (Q(u) - c)^r over (0, 1) reduce
/// to point masses alpha, 1 - beta at the trimming quantiles plus an adaptive
/// Gauss-Kronrod integral of the quantile function over (alpha, beta).
///
/// Throws ModelError when the density is undefined, zero or infinite at a
/// trimming quantile or when xi_alpha == xi_beta, and NumericalError when the
/// quadrature misses its tolerance.
/// mu(alpha, beta) alone. Needs no density, so it also works for atomic models.
double trimmed_population_mean(const DistributionModel& model, const TrimLevels& levels);

PopulationFunctionals compute_functionals(const DistributionModel& model, const TrimLevels& levels);

/// r-th raw moment of the Winsorized variable, integral_0^1 Q(u)^r du.
double winsorized_raw_moment(const DistributionModel& model, const TrimLevels& levels, int r);

/// Bias term beta_N of the trimmed mean: (beta - alpha)(E T_N - mu) up to
/// O(N^{-3/2}). Uses snapped fractional parts of alpha N and beta N.
double bias_term(const PopulationFunctionals& pop, const TrimSpec& spec);

}  // namespace trimedge
