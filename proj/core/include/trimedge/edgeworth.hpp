#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trimedge/estimators.hpp"
#include "trimedge/population.hpp"

namespace trimedge {

enum class StatisticKind { kNormalized, kStudentized };
enum class CoefficientSource { kPopulation, kEmpirical };

/// One-term Edgeworth expansion of the normalized (G_N) or Studentized (H_N)
/// trimmed mean:
///
///   G_N(x) = Phi(x) - phi(x)/(6 sqrt N) [(l1 + 3 l2)(x^2 - 1) + 6 b]
///   H_N(x) = Phi(x) + phi(x)/(6 sqrt N) [(2x^2 + 1) l1 + 3(x^2 + 1) l2 - 6 b]
///
/// with b = bias_over_sigma = N beta_N / sigma_W (or its plug-in N beta_hat_N / S_N).
struct ExpansionCoefficients {
  double lambda1 = 0;
  double lambda2 = 0;
  double bias_over_sigma = 0;
  std::size_t n = 1;
  StatisticKind kind = StatisticKind::kNormalized;
  CoefficientSource source = CoefficientSource::kPopulation;

  /// The correction written as phi(x) (a x^2 + c) / (6 sqrt N).
  double quadratic_coefficient() const;
  double constant_coefficient() const;
};

/// Raw expansion value; may leave [0, 1] in the far tails.
double expansion_cdf(const ExpansionCoefficients& c, double x);

/// phi(x) (a x^2 + c) / (6 sqrt N), the N^{-1/2} correction alone.
double expansion_correction(const ExpansionCoefficients& c, double x);

/// Running maximum of the raw expansion from -infinity: a nondecreasing
/// envelope used for inversion.
double monotonized_expansion_cdf(const ExpansionCoefficients& c, double x);

/// Real zeros of the expansion derivative (sorted), i.e. its local extrema.
std::vector<double> expansion_stationary_points(const ExpansionCoefficients& c);

/// Zeros of the derivative of phi(x)(a x^2 + c): x = 0 and +-sqrt((2a - c)/a).
std::vector<double> correction_stationary_points(const ExpansionCoefficients& c);

ExpansionCoefficients population_expansion(const PopulationFunctionals& pop, const TrimSpec& spec,
                                           StatisticKind kind);

/// Plug-in coefficients. When the density estimate is degenerate the lambda2
/// and bias terms are dropped (Phi plus the lambda1 term) and `warnings` says so.
/// Throws DegenerateData when S_N = 0.
struct EmpiricalExpansion {
  ExpansionCoefficients coefficients;
  std::vector<std::string> warnings;
};
EmpiricalExpansion empirical_expansion(const PluginEstimates& est, StatisticKind kind);

/// Quantile of the monotonized expansion for 0.001 <= p <= 0.999, found by
/// bracketing and bisection to 1e-12 in x.
struct InversionResult {
  double x = 0;
  bool fell_back = false;  // raw expansion crosses p more than once; x = Phi^{-1}(p)
  std::string warning;
};
InversionResult invert_expansion(const ExpansionCoefficients& c, double p);

}  // namespace trimedge
