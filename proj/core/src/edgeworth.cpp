#include "trimedge/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trimedge/errors.hpp"
#include "trimedge/normal.hpp"

namespace trimedge {
namespace {

double six_root_n(const ExpansionCoefficients& c) {
  return 6.0 * std::sqrt(static_cast<double>(c.n));
}

// Real roots of t^3 + p t + q = 0.
std::vector<double> depressed_cubic_roots(double p, double q) {
  std::vector<double> roots;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  if (disc > 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int j = 0; j < 3; ++j) roots.push_back(r * std::cos(theta - 2.0 * std::numbers::pi * j / 3.0));
  } else {
    const double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s));
  }
  return roots;
}

// g(x) = 6 sqrt N + (2a - c) x - a x^3, proportional to E'(x) / phi(x).
double derivative_factor(const ExpansionCoefficients& c, double x) {
  const double a = c.quadratic_coefficient();
  const double k = c.constant_coefficient();
  return six_root_n(c) + (2.0 * a - k) * x - a * x * x * x;
}

struct Extremum {
  double x;
  bool is_max;
};

std::vector<Extremum> extrema(const ExpansionCoefficients& c) {
  std::vector<Extremum> out;
  const double a = c.quadratic_coefficient();
  const double slope = 2.0 * a - c.constant_coefficient();
  for (double x : expansion_stationary_points(c)) {
    const double curvature = slope - 3.0 * a * x * x;  // g'(x)
    if (curvature != 0.0) out.push_back({x, curvature < 0.0});
  }
  return out;
}

}  // namespace

double ExpansionCoefficients::quadratic_coefficient() const {
  if (kind == StatisticKind::kNormalized) return -(lambda1 + 3.0 * lambda2);
  return 2.0 * lambda1 + 3.0 * lambda2;
}

// Same for both kinds: G_N's -(l1 + 3 l2)(x^2 - 1) and H_N's (2x^2 + 1) l1 +
// 3(x^2 + 1) l2 leave identical constants.
double ExpansionCoefficients::constant_coefficient() const {
  return lambda1 + 3.0 * lambda2 - 6.0 * bias_over_sigma;
}

double expansion_correction(const ExpansionCoefficients& c, double x) {
  if (c.kind == StatisticKind::kNormalized) {
    return -normal_pdf(x) / six_root_n(c) *
           ((c.lambda1 + 3.0 * c.lambda2) * (x * x - 1.0) + 6.0 * c.bias_over_sigma);
  }
  return normal_pdf(x) / six_root_n(c) *
         ((2.0 * x * x + 1.0) * c.lambda1 + 3.0 * (x * x + 1.0) * c.lambda2 -
          6.0 * c.bias_over_sigma);
}

double expansion_cdf(const ExpansionCoefficients& c, double x) {
  return normal_cdf(x) + expansion_correction(c, x);
}

std::vector<double> expansion_stationary_points(const ExpansionCoefficients& c) {
  const double a = c.quadratic_coefficient();
  const double slope = 2.0 * a - c.constant_coefficient();
  const double lead = six_root_n(c);
  std::vector<double> roots;
  // Near-zero cubic coefficient: the cubic roots run off to +-infinity and
  // only the linear root is numerically meaningful.
  const double scale = std::max({std::abs(slope), lead, 1.0});
  if (std::abs(a) <= 1e-12 * scale) {
    if (slope != 0.0) roots.push_back(-lead / slope);
  } else {
    // -a x^3 + slope x + lead = 0  <=>  x^3 - (slope/a) x - lead/a = 0
    roots = depressed_cubic_roots(-slope / a, -lead / a);
    for (double& x : roots) {
      for (int it = 0; it < 3; ++it) {
        const double g = derivative_factor(c, x);
        const double dg = slope - 3.0 * a * x * x;
        if (dg == 0.0) break;
        x -= g / dg;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::erase_if(roots, [](double x) { return !std::isfinite(x); });
  return roots;
}

std::vector<double> correction_stationary_points(const ExpansionCoefficients& c) {
  const double a = c.quadratic_coefficient();
  const double k = c.constant_coefficient();
  std::vector<double> pts{0.0};
  if (a != 0.0) {
    const double r2 = (2.0 * a - k) / a;
    if (r2 > 0.0) {
      pts.push_back(-std::sqrt(r2));
      pts.push_back(std::sqrt(r2));
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

double monotonized_expansion_cdf(const ExpansionCoefficients& c, double x) {
  double value = expansion_cdf(c, x);
  for (const auto& e : extrema(c)) {
    if (e.is_max && e.x < x) value = std::max(value, expansion_cdf(c, e.x));
  }
  return value;
}

ExpansionCoefficients population_expansion(const PopulationFunctionals& pop, const TrimSpec& spec,
                                           StatisticKind kind) {
  ExpansionCoefficients c;
  c.lambda1 = pop.lambda1;
  c.lambda2 = pop.lambda2;
  c.bias_over_sigma = static_cast<double>(spec.n()) * bias_term(pop, spec) / pop.sigma_W();
  c.n = spec.n();
  c.kind = kind;
  c.source = CoefficientSource::kPopulation;
  return c;
}

EmpiricalExpansion empirical_expansion(const PluginEstimates& est, StatisticKind kind) {
  if (est.variance_degenerate || !(est.s2_n > 0.0)) {
    throw DegenerateData("zero Winsorized variance: empirical expansion undefined");
  }
  EmpiricalExpansion out;
  auto& c = out.coefficients;
  c.n = est.n;
  c.kind = kind;
  c.source = CoefficientSource::kEmpirical;
  c.lambda1 = est.lambda1_hat;
  if (est.density_degenerate) {
    out.warnings.push_back(
        "density estimate degenerate: lambda2 and bias terms dropped from the expansion");
    return out;
  }
  c.lambda2 = est.lambda2_hat;
  c.bias_over_sigma = static_cast<double>(est.n) * est.beta_n_hat / est.s_n();
  return out;
}

InversionResult invert_expansion(const ExpansionCoefficients& c, double p) {
  if (!(p >= 0.001 && p <= 0.999)) {
    throw InvalidArgument("invert_expansion: p must lie in [0.001, 0.999]");
  }
  InversionResult result;

  // Ambiguous when the raw curve reaches p at a local maximum and later dips
  // back to p or below.
  const auto ex = extrema(c);
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (!ex[i].is_max || expansion_cdf(c, ex[i].x) < p) continue;
    for (std::size_t j = i + 1; j < ex.size(); ++j) {
      if (!ex[j].is_max && expansion_cdf(c, ex[j].x) <= p) {
        result.x = normal_quantile(p);
        result.fell_back = true;
        result.warning = "expansion is not monotone near p; using the normal quantile";
        return result;
      }
    }
  }

  double lo = -1.0;
  double hi = 1.0;
  while (monotonized_expansion_cdf(c, lo) >= p) {
    lo *= 2.0;
    if (lo < -1e6) throw NumericalError("invert_expansion: no lower bracket");
  }
  while (monotonized_expansion_cdf(c, hi) < p) {
    hi *= 2.0;
    if (hi > 1e6) throw NumericalError("invert_expansion: no upper bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (monotonized_expansion_cdf(c, mid) >= p) hi = mid; else lo = mid;
  }
  result.x = hi;
  return result;
}

}  // namespace trimedge
