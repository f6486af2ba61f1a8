#include "trimedge/population.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trimedge/errors.hpp"

namespace trimedge {
namespace {

constexpr unsigned kMaxDepth = 20;
constexpr double kRelativeTolerance = 1e-13;

// integral over (alpha, beta) of g(F^{-1}(u)).
template <class G>
double quantile_integral(const DistributionModel& model, const TrimLevels& lv, G g) {
  // Integrate piecewise between kinks of the quantile so each piece is smooth.
  std::vector<double> cuts = {lv.alpha};
  for (double u : model.quantile_kinks()) {
    if (u > lv.alpha && u < lv.beta) cuts.push_back(u);
  }
  cuts.push_back(lv.beta);
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double piece_error = 0.0;
    value += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double u) { return g(model.quantile(u)); }, cuts[i], cuts[i + 1], kMaxDepth,
        kRelativeTolerance, &piece_error);
    error += piece_error;
  }
  if (!std::isfinite(value) || error > kQuadratureTolerance) {
    throw NumericalError("quadrature did not converge (error estimate " + std::to_string(error) +
                         ")");
  }
  return value;
}

double density_at(const DistributionModel& model, double x, const char* which) {
  const auto f = model.density(x);
  if (!f) {
    throw ModelError(std::string("density undefined at ") + which +
                     " (atom at the trimming quantile)");
  }
  if (!(*f > 0.0) || !std::isfinite(*f)) {
    throw ModelError(std::string("density not positive and finite at ") + which);
  }
  return *f;
}

}  // namespace

double PopulationFunctionals::sigma_W() const { return std::sqrt(sigma2_W); }

double winsorized_transform(const DistributionModel& model, const TrimLevels& levels, double u) {
  if (u <= levels.alpha) return model.quantile(levels.alpha);
  if (u <= levels.beta) return model.quantile(u);
  return model.quantile(levels.beta);
}

double winsorized_raw_moment(const DistributionModel& model, const TrimLevels& lv, int r) {
  const double xa = model.quantile(lv.alpha);
  const double xb = model.quantile(lv.beta);
  return lv.alpha * std::pow(xa, r) + (1.0 - lv.beta) * std::pow(xb, r) +
         quantile_integral(model, lv, [r](double x) { return std::pow(x, r); });
}

double trimmed_population_mean(const DistributionModel& model, const TrimLevels& lv) {
  return quantile_integral(model, lv, [](double x) { return x; }) / (lv.beta - lv.alpha);
}

PopulationFunctionals compute_functionals(const DistributionModel& model, const TrimLevels& lv) {
  PopulationFunctionals pop{};
  pop.levels = lv;
  pop.quad_tol = kQuadratureTolerance;
  pop.xi_alpha = model.quantile(lv.alpha);
  pop.xi_beta = model.quantile(lv.beta);
  if (pop.xi_alpha == pop.xi_beta) {
    throw ModelError("xi_alpha == xi_beta: the Winsorized variable is degenerate");
  }
  pop.f_alpha = density_at(model, pop.xi_alpha, "xi_alpha");
  pop.f_beta = density_at(model, pop.xi_beta, "xi_beta");

  const double lower_mass = lv.alpha;
  const double upper_mass = 1.0 - lv.beta;
  const double inner = quantile_integral(model, lv, [](double x) { return x; });
  pop.mu_trim = inner / (lv.beta - lv.alpha);
  pop.mu_W = lower_mass * pop.xi_alpha + upper_mass * pop.xi_beta + inner;

  const double c = pop.mu_W;
  auto central = [&](int r) {
    return lower_mass * std::pow(pop.xi_alpha - c, r) + upper_mass * std::pow(pop.xi_beta - c, r) +
           quantile_integral(model, lv, [c, r](double x) { return std::pow(x - c, r); });
  };
  pop.sigma2_W = central(2);
  pop.gamma3_W = central(3);
  pop.delta2_W = -lv.alpha * lv.alpha / pop.f_alpha * (c - pop.xi_alpha) * (c - pop.xi_alpha) +
                 upper_mass * upper_mass / pop.f_beta * (c - pop.xi_beta) * (c - pop.xi_beta);

  if (!(pop.sigma2_W > 0.0)) throw ModelError("Winsorized variance is not positive");
  const double sigma3 = pop.sigma2_W * std::sqrt(pop.sigma2_W);
  pop.lambda1 = pop.gamma3_W / sigma3;
  pop.lambda2 = pop.delta2_W / sigma3;
  return pop;
}

double bias_term(const PopulationFunctionals& pop, const TrimSpec& spec) {
  const double a = spec.alpha();
  const double b = spec.beta();
  const double lower = -spec.alpha_fraction() * (pop.mu_trim - pop.xi_alpha) -
                       0.5 * a * (1.0 - a) / pop.f_alpha;
  const double upper = spec.beta_fraction() * (pop.mu_trim - pop.xi_beta) +
                       0.5 * b * (1.0 - b) / pop.f_beta;
  return (lower + upper) / static_cast<double>(spec.n());
}

}  // namespace trimedge
