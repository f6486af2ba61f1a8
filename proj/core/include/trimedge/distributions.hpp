#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trimedge/rng.hpp"

namespace trimedge {

enum class Family { kUniform, kExponential, kNormal, kCauchy, kAtomic };

/// A ground-truth law with exact cdf, left-continuous quantile, density and
/// an inverse-transform sampler. Immutable after construction.
///
/// Catalog (family: params):
///   uniform:     [a, b]          a < b
///   exponential: [rate]          rate > 0
///   normal:      [mean, sd]      sd > 0
///   cauchy:      [location, scale]  scale > 0
///   atomic:      [atom, mass]    (1 - mass) * Uniform(0,1) + mass * point mass
///                                at atom, 0 < atom < 1, 0 < mass < 1.
///
/// The atomic law deliberately has no density at its atom; trimming there
/// violates the smoothness hypotheses and `density` reports std::nullopt.
class DistributionModel {
 public:
  DistributionModel(Family family, std::vector<double> params);

  Family family() const { return family_; }
  std::string_view name() const;
  const std::vector<double>& params() const { return params_; }

  double cdf(double x) const;
  /// F^{-1}(u) = inf{x : F(x) >= u} for u in (0, 1).
  double quantile(double u) const;
  /// std::nullopt where the law has no density (atoms).
  std::optional<double> density(double x) const;
  bool is_continuous() const { return family_ != Family::kAtomic; }
  /// Levels u in (0, 1) where the quantile function is not smooth.
  std::vector<double> quantile_kinks() const;

  /// Law of scale * X + shift. A negative scale reflects the law and is only
  /// supported for continuous families.
  DistributionModel affine(double shift, double scale) const;
  double shift() const { return shift_; }
  double scale() const { return scale_; }

  double draw(RngStream& stream) const { return quantile(stream.next_uniform()); }

 private:
  double base_cdf(double z) const;
  double base_quantile(double u) const;
  std::optional<double> base_density(double z) const;

  Family family_;
  std::vector<double> params_;
  double shift_ = 0.0;
  double scale_ = 1.0;
};

/// Builds a catalog model; throws InvalidArgument for an unknown family or
/// parameters outside the family's domain.
DistributionModel make_model(std::string_view name, std::vector<double> params);

/// Names accepted by make_model, in catalog order.
std::vector<std::string> catalog_families();

/// Standard parameters of a family (uniform [0, 1], exponential [1], ...).
std::vector<double> default_params(std::string_view family);

/// n i.i.d. variates by inverse transform from the model quantile.
std::vector<double> sample(const DistributionModel& model, std::size_t n, RngStream& stream);
void sample_into(const DistributionModel& model, RngStream& stream, std::span<double> out);

}  // namespace trimedge
