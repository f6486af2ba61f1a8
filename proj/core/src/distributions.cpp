#include "trimedge/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trimedge/errors.hpp"
#include "trimedge/normal.hpp"

namespace trimedge {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void validate(Family family, const std::vector<double>& p) {
  for (double v : p) require(std::isfinite(v), "distribution parameters must be finite");
  switch (family) {
    case Family::kUniform:
      require(p.size() == 2, "uniform expects params [a, b]");
      require(p[0] < p[1], "uniform requires a < b");
      break;
    case Family::kExponential:
      require(p.size() == 1, "exponential expects params [rate]");
      require(p[0] > 0, "exponential requires rate > 0");
      break;
    case Family::kNormal:
      require(p.size() == 2, "normal expects params [mean, sd]");
      require(p[1] > 0, "normal requires sd > 0");
      break;
    case Family::kCauchy:
      require(p.size() == 2, "cauchy expects params [location, scale]");
      require(p[1] > 0, "cauchy requires scale > 0");
      break;
    case Family::kAtomic:
      require(p.size() == 2, "atomic expects params [atom, mass]");
      require(p[0] > 0 && p[0] < 1, "atomic requires 0 < atom < 1");
      require(p[1] > 0 && p[1] < 1, "atomic requires 0 < mass < 1");
      break;
  }
}

}  // namespace

DistributionModel::DistributionModel(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  validate(family_, params_);
}

std::string_view DistributionModel::name() const {
  switch (family_) {
    case Family::kUniform: return "uniform";
    case Family::kExponential: return "exponential";
    case Family::kNormal: return "normal";
    case Family::kCauchy: return "cauchy";
    case Family::kAtomic: return "atomic";
  }
  return "unknown";
}

DistributionModel DistributionModel::affine(double shift, double scale) const {
  if (!std::isfinite(shift) || !std::isfinite(scale) || scale == 0.0) {
    throw InvalidArgument("affine transform needs finite shift and nonzero scale");
  }
  if (scale < 0 && !is_continuous()) {
    throw InvalidArgument("reflection is only supported for continuous families");
  }
  DistributionModel out = *this;
  out.shift_ = shift_ * scale + shift;
  out.scale_ = scale_ * scale;
  return out;
}

std::vector<double> DistributionModel::quantile_kinks() const {
  if (family_ != Family::kAtomic) return {};
  const double below = (1.0 - params_[1]) * params_[0];
  return {below, below + params_[1]};
}

double DistributionModel::base_cdf(double z) const {
  const auto& p = params_;
  switch (family_) {
    case Family::kUniform:
      if (z <= p[0]) return 0.0;
      if (z >= p[1]) return 1.0;
      return (z - p[0]) / (p[1] - p[0]);
    case Family::kExponential:
      return z <= 0 ? 0.0 : -std::expm1(-p[0] * z);
    case Family::kNormal:
      return normal_cdf((z - p[0]) / p[1]);
    case Family::kCauchy:
      return 0.5 + std::atan((z - p[0]) / p[1]) / std::numbers::pi;
    case Family::kAtomic: {
      const double continuous = (1.0 - p[1]) * std::clamp(z, 0.0, 1.0);
      return continuous + (z >= p[0] ? p[1] : 0.0);
    }
  }
  return 0.0;
}

double DistributionModel::base_quantile(double u) const {
  const auto& p = params_;
  switch (family_) {
    case Family::kUniform:
      return p[0] + u * (p[1] - p[0]);
    case Family::kExponential:
      return -std::log1p(-u) / p[0];
    case Family::kNormal:
      return p[0] + p[1] * normal_quantile(u);
    case Family::kCauchy:
      return p[0] + p[1] * std::tan(std::numbers::pi * (u - 0.5));
    case Family::kAtomic: {
      const double below = (1.0 - p[1]) * p[0];
      if (u <= below) return u / (1.0 - p[1]);
      if (u <= below + p[1]) return p[0];
      return (u - p[1]) / (1.0 - p[1]);
    }
  }
  return 0.0;
}

std::optional<double> DistributionModel::base_density(double z) const {
  const auto& p = params_;
  switch (family_) {
    case Family::kUniform:
      return (z >= p[0] && z <= p[1]) ? 1.0 / (p[1] - p[0]) : 0.0;
    case Family::kExponential:
      return z < 0 ? 0.0 : p[0] * std::exp(-p[0] * z);
    case Family::kNormal:
      return normal_pdf((z - p[0]) / p[1]) / p[1];
    case Family::kCauchy: {
      const double t = (z - p[0]) / p[1];
      return 1.0 / (std::numbers::pi * p[1] * (1.0 + t * t));
    }
    case Family::kAtomic:
      if (z == p[0]) return std::nullopt;
      return (z >= 0.0 && z <= 1.0) ? 1.0 - p[1] : 0.0;
  }
  return std::nullopt;
}

double DistributionModel::cdf(double x) const {
  const double z = (x - shift_) / scale_;
  if (scale_ > 0) return base_cdf(z);
  return 1.0 - base_cdf(z);  // continuous families only
}

double DistributionModel::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("quantile level must lie in (0, 1)");
  if (scale_ > 0) return shift_ + scale_ * base_quantile(u);
  return shift_ + scale_ * base_quantile(1.0 - u);
}

std::optional<double> DistributionModel::density(double x) const {
  const auto d = base_density((x - shift_) / scale_);
  if (!d) return std::nullopt;
  return *d / std::abs(scale_);
}

DistributionModel make_model(std::string_view name, std::vector<double> params) {
  if (name == "uniform") return {Family::kUniform, std::move(params)};
  if (name == "exponential") return {Family::kExponential, std::move(params)};
  if (name == "normal") return {Family::kNormal, std::move(params)};
  if (name == "cauchy") return {Family::kCauchy, std::move(params)};
  if (name == "atomic") return {Family::kAtomic, std::move(params)};
  throw InvalidArgument("unknown distribution family '" + std::string(name) + "'");
}

std::vector<std::string> catalog_families() {
  return {"uniform", "exponential", "normal", "cauchy", "atomic"};
}

std::vector<double> default_params(std::string_view family) {
  if (family == "uniform" || family == "normal" || family == "cauchy") return {0.0, 1.0};
  if (family == "exponential") return {1.0};
  if (family == "atomic") return {0.5, 0.2};
  throw InvalidArgument("unknown distribution family '" + std::string(family) + "'");
}

void sample_into(const DistributionModel& model, RngStream& stream, std::span<double> out) {
  for (double& x : out) x = model.draw(stream);
}

std::vector<double> sample(const DistributionModel& model, std::size_t n, RngStream& stream) {
  if (n < 1) throw InvalidArgument("sample size must be at least 1");
  std::vector<double> out(n);
  sample_into(model, stream, out);
  return out;
}

}  // namespace trimedge
