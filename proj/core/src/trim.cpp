#include "trimedge/trim.hpp"

#include <cmath>
#include <string>

#include "trimedge/errors.hpp"

namespace trimedge {

TrimLevels TrimLevels::make(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < beta && beta < 1.0)) {
    throw InvalidArgument("trim levels must satisfy 0 < alpha < beta < 1 (got alpha=" +
                          std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
  return {alpha, beta};
}

long long snapped_floor(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9) return static_cast<long long>(nearest);
  return static_cast<long long>(std::floor(x));
}

double snapped_fraction(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9) return 0.0;
  return x - std::floor(x);
}

TrimSpec::TrimSpec(double alpha, double beta, std::size_t n)
    : levels_(TrimLevels::make(alpha, beta)), n_(n) {
  if (n < 2) throw InvalidArgument("sample size must be at least 2");
  const double dn = static_cast<double>(n);
  k_ = static_cast<std::size_t>(snapped_floor(alpha * dn)) + 1;
  m_ = static_cast<std::size_t>(snapped_floor(beta * dn));
  if (k_ > m_) {
    throw InvalidArgument("empty trim range: k=" + std::to_string(k_) + " > m=" +
                          std::to_string(m_) + " for n=" + std::to_string(n));
  }
}

double TrimSpec::alpha_fraction() const {
  return snapped_fraction(levels_.alpha * static_cast<double>(n_));
}

double TrimSpec::beta_fraction() const {
  return snapped_fraction(levels_.beta * static_cast<double>(n_));
}

}  // namespace trimedge
