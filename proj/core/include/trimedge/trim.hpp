#pragma once

#include <cstddef>

namespace trimedge {

/// Trimming proportions 0 < alpha < beta < 1.
struct TrimLevels {
  double alpha;
  double beta;

  /// Throws InvalidArgument unless 0 < alpha < beta < 1.
  static TrimLevels make(double alpha, double beta);
};

/// floor(x) with x snapped to the nearest integer when within 1e-9, so that
/// 0.1 * 250 = 24.999999... counts as 25.
long long snapped_floor(double x);

/// x - snapped_floor(x); exactly 0 when x is (numerically) an integer.
double snapped_fraction(double x);

/// Trimming levels bound to a sample size: the trimmed mean averages order
/// statistics k..m (1-based) with k = floor(alpha N) + 1 and m = floor(beta N).
class TrimSpec {
 public:
  /// Throws InvalidArgument when the levels are invalid, n < 2, or k > m.
  TrimSpec(double alpha, double beta, std::size_t n);
  TrimSpec(TrimLevels levels, std::size_t n) : TrimSpec(levels.alpha, levels.beta, n) {}

  double alpha() const { return levels_.alpha; }
  double beta() const { return levels_.beta; }
  const TrimLevels& levels() const { return levels_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t m() const { return m_; }
  /// m - k + 1 = floor(beta N) - floor(alpha N).
  std::size_t kept() const { return m_ - k_ + 1; }
  /// alpha N - floor(alpha N), snapped.
  double alpha_fraction() const;
  double beta_fraction() const;

 private:
  TrimLevels levels_;
  std::size_t n_;
  std::size_t k_;
  std::size_t m_;
};

}  // namespace trimedge
