#include "trimedge/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "trimedge/errors.hpp"

namespace trimedge {
namespace {

// exp(-y*y) with y split at 1/16 to limit cancellation in the exponent.
double exp_minus_square(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

}  // namespace

double erfc_cody(double x) {
  static constexpr double a[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                  3209.37758913846947, .185777706184603153};
  static constexpr double b[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                  2844.23683343917062};
  static constexpr double c[9] = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                  298.635138197400131, 881.95222124176909,  1712.04761263407058,
                                  2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
  static constexpr double d[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                  1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                  3439.36767414372164, 1230.33935480374942};
  static constexpr double p[6] = {.305326634961232344, .360344899949804439, .125781726111229246,
                                  .0160837851487422766, 6.58749161529837803e-4, .0163153871373020978};
  static constexpr double q[5] = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                                  .0605183413124413191, .00233520497626869185};
  constexpr double kInvSqrtPi = 0.56418958354775628695;
  constexpr double kXSmall = 1.11e-16;
  constexpr double kXBig = 26.543;

  if (std::isnan(x)) return x;
  const double y = std::abs(x);
  double result;
  if (y <= 0.46875) {
    const double ysq = y > kXSmall ? y * y : 0.0;
    double num = a[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
      num = (num + a[i]) * ysq;
      den = (den + b[i]) * ysq;
    }
    return 1.0 - x * (num + a[3]) / (den + b[3]);
  }
  if (y <= 4.0) {
    double num = c[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + c[i]) * y;
      den = (den + d[i]) * y;
    }
    result = exp_minus_square(y) * (num + c[7]) / (den + d[7]);
  } else if (y >= kXBig) {
    result = 0.0;
  } else {
    const double ysq = 1.0 / (y * y);
    double num = p[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
      num = (num + p[i]) * ysq;
      den = (den + q[i]) * ysq;
    }
    const double r = ysq * (num + p[4]) / (den + q[4]);
    result = exp_minus_square(y) * (kInvSqrtPi - r) / y;
  }
  return x < 0 ? 2.0 - result : result;
}

double normal_cdf(double x) {
  return 0.5 * erfc_cody(-x / std::numbers::sqrt2);
}

double normal_pdf(double x) {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    if (prob == 0.0) return -std::numeric_limits<double>::infinity();
    if (prob == 1.0) return std::numeric_limits<double>::infinity();
    throw InvalidArgument("normal_quantile: probability outside [0, 1]");
  }
  // Work in the lower half so Phi(x) is evaluated without cancellation.
  if (prob > 0.5) return -normal_quantile(1.0 - prob);

  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  double x;
  if (prob < kLow) {
    const double t = std::sqrt(-2.0 * std::log(prob));
    x = (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
        ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  } else {
    const double t = prob - 0.5;
    const double r = t * t;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  // Halley refinement.
  const double e = normal_cdf(x) - prob;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace trimedge
