#include <gtest/gtest.h>

#include <cmath>

#include <cmath>

#include "trimedge/errors.hpp"
#include "trimedge/population.hpp"
#include "trimedge/rng.hpp"

namespace trimedge {
namespace {

struct ClosedForm {
  double xi_alpha, xi_beta, f_alpha, f_beta, mu_trim, mu_W, sigma2_W, gamma3_W, delta2_W;
};

ClosedForm from_raw_moments(double a, double b, double xa, double xb, double fa, double fb,
                            double inner1, double m1, double m2, double m3) {
  ClosedForm c{};
  c.xi_alpha = xa;
  c.xi_beta = xb;
  c.f_alpha = fa;
  c.f_beta = fb;
  c.mu_trim = inner1 / (b - a);
  c.mu_W = m1;
  c.sigma2_W = m2 - m1 * m1;
  c.gamma3_W = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
  c.delta2_W = -a * a / fa * (m1 - xa) * (m1 - xa) + (1 - b) * (1 - b) / fb * (m1 - xb) * (m1 - xb);
  return c;
}

// Uniform(0,1): Q(u) = u on (a, b], so every integral is a polynomial.
ClosedForm uniform_closed_form(double a, double b) {
  auto raw = [&](int r) {
    return a * std::pow(a, r) + (1 - b) * std::pow(b, r) +
           (std::pow(b, r + 1) - std::pow(a, r + 1)) / (r + 1);
  };
  return from_raw_moments(a, b, a, b, 1.0, 1.0, (b * b - a * a) / 2, raw(1), raw(2), raw(3));
}

// Exponential(1): with v = 1 - u the integrals of (-ln v)^r have elementary
// antiderivatives.
ClosedForm exponential_closed_form(double a, double b) {
  const double xa = -std::log1p(-a), xb = -std::log1p(-b);
  auto anti = [](int r, double v) {
    const double l = std::log(v);
    switch (r) {
      case 1: return v - v * l;
      case 2: return v * (l * l - 2 * l + 2);
      default: return -v * (l * l * l - 3 * l * l + 6 * l - 6);
    }
  };
  auto inner = [&](int r) { return anti(r, 1 - a) - anti(r, 1 - b); };
  auto raw = [&](int r) { return a * std::pow(xa, r) + (1 - b) * std::pow(xb, r) + inner(r); };
  return from_raw_moments(a, b, xa, xb, 1 - a, 1 - b, inner(1), raw(1), raw(2), raw(3));
}

void expect_matches(const PopulationFunctionals& p, const ClosedForm& c, double tol) {
  EXPECT_NEAR(p.xi_alpha, c.xi_alpha, tol);
  EXPECT_NEAR(p.xi_beta, c.xi_beta, tol);
  EXPECT_NEAR(p.f_alpha, c.f_alpha, tol);
  EXPECT_NEAR(p.f_beta, c.f_beta, tol);
  EXPECT_NEAR(p.mu_trim, c.mu_trim, tol);
  EXPECT_NEAR(p.mu_W, c.mu_W, tol);
  EXPECT_NEAR(p.sigma2_W, c.sigma2_W, tol);
  EXPECT_NEAR(p.gamma3_W, c.gamma3_W, tol);
  EXPECT_NEAR(p.delta2_W, c.delta2_W, tol);
  const double s3 = std::pow(c.sigma2_W, 1.5);
  EXPECT_NEAR(p.lambda1, c.gamma3_W / s3, tol);
  EXPECT_NEAR(p.lambda2, c.delta2_W / s3, tol);
}

TEST(TrimSpec, IndicesAndSnapping) {
  const TrimSpec s(0.1, 0.9, 250);  // 0.1 * 250 evaluates to 24.999999...
  EXPECT_EQ(s.k(), 26u);
  EXPECT_EQ(s.m(), 225u);
  EXPECT_EQ(s.alpha_fraction(), 0.0);
  EXPECT_EQ(s.beta_fraction(), 0.0);
  const TrimSpec f(0.1, 0.9, 105);
  EXPECT_EQ(f.k(), 11u);
  EXPECT_EQ(f.m(), 94u);
  EXPECT_NEAR(f.alpha_fraction(), 0.5, 1e-12);
  EXPECT_NEAR(f.beta_fraction(), 0.5, 1e-12);
  EXPECT_EQ(TrimSpec(0.2, 0.8, 10).kept(), 6u);
}

TEST(TrimSpec, Rejections) {
  EXPECT_THROW(TrimSpec(0.5, 0.5, 100), InvalidArgument);
  EXPECT_THROW(TrimSpec(0.0, 0.5, 100), InvalidArgument);
  EXPECT_THROW(TrimSpec(0.2, 1.0, 100), InvalidArgument);
  EXPECT_THROW(TrimSpec(0.1, 0.9, 1), InvalidArgument);
  EXPECT_THROW(TrimSpec(0.3, 0.45, 4), InvalidArgument);  // k = 2, m = 1
  EXPECT_EQ(TrimSpec(0.45, 0.5, 4).kept(), 1u);
}

TEST(WinsorizedTransform, Examples) {
  const auto u = make_model("uniform", {0, 1});
  const auto lv = TrimLevels::make(0.25, 0.75);
  EXPECT_DOUBLE_EQ(winsorized_transform(u, lv, 0.1), 0.25);
  EXPECT_DOUBLE_EQ(winsorized_transform(u, lv, 0.5), 0.5);
  EXPECT_NEAR(winsorized_transform(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9), 0.95),
              2.302585093, 1e-9);
}

TEST(Functionals, UniformClosedForm) {
  const auto p = compute_functionals(make_model("uniform", {0, 1}), TrimLevels::make(0.25, 0.75));
  EXPECT_NEAR(p.mu_trim, 0.5, 1e-12);
  EXPECT_NEAR(p.mu_W, 0.5, 1e-12);
  EXPECT_NEAR(p.sigma2_W, 1.0 / 24.0, 1e-12);
  EXPECT_NEAR(p.gamma3_W, 0.0, 1e-12);
  EXPECT_NEAR(p.delta2_W, 0.0, 1e-12);
  EXPECT_NEAR(p.lambda1, 0.0, 1e-12);
  EXPECT_NEAR(p.lambda2, 0.0, 1e-12);
  EXPECT_NEAR(bias_term(p, TrimSpec(0.25, 0.75, 100)), 0.0, 1e-15);
}

TEST(Functionals, MatchClosedFormsToQuadratureTolerance) {
  for (auto [a, b] : {std::pair{0.25, 0.75}, {0.1, 0.9}, {0.05, 0.6}, {0.3, 0.95}}) {
    expect_matches(compute_functionals(make_model("uniform", {0, 1}), TrimLevels::make(a, b)),
                   uniform_closed_form(a, b), 1e-8);
    expect_matches(compute_functionals(make_model("exponential", {1}), TrimLevels::make(a, b)),
                   exponential_closed_form(a, b), 1e-8);
  }
}

TEST(Functionals, ExponentialExamples) {
  const auto p = compute_functionals(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9));
  EXPECT_NEAR(p.xi_alpha, 0.10536052, 1e-8);
  EXPECT_NEAR(p.xi_beta, 2.30258509, 1e-8);
  EXPECT_NEAR(p.f_alpha, 0.9, 1e-14);
  EXPECT_NEAR(p.f_beta, 0.1, 1e-14);
  EXPECT_NEAR(p.mu_trim, 0.83070747, 1e-6);
  // The same value from the antiderivative (1 - u) ln(1 - u) + u of -ln(1 - u).
  auto anti = [](double u) { return (1 - u) * std::log(1 - u) + u; };
  EXPECT_NEAR(p.mu_trim, (anti(0.9) - anti(0.1)) / 0.8, 1e-12);
}

TEST(Functionals, SymmetricModelsHaveNoCorrections) {
  for (const auto& m : {make_model("normal", {0, 1}), make_model("cauchy", {2, 3}),
                        make_model("uniform", {-1, 4})}) {
    const auto p = compute_functionals(m, TrimLevels::make(0.15, 0.85));
    EXPECT_NEAR(p.lambda1, 0.0, 1e-10) << m.name();
    EXPECT_NEAR(p.lambda2, 0.0, 1e-10) << m.name();
  }
}

TEST(Functionals, LocationAndScaleInvariance) {
  const auto base = make_model("exponential", {1});
  const auto lv = TrimLevels::make(0.1, 0.8);
  const auto p = compute_functionals(base, lv);
  const auto shifted = compute_functionals(base.affine(3.0, 1.0), lv);
  EXPECT_NEAR(shifted.mu_trim, p.mu_trim + 3.0, 1e-10);
  EXPECT_NEAR(shifted.mu_W, p.mu_W + 3.0, 1e-10);
  EXPECT_NEAR(shifted.xi_alpha, p.xi_alpha + 3.0, 1e-12);
  EXPECT_NEAR(shifted.xi_beta, p.xi_beta + 3.0, 1e-12);
  EXPECT_NEAR(shifted.sigma2_W, p.sigma2_W, 1e-10);
  EXPECT_NEAR(shifted.gamma3_W, p.gamma3_W, 1e-10);
  EXPECT_NEAR(shifted.delta2_W, p.delta2_W, 1e-10);
  EXPECT_NEAR(shifted.lambda1, p.lambda1, 1e-10);
  EXPECT_NEAR(shifted.lambda2, p.lambda2, 1e-10);

  const auto scaled = compute_functionals(base.affine(0.0, 2.5), lv);
  EXPECT_NEAR(scaled.sigma2_W, 6.25 * p.sigma2_W, 1e-9);
  EXPECT_NEAR(scaled.lambda1, p.lambda1, 1e-10);
  EXPECT_NEAR(scaled.lambda2, p.lambda2, 1e-10);
}

TEST(Functionals, ReflectionFlipsSigns) {
  const auto base = make_model("exponential", {1});
  const auto p = compute_functionals(base, TrimLevels::make(0.1, 0.8));
  const auto r = compute_functionals(base.affine(0.0, -1.0), TrimLevels::make(0.2, 0.9));
  EXPECT_NEAR(r.lambda1, -p.lambda1, 1e-10);
  EXPECT_NEAR(r.lambda2, -p.lambda2, 1e-10);
  EXPECT_NEAR(r.sigma2_W, p.sigma2_W, 1e-10);
}

TEST(Functionals, WinsorizedVarianceByMonteCarlo) {
  const auto m = make_model("exponential", {1});
  const auto lv = TrimLevels::make(0.1, 0.9);
  const auto p = compute_functionals(m, lv);
  RngStream s(31337, 0);
  const int n = 1000000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double w = winsorized_transform(m, lv, s.next_uniform()) - p.mu_W;
    s1 += w;
    s2 += w * w;
    s4 += w * w * w * w;
  }
  const double var = s2 / n - (s1 / n) * (s1 / n);
  const double se = std::sqrt((s4 / n - var * var) / n);
  EXPECT_LT(std::abs(var - p.sigma2_W), 4 * se);
}

TEST(BiasTerm, Examples) {
  const auto exp_pop =
      compute_functionals(make_model("exponential", {1}), TrimLevels::make(0.1, 0.9));
  EXPECT_NEAR(bias_term(exp_pop, TrimSpec(0.1, 0.9, 100)), 0.004, 1e-12);
  // (1/200)[-0.09/0.9 + 0.09/0.1] computed by hand.
  EXPECT_NEAR(bias_term(exp_pop, TrimSpec(0.1, 0.9, 100)), (-0.1 + 0.9) / 200.0, 1e-15);

  // Fractional alpha N: N = 105 gives fractions 0.5 at both ends.
  const double n = 105;
  const double expected =
      (-0.5 * (exp_pop.mu_trim - exp_pop.xi_alpha) - 0.5 * 0.09 / 0.9 +
       0.5 * (exp_pop.mu_trim - exp_pop.xi_beta) + 0.5 * 0.09 / 0.1) / n;
  EXPECT_NEAR(bias_term(exp_pop, TrimSpec(0.1, 0.9, 105)), expected, 1e-15);

  // alpha(1 - alpha)/f(xi_alpha) = beta(1 - beta)/f(xi_beta) with integer indices cancels.
  const auto n01 = compute_functionals(make_model("normal", {0, 1}), TrimLevels::make(0.2, 0.8));
  EXPECT_NEAR(bias_term(n01, TrimSpec(0.2, 0.8, 50)), 0.0, 1e-15);
}

TEST(Functionals, AtomAtTrimmingQuantileIsAModelError) {
  const auto m = make_model("atomic", {0.4, 0.3});  // atom covers u in (0.28, 0.58]
  EXPECT_THROW(compute_functionals(m, TrimLevels::make(0.3, 0.9)), ModelError);
  EXPECT_NO_THROW(compute_functionals(m, TrimLevels::make(0.1, 0.9)));
  // mu(alpha, beta) needs no density: integral of Q over (0.3, 0.9) by hand.
  // Q = 0.4 on (0.3, 0.58], then (u - 0.3) / 0.7 on (0.58, 0.9].
  const double expected =
      (0.4 * 0.28 + ((0.6 * 0.6 - 0.28 * 0.28) / 2 / 0.7)) / 0.6;
  EXPECT_NEAR(trimmed_population_mean(m, TrimLevels::make(0.3, 0.9)), expected, 1e-10);
}

}  // namespace
}  // namespace trimedge
