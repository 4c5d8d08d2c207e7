#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "dequad/quad.hpp"
#include "oracles.hpp"

using namespace dequad;

namespace {

constexpr double kPi = std::numbers::pi;

// x^(-1/4) ln(1/x) on (0,1), sampled from the distance to 0.
double i1_integrand(const NodeWeight& nw) {
  const double x = nw.dist_a;
  return std::pow(x, -0.25) * -std::log(x);
}
constexpr double kI1 = 16.0 / 9.0;

}  // namespace

TEST(TrapezoidSum, ZeroIntegrand) {
  EXPECT_EQ(trapezoid_sum([](double) { return 0.0; }, 0.37, 5, 9), 0.0);
}

// At h = 0.5 the tanh-sinh sum of the constant carries a discretisation
// error of about 7e-6 that no window widening removes; at h = 0.25 the
// truncation rule alone decides the accuracy.
TEST(TrapezoidSum, TransformedConstantOnUnitInterval) {
  const Transform tr = Transform::tanh_sinh();
  const double c = decay_estimate(tr);
  auto w = [&](double t) { return node(tr, t).w; };
  const Truncation coarse = truncation_bounds(0.5, 1e-12, c);
  EXPECT_NEAR(trapezoid_sum(w, 0.5, coarse.n_minus, coarse.n_plus), trapezoid_sum(w, 0.5, 14, 14), 1e-15);
  EXPECT_GT(std::abs(trapezoid_sum(w, 0.5, coarse.n_minus, coarse.n_plus) - 2.0), 1e-6);
  const Truncation fine = truncation_bounds(0.25, 1e-12, c);
  EXPECT_NEAR(trapezoid_sum(w, 0.25, fine.n_minus, fine.n_plus), 2.0, 1e-10);
}

// With h = 0.5 the discretisation error of the Gaussian is ~1e-17, so the
// whole error at n = 8 is the omitted tail beyond t = 4 (about 1.6e-9).
TEST(TrapezoidSum, GaussianIsTruncationLimited) {
  auto g = [](double t) { return std::exp(-t * t); };
  const double sqrt_pi = std::sqrt(kPi);
  long double tail = 0;
  for (int k = 9; k < 200; ++k) tail += 2 * 0.5L * std::exp(-0.25L * k * k);
  const double v8 = trapezoid_sum(g, 0.5, 8, 8);
  EXPECT_NEAR(sqrt_pi - v8, static_cast<double>(tail), 1e-15);
  EXPECT_NEAR(trapezoid_sum(g, 0.5, 10, 10), sqrt_pi, 1e-10);
}

TEST(TrapezoidSum, FixedSummationOrder) {
  std::vector<double> seen;
  trapezoid_sum([&](double t) { seen.push_back(t); return 1.0; }, 1.0, 2, 3);
  EXPECT_EQ(seen, (std::vector<double>{-2, -1, 3, 2, 1, 0}));
}

TEST(TrapezoidSum, NonFiniteSampleThrows) {
  EXPECT_THROW(trapezoid_sum([](double t) { return t == 1.0 ? NAN : 1.0; }, 1.0, 2, 2), NonFiniteSample);
  EXPECT_THROW(trapezoid_sum([](double) { return INFINITY; }, 1.0, 0, 0), NonFiniteSample);
}

TEST(TruncationBounds, Examples) {
  const Truncation a = truncation_bounds(1.0, 1e-8, kPi / 2);
  EXPECT_EQ(a.n_minus, 3);
  EXPECT_EQ(a.n_plus, 3);
  const Truncation b = truncation_bounds(0.5, 1e-15, kPi / 2);
  EXPECT_LE(b.n_plus, 14);
  EXPECT_LE(b.n_plus * 0.5, 7.0);
}

TEST(TruncationBounds, CapAppliesAtTinyDecay) {
  const Truncation t = truncation_bounds(0.25, 1e-15, 1e-6);
  EXPECT_EQ(t.n_plus, 28);
}

TEST(TruncationBounds, MonotoneInDecayConstant) {
  for (double h : {0.125, 0.5, 1.0})
    for (double tol : {1e-4, 1e-8, 1e-14})
      for (double c = 0.05; c < 50; c *= 1.7) {
        EXPECT_LE(truncation_bounds(h, tol, 2 * c).n_plus, truncation_bounds(h, tol, c).n_plus);
        EXPECT_LE(se_truncation_bounds(h, tol, 2 * c).n_plus, se_truncation_bounds(h, tol, c).n_plus);
      }
}

TEST(TruncationBounds, RejectsBadArguments) {
  EXPECT_THROW(truncation_bounds(0.0, 1e-8, 1.0), std::invalid_argument);
  EXPECT_THROW(truncation_bounds(1.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(truncation_bounds(1.0, 1e-8, 0.0), std::invalid_argument);
}

TEST(Integrate, ConstantOne) {
  QuadratureConfig cfg;
  cfg.tol = 1e-12;
  const QuadratureResult r = integrate([](double) { return 1.0; }, Transform::tanh_sinh(), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_LE(r.err_estimate, cfg.tol);
}

TEST(Integrate, EndpointSingularityFromDistance) {
  QuadratureConfig cfg;
  cfg.tol = 1e-10;
  const QuadratureResult r = integrate(i1_integrand, Transform::tanh_sinh(0, 1), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, kI1, 1e-10);
  // Only the singular side needed widening.
  EXPECT_GT(r.n_minus, r.n_plus);
}

TEST(Integrate, EndpointSingularityFromAbscissa) {
  QuadratureConfig cfg;
  cfg.tol = 1e-10;
  const QuadratureResult r =
      integrate([](double x) { return std::pow(x, -0.25) * -std::log(x); }, Transform::tanh_sinh(0, 1), cfg);
  EXPECT_NEAR(r.value, kI1, 1e-10);
}

TEST(Integrate, LorentzianPeak) {
  QuadratureConfig cfg;
  cfg.tol = 1e-10;
  const QuadratureResult r = integrate(
      [](double x) { return 1.0 / (16 * (x - kPi / 4) * (x - kPi / 4) + 1.0 / 16); }, Transform::tanh_sinh(0, 1), cfg);
  const double exact = std::atan(16 * (1 - kPi / 4)) + std::atan(4 * kPi);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, exact, 1e-10);
}

TEST(Integrate, InfiniteIntervals) {
  QuadratureConfig cfg;
  cfg.tol = 1e-11;
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, Transform::exp_sinh(), cfg).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate([](double x) { return 1.0 / (1 + x * x); }, Transform::exp_sinh(), cfg).value, kPi / 2,
              1e-10);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, Transform::sinh_sinh(), cfg).value,
              std::sqrt(kPi), 1e-10);
}

TEST(Integrate, NonFiniteSamplePropagates) {
  EXPECT_THROW(integrate([](double x) { return std::log(x); }, Transform::tanh_sinh()), NonFiniteSample);
}

TEST(Integrate, NotConvergedReturnsBestEstimate) {
  QuadratureConfig cfg;
  cfg.tol = 1e-15;
  cfg.max_level = 1;
  const QuadratureResult r = integrate([](double x) { return std::cos(64 * std::sin(x)); },
                                      Transform::tanh_sinh(0, kPi), cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_GT(r.err_estimate, cfg.tol);
}

TEST(Integrate, NoAbscissaEvaluatedTwice) {
  QuadratureConfig cfg;
  cfg.tol = 1e-14;
  // Keyed on (x, distance to the nearer endpoint): near +-1 distinct nodes
  // share the rounded abscissa.
  std::set<std::pair<double, double>> seen;
  std::int64_t calls = 0;
  const QuadratureResult r = integrate(
      [&](const NodeWeight& nw) {
        ++calls;
        EXPECT_TRUE(seen.insert({nw.x, std::min(nw.dist_a, nw.dist_b)}).second) << "x=" << nw.x << " sampled twice";
        return std::exp(nw.x);
      },
      Transform::tanh_sinh(-1, 1), cfg);
  // Each grid point of the final level at most once; saturated weights are
  // skipped.
  EXPECT_EQ(r.n_evals, r.n_minus + r.n_plus + 1);
  EXPECT_LE(calls, r.n_evals);
  EXPECT_GT(calls, r.n_evals / 2);
}

TEST(Integrate, Deterministic) {
  QuadratureConfig cfg;
  cfg.tol = 1e-12;
  auto f = [](double x) { return std::exp(20 * (x - 1)) * std::sin(256 * x); };
  const QuadratureResult a = integrate(f, Transform::tanh_sinh(0, 1), cfg);
  const QuadratureResult b = integrate(f, Transform::tanh_sinh(0, 1), cfg);
  EXPECT_EQ(std::memcmp(&a.value, &b.value, sizeof(double)), 0);
  EXPECT_EQ(a.n_evals, b.n_evals);
  EXPECT_EQ(a.err_estimate, b.err_estimate);
}

TEST(Integrate, ConfigValidation) {
  auto one = [](double) { return 1.0; };
  QuadratureConfig cfg;
  cfg.tol = 1e-16;
  EXPECT_THROW(integrate(one, Transform::tanh_sinh(), cfg), std::invalid_argument);
  cfg = {};
  cfg.max_level = 13;
  EXPECT_THROW(integrate(one, Transform::tanh_sinh(), cfg), std::invalid_argument);
  cfg.max_level = 0;
  EXPECT_THROW(integrate(one, Transform::tanh_sinh(), cfg), std::invalid_argument);
}

TEST(IntegrateSe, ConstantOne) {
  QuadratureConfig cfg;
  cfg.tol = 1e-8;
  const QuadratureResult r = integrate_se([](double) { return 1.0; }, Interval::finite(-1, 1), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
}

TEST(IntegrateSe, NeedsMoreEvaluationsThanDe) {
  QuadratureConfig cfg;
  cfg.tol = 1e-8;
  const QuadratureResult de = integrate(i1_integrand, Transform::tanh_sinh(0, 1), cfg);
  const QuadratureResult se = integrate_se(i1_integrand, Interval::finite(0, 1), cfg);
  EXPECT_TRUE(se.converged);
  EXPECT_NEAR(se.value, kI1, 1e-8);
  EXPECT_GT(se.n_evals, de.n_evals);
}

TEST(FixedBudget, DeBeatsSeOnEndpointSingularity) {
  for (std::int64_t n : {51, 101, 201}) {
    const double de = std::abs(integrate_fixed(i1_integrand, Transform::tanh_sinh(0, 1), n, 0.75).value - kI1);
    const double se = std::abs(integrate_fixed(i1_integrand, Transform::se_tanh(0, 1), n, 0.75).value - kI1);
    EXPECT_LT(de, se) << "N=" << n;
  }
}

TEST(FixedBudget, DeBeatsSeOnSemicircle) {
  auto f = [](const NodeWeight& nw) { return std::sqrt(nw.dist_a * nw.dist_b); };
  const double exact = kPi / 2;
  const auto de = integrate_fixed(f, Transform::tanh_sinh(), 101, 1.5);
  const auto se = integrate_fixed(f, Transform::se_tanh(), 101, 1.5);
  EXPECT_EQ(de.n_evals, 101);
  EXPECT_LT(std::abs(de.value - exact), std::abs(se.value - exact));
}

// log error against N / ln N is a straight line for DE; against sqrt N for SE.
TEST(FixedBudget, ConvergenceRateCertificates) {
  const std::vector<double> de_ns = {7, 11, 15, 19, 23};
  const std::vector<double> se_ns = {21, 41, 81, 161, 321};
  std::vector<double> de_err, se_err;
  for (double n : de_ns)
    de_err.push_back(std::abs(
        integrate_fixed(i1_integrand, Transform::tanh_sinh(0, 1), static_cast<std::int64_t>(n), 0.75).value - kI1));
  for (double n : se_ns)
    se_err.push_back(std::abs(
        integrate_fixed(i1_integrand, Transform::se_tanh(0, 1), static_cast<std::int64_t>(n), 0.75).value - kI1));

  const auto de_fit = oracle::fit_error_model(de_ns, de_err, oracle::Model::De);
  EXPECT_LT(de_fit.slope, 0.0);  // exp(-c N / ln N) with c > 0
  EXPECT_GE(de_fit.r2, 0.98);
  const auto se_fit = oracle::fit_error_model(se_ns, se_err, oracle::Model::Se);
  EXPECT_LT(se_fit.slope, 0.0);
  EXPECT_GE(se_fit.r2, 0.98);
}
