#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace stochsat;

struct ConstantLoss {
  double value = 0.5;
  double operator()(std::span<const double>, Rng&) const { return value; }
};

struct HalfSquaredNorm {
  double operator()(std::span<const double> x, Rng&) const {
    double s = 0.0;
    for (double v : x) s += v * v;
    return 0.5 * s;
  }
};

struct Linear {
  std::vector<double> c;
  double operator()(std::span<const double> x, Rng&) const {
    return std::inner_product(c.begin(), c.end(), x.begin(), 0.0);
  }
};

static_assert(LossEvaluator<ConstantLoss>);
static_assert(LossEvaluator<IndicatorLoss>);

double norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

TEST(Oracles, EpsilonWDefault) {
  EXPECT_DOUBLE_EQ(epsilon_w_default(100), 0.05);
  EXPECT_DOUBLE_EQ(epsilon_w_default(1), 0.5);
  EXPECT_DOUBLE_EQ(epsilon_w_default(400), 0.025);
  EXPECT_THROW(epsilon_w_default(0), ConfigError);
}

TEST(Oracles, ConfigValidation) {
  OracleConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_samples = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.n_directions = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.smoothing_radius = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.epsilon_w = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Oracles, EstimateWExamples) {
  Rng rng(1);
  Problem always = make_ssmt(SsmtId::Phi1);
  always.formula = Formula::constant(true);
  IndicatorLoss none(always);
  const std::vector<double> x{0.0};
  for (std::size_t n : {1u, 7u, 100u}) EXPECT_EQ(estimate_w(none, x, n, rng), 0.0);

  const Problem p1 = make_ssmt(SsmtId::Phi1);
  IndicatorLoss loss(p1);
  EXPECT_NEAR(estimate_w(loss, x, 10000, rng), 0.75, 0.02);

  ConstantLoss half;
  EXPECT_EQ(estimate_w(half, x, 33, rng), 0.5);
  EXPECT_THROW(estimate_w(half, x, 0, rng), ConfigError);
}

TEST(Oracles, IndicatorLossIsBinary) {
  const Problem p = make_ssmt(SsmtId::Phi2);
  IndicatorLoss loss(p);
  Rng rng(2);
  const std::vector<double> x{1.0, 2.0};
  for (int i = 0; i < 1000; ++i) {
    const double v = loss(x, rng);
    ASSERT_TRUE(v == 0.0 || v == 1.0);
  }
}

TEST(Oracles, GradientOfConstantIsZero) {
  Rng rng(3);
  ConstantLoss c;
  const std::vector<double> x{0.2, -0.7, 1.0};
  const auto g = estimate_grad(c, x, {}, rng);
  ASSERT_EQ(g.size(), 3u);
  for (double gi : g) EXPECT_EQ(gi, 0.0);
}

TEST(Oracles, GradientOfSmoothLoss) {
  Rng rng(4);
  HalfSquaredNorm f;
  OracleConfig cfg;
  cfg.smoothing_radius = 1e-3;
  cfg.n_directions = 10000;
  cfg.n_samples = 1;
  const std::vector<double> x{1.0, 0.0};
  const auto g = estimate_grad(f, x, cfg, rng);
  EXPECT_LE(norm_diff(g, {1.0, 0.0}), 0.05);
}

TEST(Oracles, GradientUnbiasedForLinearLoss) {
  Rng rng(5);
  Linear f{{2.0, -1.0, 0.5}};
  OracleConfig cfg;
  cfg.n_samples = 1;
  cfg.n_directions = 20;
  const std::vector<double> x{0.3, 0.3, 0.3};
  std::vector<double> mean(3, 0.0);
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const auto g = estimate_grad(f, x, cfg, rng);
    for (std::size_t i = 0; i < 3; ++i) mean[i] += g[i] / reps;
  }
  // Per-component standard error is about |c| * sqrt(2 / (20 * 4000)) < 0.02.
  EXPECT_LE(norm_diff(mean, f.c), 0.06);
}

TEST(OraclesProperty, GradientErrorShrinksWithDirections) {
  HalfSquaredNorm f;
  const std::vector<double> x{1.0, -0.5};
  const std::vector<double> truth{1.0, -0.5};
  double prev = INFINITY;
  Rng rng(6);
  for (std::size_t dirs : {100u, 1000u, 10000u}) {
    OracleConfig cfg;
    cfg.n_samples = 1;
    cfg.n_directions = dirs;
    cfg.smoothing_radius = 0.1;
    std::vector<double> errs;
    for (int r = 0; r < 20; ++r) errs.push_back(norm_diff(estimate_grad(f, x, cfg, rng), truth));
    std::nth_element(errs.begin(), errs.begin() + 10, errs.end());
    EXPECT_LT(errs[10], prev) << dirs;
    prev = errs[10];
  }
}

TEST(OraclesProperty, ZerothOrderConcentration) {
  const Problem p = make_ssmt(SsmtId::Phi1);
  IndicatorLoss loss(p);
  const std::vector<double> x{0.0};
  Rng rng(7);
  // sqrt(ln(2/0.01) / 200) is about 0.163; the tighter 0.152 is the pinned tolerance.
  EXPECT_NEAR(std::sqrt(std::log(2.0 / 0.01) / (2.0 * 100.0)), 0.1628, 1e-4);
  const double radius = 0.152;
  int within = 0;
  for (int i = 0; i < 100; ++i) within += std::abs(estimate_w(loss, x, 100, rng) - 0.75) <= radius;
  EXPECT_GE(within, 97);

  std::vector<double> err;
  for (int i = 0; i < 1000; ++i) err.push_back(std::abs(estimate_w(loss, x, 100, rng) - 0.75));
  const double mean = std::accumulate(err.begin(), err.end(), 0.0) / 1000.0;
  double var = 0.0;
  for (double e : err) var += (e - mean) * (e - mean);
  const double se = std::sqrt(var / 999.0 / 1000.0);
  EXPECT_LE(mean, epsilon_w_default(100) + 3.0 * se);
}

TEST(Oracles, Deterministic) {
  const Problem p = make_ssmt(SsmtId::Phi1);
  IndicatorLoss a(p), b(p);
  Rng r1(8), r2(8);
  const std::vector<double> x{-0.3};
  EXPECT_EQ(estimate_grad(a, x, {}, r1), estimate_grad(b, x, {}, r2));
}

} // namespace
