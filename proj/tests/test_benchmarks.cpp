#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace stochsat;

const std::string kDir = STOCHSAT_PROBLEM_DIR;

TEST(Benchmarks, KnownValues) {
  EXPECT_NEAR(ssmt_known_value(SsmtId::Phi1), 0.3090170, 1e-7);
  EXPECT_EQ(ssmt_known_value(SsmtId::Phi2), 0.8);
  EXPECT_EQ(ssmt_known_value(SsmtId::Phi3), 1.0);
  EXPECT_EQ(ssmt_known_value(SsmtId::Phi4), 0.71875);
}

TEST(Benchmarks, Shapes) {
  const Problem p1 = make_ssmt(SsmtId::Phi1);
  EXPECT_EQ(p1.num_det(), 1u);
  EXPECT_EQ(p1.domain, (Box{{-1, 1}}));
  EXPECT_EQ(p1.dists, (std::vector<DistributionSpec>{Uniform{-1, 1}}));

  const Problem p2 = make_ssmt(SsmtId::Phi2);
  EXPECT_EQ(p2.det_names, (std::vector<std::string>{"x", "w"}));
  EXPECT_EQ(p2.dists, (std::vector<DistributionSpec>{Uniform{0, 5}, Uniform{0, 4}}));
  EXPECT_EQ(p2.formula.atom_count(), 4u);

  const Problem p3 = make_ssmt(SsmtId::Phi3);
  EXPECT_FALSE(p3.domain.is_finite());
  EXPECT_EQ(p3.sample_box, (Box{{-1, 1}, {-5, 5}, {-5, 5}}));

  const Problem p4 = make_ssmt(SsmtId::Phi4);
  EXPECT_EQ(p4.domain, (Box{{-10, 10}}));
  EXPECT_EQ(p4.dists, (std::vector<DistributionSpec>{Uniform{5, 25}, Uniform{-10, 10}}));
  EXPECT_EQ(p4.formula.atom_count(), 8u);
}

TEST(Benchmarks, ShippedSsmtFilesAgree) {
  const std::pair<SsmtId, const char*> files[] = {
      {SsmtId::Phi1, "phi1"}, {SsmtId::Phi2, "phi2"}, {SsmtId::Phi3, "phi3"}, {SsmtId::Phi4, "phi4"}};
  for (const auto& [id, name] : files) {
    const Problem shipped = load_problem(kDir + "/" + name + ".ssc");
    EXPECT_TRUE(shipped.same_content(make_ssmt(id))) << name;
    EXPECT_EQ(shipped.name, name);
  }
}

TEST(Benchmarks, ShippedTrajectoryFilesAgree) {
  const auto table = trajectory_table();
  ASSERT_EQ(table.size(), 12u);
  for (const auto& inst : table) {
    const Problem shipped = load_problem(kDir + "/trajectory/" + inst.id + ".ssc");
    EXPECT_TRUE(shipped.same_content(make_trajectory(inst.config))) << inst.id;
  }
}

TEST(Benchmarks, TrajectoryFormulaSize) {
  for (const auto& inst : trajectory_table()) {
    const Problem p = make_trajectory(inst.config);
    const std::size_t n = inst.config.steps, m = inst.config.obstacles.size();
    EXPECT_EQ(p.formula.atom_count(), n * m + n) << inst.id;
    EXPECT_EQ(p.num_det(), 2 * n);
    EXPECT_EQ(p.num_rand(), 3u);
  }
  const auto t1 = trajectory_table().front();
  EXPECT_EQ(t1.id, "T1");
  EXPECT_EQ(t1.config.steps, 4u);
  ASSERT_EQ(t1.config.obstacles.size(), 1u);
  EXPECT_EQ(t1.config.obstacles[0].cx, 6.0);
  EXPECT_EQ(t1.config.obstacles[0].radius, 2.5);
}

TEST(Benchmarks, TrajectoryNoise) {
  TrajectoryConfig c;
  const Problem sd = make_trajectory(c);
  EXPECT_EQ(sd.dists[0], DistributionSpec(Normal{0, 0.5}));
  EXPECT_EQ(sd.dists[2], DistributionSpec(Uniform{0.8, 1.2}));
  EXPECT_EQ(sd.metadata.at("noise_param_meaning"), "standard_deviation");
  c.noise_param_is_variance = true;
  const Problem var = make_trajectory(c);
  EXPECT_EQ(var.dists[1], DistributionSpec(Normal{0, std::sqrt(0.5)}));
  EXPECT_EQ(var.metadata.at("noise_param_meaning"), "variance");
  EXPECT_EQ(sd.metadata.at("domain_halfwidth"), "12");
}

TEST(Benchmarks, TrajectoryConfigValidation) {
  TrajectoryConfig c;
  c.steps = 0;
  EXPECT_THROW(make_trajectory(c), ConfigError);
  c = {};
  c.obstacles = {{0, 0, 0}};
  EXPECT_THROW(make_trajectory(c), ConfigError);
}

TEST(Benchmarks, FreeSingleStepIsCertain) {
  TrajectoryConfig c;
  const Problem p = make_trajectory(c);
  ASSERT_EQ(p.formula.kind(), Formula::Kind::Atom);
  // Reachable for every w3 in [0.8, 1.2] exactly when |p1| <= 2.4.
  const std::vector<double> inside{1.5, -1.8};
  const CertificationResult r = certify_lower_bound(p, inside, {});
  EXPECT_GE(r.lower_bound, 1 - 1e-3);
  const std::vector<double> outside{2.6, 0.0};
  EXPECT_LT(certify_lower_bound(p, outside, {}).local_upper_bound, 1.0);
}

TEST(Benchmarks, WaypointInsideLargeObstacle) {
  TrajectoryConfig c;
  c.obstacles = {{0, 0, 10}};
  c.domain_halfwidth = 3;
  const Problem p = make_trajectory(c);
  const std::vector<double> x{1.0, 1.0};
  CertifyConfig cfg;
  cfg.epsilon0 = 1e-2;
  const CertificationResult r = certify_lower_bound(p, x, cfg);
  EXPECT_LE(r.local_upper_bound, 1e-2 + r.fp_slack);
  Rng rng(1);
  EXPECT_LT(mc_reference(p, x, 100000, rng).estimate, 1e-3);
}

} // namespace
