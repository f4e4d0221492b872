#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace stochsat;

// Closed-form satisfaction probability of Phi1 for x <= 0.
double phi1_value(double x) { return (std::sqrt(1 - x * x) - (x + 1) / 2) / 2; }

TEST(Certify, Phi1AtPaperCandidate) {
  const Problem p = make_ssmt(SsmtId::Phi1);
  const std::vector<double> x{-0.43897};
  const CertificationResult r = certify_lower_bound(p, x, {});
  EXPECT_GE(r.lower_bound, 0.3080);
  EXPECT_LE(r.lower_bound, 0.3090);
  EXPECT_LE(r.lower_bound, phi1_value(-0.43897));
  EXPECT_TRUE(r.converged);
  EXPECT_GE(r.local_upper_bound, phi1_value(-0.43897));
  EXPECT_LE(r.local_upper_bound, r.lower_bound + 1e-3 + r.fp_slack);
}

TEST(Certify, Phi1AtZero) {
  const Problem p = make_ssmt(SsmtId::Phi1);
  const std::vector<double> x{0.0};
  const CertificationResult r = certify_lower_bound(p, x, {});
  EXPECT_GE(r.lower_bound, 0.249);
  EXPECT_LE(r.lower_bound, 0.250);
}

TEST(Certify, ClosedFormAlongPhi1) {
  const Problem p = make_ssmt(SsmtId::Phi1);
  for (double x = -1.0; x <= 0.0; x += 0.0625) {
    const std::vector<double> at{x};
    const CertificationResult r = certify_lower_bound(p, at, {});
    const double v = std::max(0.0, phi1_value(x));
    EXPECT_LE(r.lower_bound, v) << x;
    EXPECT_GE(r.lower_bound, v - 1e-3) << x;
    EXPECT_GE(r.local_upper_bound, v) << x;
  }
}

TEST(Certify, ConstantTrueFormula) {
  Problem p = make_ssmt(SsmtId::Phi1);
  p.formula = Formula::constant(true);
  const std::vector<double> x{0.3};
  const CertificationResult r = certify_lower_bound(p, x, {});
  EXPECT_GE(r.lower_bound, 1 - 1e-3);
  EXPECT_TRUE(r.converged);

  // An atom that only becomes constant after substitution behaves the same.
  Problem q = make_ssmt(SsmtId::Phi3);
  const std::vector<double> x3{0.0, -2.0, 0.0};  // a^3 + 2b = -8 < -1
  EXPECT_GE(certify_lower_bound(q, x3, {}).lower_bound, 1 - 1e-3);
}

TEST(Certify, ConstantFalseFormula) {
  Problem p = make_ssmt(SsmtId::Phi1);
  p.formula = Formula::constant(false);
  const std::vector<double> x{0.3};
  const CertificationResult r = certify_lower_bound(p, x, {});
  EXPECT_EQ(r.lower_bound, 0.0);
  EXPECT_EQ(r.local_upper_bound, 0.0);
  Rng rng(1);
  EXPECT_EQ(mc_reference(p, x, 1000, rng).estimate, 0.0);
}

TEST(Certify, UnboundedNormalPhi3) {
  const Problem p = make_ssmt(SsmtId::Phi3);
  // At a^3 + 2b = 0 the second clause reduces to y > 0: V = 1/2.
  const std::vector<double> x{0.0, 0.0, 0.0};
  const CertificationResult r = certify_lower_bound(p, x, {});
  EXPECT_LE(r.lower_bound, 0.5);
  EXPECT_GE(r.lower_bound, 0.499);
  EXPECT_GT(r.truncated_budget, 0.0);
}

TEST(Certify, Errors) {
  const Problem p = make_ssmt(SsmtId::Phi2);
  const std::vector<double> wrong{1.0};
  const std::vector<double> outside{4.0, 1.0};
  EXPECT_THROW(certify_lower_bound(p, wrong, {}), DimensionError);
  EXPECT_THROW(certify_lower_bound(p, outside, {}), DomainError);
  CertifyConfig bad;
  bad.epsilon0 = 0.0;
  const std::vector<double> ok{1.0, 1.0};
  EXPECT_THROW(certify_lower_bound(p, ok, bad), ConfigError);
  bad = {};
  bad.truncation_fraction = 1.0;
  EXPECT_THROW(certify_lower_bound(p, ok, bad), ConfigError);
}

TEST(Certify, CapsGiveSoundUnconvergedResult) {
  const Problem p = make_ssmt(SsmtId::Phi1);
  CertifyConfig cfg;
  cfg.max_boxes = 20;
  const std::vector<double> x{-0.4};
  const CertificationResult r = certify_lower_bound(p, x, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.lower_bound, phi1_value(-0.4));
  EXPECT_GE(r.local_upper_bound, phi1_value(-0.4));
}

TEST(Certify, McReference) {
  Rng rng(3);
  const Problem p1 = make_ssmt(SsmtId::Phi1);
  const std::vector<double> x1{0.0};
  const McEstimate m1 = mc_reference(p1, x1, 1000000, rng);
  EXPECT_NEAR(m1.estimate, 0.25, m1.radius);

  const Problem p2 = make_ssmt(SsmtId::Phi2);
  const std::vector<double> x2{2.0, 0.0};
  const McEstimate m2 = mc_reference(p2, x2, 1000000, rng);
  EXPECT_NEAR(m2.estimate, 0.8, m2.radius);
  EXPECT_GT(m2.radius, 0.0);
}

TEST(Certify, Phi4OnPlateau) {
  const Problem p = make_ssmt(SsmtId::Phi4);
  const std::vector<double> x{8.7};
  const CertificationResult r = certify_lower_bound(p, x, {});
  EXPECT_LE(r.lower_bound, 23.0 / 32.0);
  EXPECT_GE(r.lower_bound, 23.0 / 32.0 - 1e-3);
}

// Every unit of truncation-box mass ends up inner, discarded or boundary.
TEST(CertifyProperty, MassAccounting) {
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    const Problem p = stochsat::testing::random_problem(rng);
    const auto x = p.domain.sample(rng);
    const CertificationResult r = certify_lower_bound(p, x, {});
    if (r.boxes_processed == 0) continue;  // folded to a constant
    EXPECT_NEAR(r.inner_mass + r.discarded_mass + r.boundary_mass, r.truncation_box_mass,
                1e-12 * static_cast<double>(r.boxes_processed + 1) * 4);
    EXPECT_LE(r.truncated_budget, 5e-4 + 1e-15);
    EXPECT_GE(r.truncation_box_mass, 1.0 - r.truncated_budget - 1e-12);
  }
}

TEST(CertifyProperty, RefinementNeverLosesBound) {
  Rng rng(10);
  for (int i = 0; i < 30; ++i) {
    const Problem p = stochsat::testing::random_problem(rng);
    const auto x = p.domain.sample(rng);
    CertifyConfig coarse, fine;
    coarse.epsilon0 = 1e-2;
    fine.epsilon0 = 1e-3;
    const CertificationResult a = certify_lower_bound(p, x, coarse);
    const CertificationResult b = certify_lower_bound(p, x, fine);
    EXPECT_GE(b.lower_bound, a.lower_bound - b.fp_slack) << i;
  }
}

TEST(CertifyProperty, SoundAgainstMonteCarlo) {
  Rng rng(2718);
  std::size_t violations = 0;
  for (int i = 0; i < 15; ++i) {
    const Problem p = stochsat::testing::random_problem(rng);
    const auto x = p.domain.sample(rng);
    const CertificationResult r = certify_lower_bound(p, x, {});
    const McEstimate m = mc_reference(p, x, 200000, rng);
    violations += r.lower_bound > m.estimate + m.radius;
    if (r.converged) violations += m.estimate - m.radius > r.local_upper_bound;
  }
  EXPECT_EQ(violations, 0u);
}

TEST(Certify, Deterministic) {
  const Problem p = make_ssmt(SsmtId::Phi2);
  const std::vector<double> x{1.3, 2.1};
  const CertificationResult a = certify_lower_bound(p, x, {});
  const CertificationResult b = certify_lower_bound(p, x, {});
  EXPECT_EQ(a.lower_bound, b.lower_bound);
  EXPECT_EQ(a.boxes_processed, b.boxes_processed);
}

} // namespace
