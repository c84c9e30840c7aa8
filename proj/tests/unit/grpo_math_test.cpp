#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"

namespace stqa {
namespace {

TEST(GroupAdvantages, ConstantGroupIsDegenerate) {
  const std::vector<double> r{0.7, 0.7, 0.7};
  const auto g = group_advantages(r);
  EXPECT_TRUE(g.degenerate);
  EXPECT_EQ(g.advantages, (std::vector<double>{0, 0, 0}));
}

TEST(GroupAdvantages, TwoValues) {
  const std::vector<double> r{1, 0};
  const auto g = group_advantages(r);
  EXPECT_FALSE(g.degenerate);
  EXPECT_EQ(g.advantages, (std::vector<double>{1, -1}));
}

TEST(GroupAdvantages, FourValues) {
  const std::vector<double> r{1, 1, 0, 0};
  EXPECT_EQ(group_advantages(r).advantages, (std::vector<double>{1, 1, -1, -1}));
}

TEST(GroupAdvantages, SingleRolloutDegenerate) {
  const std::vector<double> r{0.3};
  const auto g = group_advantages(r);
  EXPECT_TRUE(g.degenerate);
  EXPECT_EQ(g.advantages[0], 0.0);
}

TEST(GroupAdvantages, EmptyThrows) {
  EXPECT_THROW(group_advantages(std::vector<double>{}), Error);
}

TEST(GroupAdvantages, ZeroMeanUnitStd) {
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> r(12);
    for (auto& x : r) x = rng.uniform();
    const auto g = group_advantages(r);
    double mean = 0, sq = 0;
    for (double a : g.advantages) mean += a;
    mean /= 12;
    for (double a : g.advantages) sq += (a - mean) * (a - mean);
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(std::sqrt(sq / 12), 1.0, 1e-12);
  }
}

TEST(ImportanceRatio, Examples) {
  EXPECT_EQ(importance_ratio({-3.0, -3.0, 0.0}), 1.0);
  EXPECT_NEAR(importance_ratio({std::log(2.0), 0.0, 0.0}), 2.0, 1e-12);
  EXPECT_NEAR(importance_ratio({-std::log(4.0), 0.0, 0.0}), 0.25, 1e-12);
}

TEST(ImportanceRatio, Overflow) {
  try {
    importance_ratio({1000.0, 0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kRatioOverflow);
  }
}

TEST(KlEstimate, Examples) {
  EXPECT_EQ(kl_estimate({-2.0, 0.0, -2.0}), 0.0);
  EXPECT_NEAR(kl_estimate({0.0, 0.0, 0.5}), std::exp(0.5) - 1.5, 1e-12);
  EXPECT_NEAR(kl_estimate({0.0, 0.0, 0.5}), 0.1487213, 1e-7);
}

TEST(KlEstimate, NonNegative) {
  Rng rng(4);
  for (int k = 0; k < 2000; ++k) {
    const double scale = std::pow(10.0, rng.uniform(-12, 1));
    EXPECT_GE(kl_estimate({0.0, 0.0, rng.uniform(-1, 1) * scale}), 0.0);
  }
}

TEST(Surrogate, RatioOneNoKlIsMeanAdvantage) {
  const std::vector<double> r{0.2, 0.9, 0.4, 0.4, 1.0};
  const auto g = group_advantages(r);
  std::vector<RolloutLogProbs> lp(r.size(), RolloutLogProbs{-5.0, -5.0, -1.0});
  GrpoConfig cfg;
  cfg.kl_beta = 0.0;
  EXPECT_NEAR(surrogate_objective(lp, g.advantages, cfg), 0.0, 1e-9);
}

TEST(Surrogate, DegenerateSingleRolloutIsKlPenalty) {
  const double d = 0.5722498296092303;  // e^d - d - 1 = 0.2
  const RolloutLogProbs lp{0.0, 0.0, d};
  ASSERT_NEAR(kl_estimate(lp), 0.2, 1e-12);
  const std::vector<double> a{0.0};
  GrpoConfig cfg;
  EXPECT_NEAR(surrogate_objective(std::span(&lp, 1), a, cfg), -0.02, 1e-12);
}

TEST(Surrogate, Clipping) {
  const RolloutLogProbs lp{std::log(2.0), 0.0, std::log(2.0)};
  GrpoConfig cfg;
  cfg.kl_beta = 0.0;
  EXPECT_NEAR(surrogate_objective(std::span(&lp, 1), std::vector<double>{1.0}, cfg), 1.2, 1e-12);
  // Negative advantage takes the unclipped, more pessimistic term.
  EXPECT_NEAR(surrogate_objective(std::span(&lp, 1), std::vector<double>{-1.0}, cfg), -2.0, 1e-12);
}

TEST(Surrogate, SizeMismatch) {
  const std::vector<RolloutLogProbs> lp(3);
  EXPECT_THROW(surrogate_objective(lp, std::vector<double>{1.0}, GrpoConfig{}), Error);
}

TEST(GrpoConfig, Validation) {
  GrpoConfig c;
  EXPECT_NO_THROW(c.validate());
  c.clip_epsilon = 1.5;
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace stqa
