#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"

namespace stqa {
namespace {

ColdStartCandidate cand(std::string sample, std::size_t path, double reward,
                        TaskKind scenario = TaskKind::kCamAbsDis) {
  return {scenario, std::move(sample), path, reward};
}

TEST(ScenarioThreshold, MeanOfMaxima) {
  const std::vector<ColdStartCandidate> c{cand("a", 0, 0.2), cand("b", 0, 0.1), cand("b", 1, 0.4),
                                          cand("c", 0, 0.6), cand("c", 1, 0.0)};
  EXPECT_NEAR(scenario_threshold(c), 0.4, 1e-12);
}

TEST(ScenarioThreshold, SingleSample) {
  EXPECT_EQ(scenario_threshold(std::vector{cand("a", 0, 0.1), cand("a", 1, 0.9)}), 0.9);
}

TEST(ScenarioThreshold, AllZero) {
  EXPECT_EQ(scenario_threshold(std::vector{cand("a", 0, 0.0), cand("b", 0, 0.0)}), 0.0);
}

TEST(ScenarioThreshold, Empty) {
  EXPECT_THROW(scenario_threshold(std::vector<ColdStartCandidate>{}), Error);
}

TEST(FilterCandidates, AllZeroKeepsNothing) {
  const auto r = filter_candidates(std::vector{cand("a", 0, 0.0), cand("a", 1, 0.0), cand("b", 0, 0.0)});
  EXPECT_TRUE(r.kept.empty());
  ASSERT_EQ(r.stats.size(), 1u);
  EXPECT_EQ(r.stats[0].threshold, 0.0);
}

TEST(FilterCandidates, ThresholdThenPerPath) {
  const std::vector<ColdStartCandidate> c{cand("A", 0, 0.8), cand("A", 1, 0.2), cand("B", 0, 0.4), cand("B", 1, 0.4)};
  const auto r = filter_candidates(c);
  EXPECT_NEAR(r.stats[0].threshold, 0.6, 1e-12);
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{0}));
}

TEST(FilterCandidates, TiesAtThresholdKept) {
  const std::vector<ColdStartCandidate> c{cand("A", 0, 0.5), cand("B", 0, 0.5)};
  EXPECT_EQ(filter_candidates(c).kept.size(), 2u);
}

TEST(FilterCandidates, RejectsNegativeReward) {
  EXPECT_THROW(filter_candidates(std::vector{cand("a", 0, -0.1)}), Error);
}

std::vector<ColdStartCandidate> uniform_pool(std::uint64_t seed, std::size_t samples, std::size_t paths) {
  Rng rng(seed);
  std::vector<ColdStartCandidate> c;
  for (auto t : kAllTasks) {
    for (std::size_t i = 0; i < samples; ++i) {
      for (std::size_t k = 0; k < paths; ++k) {
        c.push_back(cand(std::string(to_string(t)) + "/" + std::to_string(i), k, rng.uniform(), t));
      }
    }
  }
  return c;
}

TEST(FilterCandidates, UniformRewards) {
  const auto c = uniform_pool(1, 2000, 3);
  const auto r = filter_candidates(c);
  ASSERT_EQ(r.stats.size(), 7u);
  for (const auto& s : r.stats) {
    EXPECT_EQ(s.sample_count, 2000u);
    EXPECT_NEAR(s.threshold, 0.75, 0.02);
    // Path level: P(U >= 0.75) = 0.25. Sample level: 1 - 0.75^3.
    EXPECT_NEAR(static_cast<double>(s.kept_count) / s.path_count, 0.25, 0.03);
    const double sample_fraction = static_cast<double>(s.kept_samples) / s.sample_count;
    EXPECT_NEAR(sample_fraction, 1 - 0.75 * 0.75 * 0.75, 0.03);
    EXPECT_GE(sample_fraction, 0.3);
    EXPECT_LE(sample_fraction, 0.7);
  }
}

TEST(FilterCandidates, KeptSatisfyRule) {
  const auto c = uniform_pool(2, 300, 3);
  const auto r = filter_candidates(c);
  std::map<TaskKind, double> tau;
  for (const auto& s : r.stats) tau[s.scenario] = s.threshold;
  const std::set<std::size_t> kept(r.kept.begin(), r.kept.end());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const bool ok = c[k].reward >= tau[c[k].scenario] && c[k].reward > 0;
    EXPECT_EQ(kept.count(k) == 1, ok);
  }
}

TEST(FilterCandidates, ScalingCovariance) {
  auto c = uniform_pool(3, 200, 3);
  const auto before = filter_candidates(c);
  for (auto& x : c) x.reward *= 4.0;
  const auto after = filter_candidates(c);
  EXPECT_EQ(before.kept, after.kept);
  for (std::size_t s = 0; s < before.stats.size(); ++s) {
    EXPECT_NEAR(after.stats[s].threshold, 4.0 * before.stats[s].threshold, 1e-12);
  }
}

TEST(FilterCandidates, ItemModeKeepsBestPath) {
  const std::vector<ColdStartCandidate> c{cand("A", 0, 0.8), cand("A", 1, 0.9), cand("B", 0, 0.1), cand("B", 1, 0.3)};
  const auto r = filter_candidates(c, FilterMode::kItem);
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{1}));
  EXPECT_EQ(filter_candidates(c, FilterMode::kPath).kept, (std::vector<std::size_t>{0, 1}));
}

TEST(FilterCandidates, AllScenariosRepresented) {
  const auto r = filter_candidates(uniform_pool(5, 50, 3));
  std::set<TaskKind> seen;
  for (const auto& s : r.stats) {
    if (s.kept_count > 0) seen.insert(s.scenario);
  }
  EXPECT_EQ(seen.size(), 7u);
}

}  // namespace
}  // namespace stqa
