#ifndef STQA_GRPO_MATH_HPP_
#define STQA_GRPO_MATH_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "stqa/error.hpp"

namespace stqa {

struct GrpoConfig {
  std::size_t group_size = 12;
  double clip_epsilon = 0.2;
  double kl_beta = 0.1;
  double sigma_min = 1e-8;

  void validate() const {
    if (group_size < 1) throw Error(ErrorKind::kInvalidConfig, "group_size must be >= 1");
    if (!(clip_epsilon > 0 && clip_epsilon < 1)) throw Error(ErrorKind::kInvalidConfig, "clip_epsilon must be in (0, 1)");
    if (!(kl_beta >= 0)) throw Error(ErrorKind::kInvalidConfig, "kl_beta must be >= 0");
    if (!(sigma_min >= 0)) throw Error(ErrorKind::kInvalidConfig, "sigma_min must be >= 0");
  }
};

/// Sequence-level log-probabilities of one rollout under the current,
/// behavior and reference policies.
struct RolloutLogProbs {
  double logp_new = 0;
  double logp_old = 0;
  double logp_ref = 0;
};

struct AdvantageGroup {
  std::string question_id;
  std::vector<double> rewards;
  std::vector<double> advantages;
  bool degenerate = false;
};

/// (r - mean) / std with the population standard deviation. Groups whose std
/// falls below sigma_min get all-zero advantages and are flagged degenerate.
inline AdvantageGroup group_advantages(std::span<const double> rewards, double sigma_min = 1e-8) {
  if (rewards.empty()) throw Error(ErrorKind::kEmptyGroup, "advantage group is empty");
  const double n = static_cast<double>(rewards.size());
  double mean = 0;
  for (double r : rewards) mean += r;
  mean /= n;
  double var = 0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  var /= n;
  const double sd = std::sqrt(var);

  AdvantageGroup g;
  g.rewards.assign(rewards.begin(), rewards.end());
  g.advantages.assign(rewards.size(), 0.0);
  if (!(sd >= sigma_min) || sd == 0.0) {
    g.degenerate = true;
    return g;
  }
  for (std::size_t k = 0; k < rewards.size(); ++k) g.advantages[k] = (rewards[k] - mean) / sd;
  return g;
}

inline double importance_ratio(const RolloutLogProbs& lp) {
  const double ratio = std::exp(lp.logp_new - lp.logp_old);
  if (!std::isfinite(ratio)) throw Error(ErrorKind::kRatioOverflow, "importance ratio overflowed");
  return ratio;
}

/// Per-sample KL(new || ref) estimate exp(d) - d - 1 with d = logp_ref - logp_new.
inline double kl_estimate(const RolloutLogProbs& lp) {
  const double d = lp.logp_ref - lp.logp_new;
  // expm1 keeps precision near d = 0; the max clamps rounding below zero.
  return std::max(0.0, std::expm1(d) - d);
}

/// Mean over the group of min(rho A, clip(rho, 1-eps, 1+eps) A) - beta * KL.
inline double surrogate_objective(std::span<const RolloutLogProbs> logps, std::span<const double> advantages,
                                  const GrpoConfig& cfg) {
  if (logps.empty()) throw Error(ErrorKind::kEmptyGroup, "surrogate over an empty group");
  if (logps.size() != advantages.size()) {
    throw Error(ErrorKind::kInvalidArgument, "log-prob and advantage counts differ");
  }
  double sum = 0;
  for (std::size_t g = 0; g < logps.size(); ++g) {
    const double rho = importance_ratio(logps[g]);
    const double a = advantages[g];
    const double clipped = std::clamp(rho, 1.0 - cfg.clip_epsilon, 1.0 + cfg.clip_epsilon);
    sum += std::min(rho * a, clipped * a) - cfg.kl_beta * kl_estimate(logps[g]);
  }
  return sum / static_cast<double>(logps.size());
}

}  // namespace stqa

#endif  // STQA_GRPO_MATH_HPP_
