#ifndef STQA_COLDSTART_FILTER_HPP_
#define STQA_COLDSTART_FILTER_HPP_

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stqa/qa_generator.hpp"

namespace stqa {

struct ColdStartCandidate {
  TaskKind scenario = TaskKind::kCamAbsDis;
  std::string sample_id;
  std::size_t path_id = 0;
  double reward = 0;
};

struct ScenarioStats {
  TaskKind scenario = TaskKind::kCamAbsDis;
  std::size_t sample_count = 0;
  std::size_t path_count = 0;
  double threshold = 0;
  std::size_t kept_count = 0;    // kept paths
  std::size_t kept_samples = 0;  // samples with at least one kept path
};

enum class FilterMode {
  kPath,  // keep every path with r >= tau_s and r > 0
  kItem,  // keep the best path of each sample whose best reward is >= tau_s and > 0
};

inline std::optional<FilterMode> filter_mode_from_string(std::string_view s) {
  if (s == "path") return FilterMode::kPath;
  if (s == "item") return FilterMode::kItem;
  return std::nullopt;
}

struct ColdStartResult {
  std::vector<std::size_t> kept;  // indices into the input, in input order
  std::vector<ScenarioStats> stats;
};

namespace detail {
inline void check_reward(const ColdStartCandidate& c) {
  if (!std::isfinite(c.reward) || c.reward < 0) {
    throw Error(ErrorKind::kInvalidArgument, "cold-start reward must be finite and >= 0 (sample " + c.sample_id + ")");
  }
}
}  // namespace detail

/// Mean over samples of each sample's best path reward. The candidates are
/// taken to belong to one scenario.
inline double scenario_threshold(std::span<const ColdStartCandidate> candidates) {
  if (candidates.empty()) throw Error(ErrorKind::kEmptyGroup, "scenario has no candidates");
  std::map<std::string, double> best;
  for (const auto& c : candidates) {
    detail::check_reward(c);
    auto [it, inserted] = best.try_emplace(c.sample_id, c.reward);
    if (!inserted && c.reward > it->second) it->second = c.reward;
  }
  double sum = 0;
  for (const auto& [id, r] : best) sum += r;
  return sum / static_cast<double>(best.size());
}

inline ColdStartResult filter_candidates(std::span<const ColdStartCandidate> candidates,
                                         FilterMode mode = FilterMode::kPath) {
  std::map<TaskKind, std::vector<std::size_t>> by_scenario;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    detail::check_reward(candidates[k]);
    by_scenario[candidates[k].scenario].push_back(k);
  }

  std::vector<bool> keep(candidates.size(), false);
  ColdStartResult result;
  for (const auto& [scenario, indices] : by_scenario) {
    std::vector<ColdStartCandidate> group;
    group.reserve(indices.size());
    for (auto k : indices) group.push_back(candidates[k]);
    const double tau = scenario_threshold(group);

    ScenarioStats stats;
    stats.scenario = scenario;
    stats.threshold = tau;
    stats.path_count = indices.size();

    // First index of the best path per sample, in input order.
    std::map<std::string, std::size_t> best;
    for (auto k : indices) {
      auto [it, inserted] = best.try_emplace(candidates[k].sample_id, k);
      if (!inserted && candidates[k].reward > candidates[it->second].reward) it->second = k;
    }
    stats.sample_count = best.size();

    if (mode == FilterMode::kPath) {
      for (auto k : indices) {
        const double r = candidates[k].reward;
        if (r >= tau && r > 0) keep[k] = true;
      }
    } else {
      for (const auto& [id, k] : best) {
        const double r = candidates[k].reward;
        if (r >= tau && r > 0) keep[k] = true;
      }
    }

    std::map<std::string, bool> sample_kept;
    for (auto k : indices) {
      if (!keep[k]) continue;
      ++stats.kept_count;
      sample_kept[candidates[k].sample_id] = true;
    }
    stats.kept_samples = sample_kept.size();
    result.stats.push_back(stats);
  }

  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (keep[k]) result.kept.push_back(k);
  }
  return result;
}

}  // namespace stqa

#endif  // STQA_COLDSTART_FILTER_HPP_
