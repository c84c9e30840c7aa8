#ifndef STQA_ROLLOUT_SIM_HPP_
#define STQA_ROLLOUT_SIM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "stqa/grpo_math.hpp"
#include "stqa/qa_generator.hpp"
#include "stqa/response_parser.hpp"
#include "stqa/rng.hpp"

namespace stqa::oracle {

enum class RolloutKind { kPerfect, kWrongAnswer, kNoisyAnchors, kNoCoordinates, kBrokenTags };

struct SimulatedRollout {
  std::string question_id;
  std::string group_id;
  RolloutKind kind = RolloutKind::kPerfect;
  std::string response;
  RolloutLogProbs logp;
};

/// Response text of the given quality for a QA pair. Perfect responses answer
/// with the correct letter and report the exact start/end anchors.
inline std::string synthesize_response(const QAPair& qa, RolloutKind kind, Rng& rng) {
  ResponseParts parts;
  parts.prose_before = "Step 1: the question asks about " + std::string(to_string(qa.task)) + " between frame " +
                       std::to_string(qa.frame_start) + " and frame " + std::to_string(qa.frame_end) + ".";
  parts.prose_after = "Step 5: the anchors above decide the answer.";
  const auto& cams = qa.gt_anchors.camera_centers;
  const auto& objs = qa.gt_anchors.object_centroids ? *qa.gt_anchors.object_centroids : cams;
  parts.camera_centers = {cams[0], cams[1]};
  parts.object_centers = {objs[0], objs[1]};
  std::size_t answer = qa.answer_index;

  switch (kind) {
    case RolloutKind::kPerfect: break;
    case RolloutKind::kWrongAnswer:
      answer = (qa.answer_index + 1 + rng.below(qa.options.size() - 1)) % qa.options.size();
      break;
    case RolloutKind::kNoisyAnchors:
      for (auto* list : {&parts.camera_centers, &parts.object_centers}) {
        for (auto& v : *list) v += Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      }
      break;
    case RolloutKind::kNoCoordinates:
      parts.camera_centers.clear();
      parts.object_centers.clear();
      break;
    case RolloutKind::kBrokenTags: break;
  }
  parts.answer = std::string(1, static_cast<char>('A' + answer));
  std::string text = format_response(parts);
  if (kind == RolloutKind::kBrokenTags) {
    const auto pos = text.find(kThinkClose);
    text.erase(pos, kThinkClose.size());
  }
  return text;
}

/// A group of `group_size` rollouts of mixed quality, with plausible
/// sequence log-probabilities. Deterministic in (qa.id, seed).
inline std::vector<SimulatedRollout> simulate_rollouts(const QAPair& qa, std::size_t group_size, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "rollouts", qa.id));
  std::vector<SimulatedRollout> out;
  out.reserve(group_size);
  for (std::size_t g = 0; g < group_size; ++g) {
    SimulatedRollout r;
    r.question_id = qa.id;
    r.group_id = qa.id;
    r.kind = static_cast<RolloutKind>(rng.below(5));
    r.response = synthesize_response(qa, r.kind, rng);
    r.logp.logp_old = -rng.uniform(5.0, 50.0);
    r.logp.logp_new = r.logp.logp_old + rng.uniform(-0.3, 0.3);
    r.logp.logp_ref = r.logp.logp_new + rng.uniform(-0.3, 0.3);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace stqa::oracle

#endif  // STQA_ROLLOUT_SIM_HPP_
