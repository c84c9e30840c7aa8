#ifndef STQA_REWARD_ENGINE_HPP_
#define STQA_REWARD_ENGINE_HPP_

#include <array>
#include <cmath>
#include <span>
#include <string_view>

#include "stqa/qa_generator.hpp"
#include "stqa/response_parser.hpp"

namespace stqa {

struct RewardWeights {
  double lambda_acc = 0.5;
  double lambda_fmt = 0.2;
  double lambda_st = 0.3;
  double lambda_1 = 0.5;  // structural share of the format reward
  double lambda_2 = 0.5;  // coordinate-line share of the format reward
  double lambda_cam = 0.5;
  double lambda_obj = 0.5;

  /// Throws when a weight is negative or a paired split does not sum to 1.
  void validate() const {
    for (double w : {lambda_acc, lambda_fmt, lambda_st, lambda_1, lambda_2, lambda_cam, lambda_obj}) {
      if (!(w >= 0) || !std::isfinite(w)) throw Error(ErrorKind::kInvalidConfig, "reward weights must be finite and >= 0");
    }
    if (std::abs(lambda_1 + lambda_2 - 1.0) > 1e-9) throw Error(ErrorKind::kInvalidConfig, "lambda_1 + lambda_2 must be 1");
    if (std::abs(lambda_cam + lambda_obj - 1.0) > 1e-9) {
      throw Error(ErrorKind::kInvalidConfig, "lambda_cam + lambda_obj must be 1");
    }
  }

  bool top_level_sums_to_one() const { return std::abs(lambda_acc + lambda_fmt + lambda_st - 1.0) <= 1e-9; }
};

struct RewardBreakdown {
  double r_acc = 0;
  double r_stru_fmt = 0;
  double r_st_fmt = 0;
  double r_fmt = 0;
  double r_cam = 0;
  double r_obj = 0;
  double r_st = 0;
  double total = 0;

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

struct FormatReward {
  double stru = 0;
  double st = 0;
  double fmt = 0;
};

struct SpatiotemporalReward {
  double cam = 0;
  double obj = 0;
  double st = 0;
};

/// 1 when the recovered answer selects the correct option. The answer comes
/// from the thinking/answer structure when valid, else from a lone answer block.
inline double accuracy_reward(const ParsedResponse& parsed, const QAPair& qa) {
  const std::string* answer = parsed.structural_ok ? &parsed.answer : (parsed.loose_answer ? &*parsed.loose_answer : nullptr);
  if (!answer) return 0.0;
  const auto res = normalize_answer(*answer, qa.options);
  return res.matched_index && *res.matched_index == qa.answer_index ? 1.0 : 0.0;
}

inline FormatReward format_reward(const ParsedResponse& parsed, const RewardWeights& w = {}) {
  FormatReward out;
  out.stru = parsed.structural_ok ? 1.0 : 0.0;
  out.st = parsed.structural_ok && parsed.camera_centers.size() >= 2 && parsed.object_centers.size() >= 2 ? 1.0 : 0.0;
  out.fmt = w.lambda_1 * out.stru + w.lambda_2 * out.st;
  return out;
}

/// exp(-MEE) over the start and end anchors; the first prediction is paired
/// with the start anchor and the last with the end anchor.
inline double coordinate_reward(std::span<const Vec3> pred, const std::array<Vec3, 2>& gt) {
  if (pred.size() < 2) return 0.0;
  const double mee = ((pred.front() - gt[0]).norm() + (pred.back() - gt[1]).norm()) / 2.0;
  return std::exp(-mee);
}

inline SpatiotemporalReward st_reward(const ParsedResponse& parsed, const QAPair& qa, const RewardWeights& w = {}) {
  SpatiotemporalReward out;
  out.cam = coordinate_reward(parsed.camera_centers, qa.gt_anchors.camera_centers);
  if (qa.gt_anchors.object_centroids) {
    out.obj = coordinate_reward(parsed.object_centers, *qa.gt_anchors.object_centroids);
  } else {
    // No object anchor: the object share is carried by the camera term.
    out.obj = out.cam;
  }
  out.st = w.lambda_cam * out.cam + w.lambda_obj * out.obj;
  return out;
}

inline RewardBreakdown score_parsed(const ParsedResponse& parsed, const QAPair& qa, const RewardWeights& w = {}) {
  RewardBreakdown b;
  b.r_acc = accuracy_reward(parsed, qa);
  const auto f = format_reward(parsed, w);
  b.r_stru_fmt = f.stru;
  b.r_st_fmt = f.st;
  b.r_fmt = f.fmt;
  const auto st = st_reward(parsed, qa, w);
  b.r_cam = st.cam;
  b.r_obj = st.obj;
  b.r_st = st.st;
  b.total = w.lambda_acc * b.r_acc + w.lambda_fmt * b.r_fmt + w.lambda_st * b.r_st;
  return b;
}

inline RewardBreakdown score_rollout(const QAPair& qa, std::string_view response_text, const RewardWeights& w = {}) {
  return score_parsed(parse_response(response_text), qa, w);
}

}  // namespace stqa

#endif  // STQA_REWARD_ENGINE_HPP_
