#ifndef STQA_PROMPTS_HPP_
#define STQA_PROMPTS_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace stqa {

enum class PromptStage { kSft, kColdStart, kGrpo };

inline std::optional<PromptStage> prompt_stage_from_string(std::string_view s) {
  if (s == "sft") return PromptStage::kSft;
  if (s == "coldstart") return PromptStage::kColdStart;
  if (s == "grpo") return PromptStage::kGrpo;
  return std::nullopt;
}

namespace detail {

inline constexpr std::string_view kReasoningSteps =
    "Reason in five steps:\n"
    "Step 1: State the objective. Name the quantity being asked for and the start and end frames it refers to.\n"
    "Step 2: Describe the 3D state at the start frame. Give the camera center and the object center in world "
    "coordinates (meters).\n"
    "Step 3: Follow the frames from start to end. Collect visual cues such as changes in apparent size, parallax and "
    "perspective, and turn them into estimates of how the camera and the object moved.\n"
    "Step 4: Describe the 3D state at the end frame. Give the camera center and the object center again and check "
    "them against the start state and the estimated motion.\n"
    "Step 5: Combine the evidence from the previous steps and choose the answer that follows from the reconstructed "
    "trajectory.\n";

inline constexpr std::string_view kOutputFormat =
    "Write all reasoning inside <thinking> </thinking> and only the final option inside <answer> </answer>.\n"
    "Inside <thinking>, report coordinates for the start and end frames on lines of the form\n"
    "Object Center:[[x, y, z], [x, y, z]]\n"
    "Camera Center:[[x, y, z], [x, y, z]]\n"
    "Response skeleton:\n"
    "<thinking> reasoning ... Object Center:[...]\n"
    "Camera Center:[...]\n"
    "reasoning ... </thinking>\n"
    "<answer>option letter</answer>";

}  // namespace detail

/// System prompt for a training stage.
inline std::string system_prompt(PromptStage stage) {
  switch (stage) {
    case PromptStage::kSft: return "You are a helpful assistant.";
    case PromptStage::kColdStart:
      return "You are a visual physics engine that reasons about how 3D positions of the camera and of objects "
             "change over the frames of a video.\n" +
             std::string(detail::kReasoningSteps) + std::string(detail::kOutputFormat);
    case PromptStage::kGrpo:
      return "You are a helpful assistant that answers spatiotemporal questions about videos by tracking the camera "
             "and objects in 3D.\n" +
             std::string(detail::kReasoningSteps) + std::string(detail::kOutputFormat);
  }
  return {};
}

}  // namespace stqa

#endif  // STQA_PROMPTS_HPP_
