#ifndef STQA_QA_GENERATOR_HPP_
#define STQA_QA_GENERATOR_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stqa/json_io.hpp"
#include "stqa/relation_solver.hpp"
#include "stqa/rng.hpp"
#include "stqa/scene_model.hpp"

namespace stqa {

enum class TaskKind {
  kCamAbsDis,
  kCamRelDir,
  kObjAbsDis,
  kObjCamAbsDis,
  kObjCamRelDis,
  kObjCamRelDirLateral,
  kObjCamRelDirLongitudinal,
};

inline constexpr std::array<TaskKind, 7> kAllTasks = {
    TaskKind::kCamAbsDis,    TaskKind::kCamRelDir,           TaskKind::kObjAbsDis,
    TaskKind::kObjCamAbsDis, TaskKind::kObjCamRelDis,        TaskKind::kObjCamRelDirLateral,
    TaskKind::kObjCamRelDirLongitudinal,
};

/// Benchmark columns; both relative-direction task kinds pool into kObjCamRelDir.
enum class Subtask { kCamAbsDis, kCamRelDir, kObjAbsDis, kObjCamAbsDis, kObjCamRelDis, kObjCamRelDir };

inline constexpr std::array<Subtask, 6> kAllSubtasks = {
    Subtask::kCamAbsDis,    Subtask::kCamRelDir,    Subtask::kObjAbsDis,
    Subtask::kObjCamAbsDis, Subtask::kObjCamRelDis, Subtask::kObjCamRelDir,
};

inline std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::kCamAbsDis: return "cam_abs_dis";
    case TaskKind::kCamRelDir: return "cam_rel_dir";
    case TaskKind::kObjAbsDis: return "obj_abs_dis";
    case TaskKind::kObjCamAbsDis: return "objcam_abs_dis";
    case TaskKind::kObjCamRelDis: return "objcam_rel_dis";
    case TaskKind::kObjCamRelDirLateral: return "objcam_rel_dir_lateral";
    case TaskKind::kObjCamRelDirLongitudinal: return "objcam_rel_dir_longitudinal";
  }
  return "unknown";
}

inline std::optional<TaskKind> task_from_string(std::string_view s) {
  for (auto t : kAllTasks) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

inline std::string_view to_string(Subtask s) {
  switch (s) {
    case Subtask::kCamAbsDis: return "cam_abs_dis";
    case Subtask::kCamRelDir: return "cam_rel_dir";
    case Subtask::kObjAbsDis: return "obj_abs_dis";
    case Subtask::kObjCamAbsDis: return "objcam_abs_dis";
    case Subtask::kObjCamRelDis: return "objcam_rel_dis";
    case Subtask::kObjCamRelDir: return "objcam_rel_dir";
  }
  return "unknown";
}

inline Subtask subtask_of(TaskKind t) {
  switch (t) {
    case TaskKind::kCamAbsDis: return Subtask::kCamAbsDis;
    case TaskKind::kCamRelDir: return Subtask::kCamRelDir;
    case TaskKind::kObjAbsDis: return Subtask::kObjAbsDis;
    case TaskKind::kObjCamAbsDis: return Subtask::kObjCamAbsDis;
    case TaskKind::kObjCamRelDis: return Subtask::kObjCamRelDis;
    case TaskKind::kObjCamRelDirLateral:
    case TaskKind::kObjCamRelDirLongitudinal: return Subtask::kObjCamRelDir;
  }
  return Subtask::kCamAbsDis;
}

inline bool involves_object(TaskKind t) { return t != TaskKind::kCamAbsDis && t != TaskKind::kCamRelDir; }

inline bool is_numeric(TaskKind t) {
  return t == TaskKind::kCamAbsDis || t == TaskKind::kObjAbsDis || t == TaskKind::kObjCamAbsDis;
}

struct GenerationConfig {
  std::uint64_t seed = 0;
  std::size_t option_count = 4;
  double distractor_lo = 0.25;
  double distractor_hi = 1.75;
  double min_option_separation = 0.10;  // fraction of the true value
  std::size_t per_video_cap = 20;
  double tau = kDefaultTau;
  double min_motion = kDefaultMinMotion;
  int value_rounding = 1;  // decimal places in option text
  std::size_t frame_stride = 1;
  bool keep_static_labels = false;
  DirectionMode direction_mode = DirectionMode::kCenterDisplacement;

  void validate() const {
    auto bad = [](const std::string& m) { throw Error(ErrorKind::kInvalidConfig, m); };
    if (!(distractor_lo > 0 && distractor_lo < 1 && distractor_hi > 1)) bad("need 0 < distractor_lo < 1 < distractor_hi");
    if (option_count < 2) bad("option_count must be >= 2");
    if (per_video_cap < 1) bad("per_video_cap must be >= 1");
    if (!(tau > 0)) bad("tau must be positive");
    if (!(min_motion >= 0)) bad("min_motion must be non-negative");
    if (!(min_option_separation >= 0)) bad("min_option_separation must be non-negative");
    if (value_rounding < 0 || value_rounding > 9) bad("value_rounding must be in [0, 9]");
    if (frame_stride < 1) bad("frame_stride must be >= 1");
  }
};

struct GroundTruthAnchors {
  std::array<Vec3, 2> camera_centers{Vec3::Zero(), Vec3::Zero()};
  std::optional<std::array<Vec3, 2>> object_centroids;
};

using GtValue = std::variant<double, std::string>;

struct QAPair {
  std::string id;
  std::string video_id;
  TaskKind task = TaskKind::kCamAbsDis;
  std::size_t frame_start = 0;
  std::size_t frame_end = 0;
  std::optional<std::string> object_id;
  std::string question;
  std::vector<std::string> options;
  std::size_t answer_index = 0;
  GtValue gt_value = 0.0;
  GroundTruthAnchors gt_anchors;
};

struct FramePair {
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<std::size_t> object;  // index into scene.objects

  friend bool operator==(const FramePair&, const FramePair&) = default;
};

// ---------------------------------------------------------------------------
// Numeric option helpers

inline double round_to(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

inline std::string format_value(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, round_to(x, decimals));
  return buf;
}

/// Whether option_count rounded options can be placed for true value v:
/// the rounded truth plus option_count - 1 rounded grid values inside the
/// distractor band, all pairwise at least min_option_separation * v apart.
inline bool numeric_mcq_feasible(double v, const GenerationConfig& cfg) {
  if (!(v > 0) || !std::isfinite(v)) return false;
  const double truth = round_to(v, cfg.value_rounding);
  if (!(truth > 0)) return false;
  const double step = std::pow(10.0, -cfg.value_rounding);
  const double lo = cfg.distractor_lo * v;
  const double hi = cfg.distractor_hi * v;
  const double gap = cfg.min_option_separation * v;
  std::size_t found = 0;
  std::optional<double> last;
  double n = std::ceil(lo / step) - 1;
  while (found + 1 < cfg.option_count) {
    const double x = round_to(n * step, cfg.value_rounding);
    if (x > hi) break;
    if (x >= lo && x != truth && std::abs(x - truth) >= gap && (!last || (x > *last && x - *last >= gap))) {
      last = x;
      ++found;
      n = std::max(n + 1, std::floor((x + gap) / step) - 1);
    } else if (std::abs(x - truth) < gap || x == truth) {
      n = std::max(n + 1, std::floor((truth + gap) / step) - 1);
    } else {
      n += 1;
    }
  }
  return found + 1 >= cfg.option_count;
}

struct NumericMcq {
  std::vector<double> values;  // rounded option values
  std::vector<std::string> options;
  std::size_t answer_index = 0;
};

/// Shuffled multiple-choice options around true value v. Distractors are drawn
/// uniformly from [lo*v, hi*v], rounded, and redrawn until they sit inside the
/// band and far enough from every other option.
inline NumericMcq generate_numeric_mcq(double v, Rng& rng, const GenerationConfig& cfg) {
  if (!numeric_mcq_feasible(v, cfg)) {
    throw Error(ErrorKind::kDegenerateValue, "true value " + std::to_string(v) + " too small for numeric options");
  }
  const double truth = round_to(v, cfg.value_rounding);
  const double lo = cfg.distractor_lo * v;
  const double hi = cfg.distractor_hi * v;
  const double gap = cfg.min_option_separation * v;

  constexpr int kRounds = 64;
  constexpr int kDrawsPerRound = 4096;
  std::vector<double> values;
  for (int round = 0; round < kRounds; ++round) {
    values.assign(1, truth);
    for (int draw = 0; draw < kDrawsPerRound && values.size() < cfg.option_count; ++draw) {
      const double d = round_to(rng.uniform(lo, hi), cfg.value_rounding);
      if (d < lo || d > hi) continue;
      bool ok = true;
      for (double e : values) {
        if (d == e || std::abs(d - e) < gap) {
          ok = false;
          break;
        }
      }
      if (ok) values.push_back(d);
    }
    if (values.size() == cfg.option_count) break;
  }
  if (values.size() != cfg.option_count) {
    throw Error(ErrorKind::kDegenerateValue, "could not place distractors for value " + std::to_string(v));
  }

  std::vector<std::size_t> order(values.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  rng.shuffle(order);

  NumericMcq out;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out.values.push_back(values[order[pos]]);
    out.options.push_back(format_value(values[order[pos]], cfg.value_rounding));
    if (order[pos] == 0) out.answer_index = pos;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Question templates

inline std::string render_question(TaskKind task, std::size_t frame_start, std::size_t frame_end,
                                   std::optional<std::string_view> description = std::nullopt) {
  if (involves_object(task) && (!description || description->empty())) {
    throw Error(ErrorKind::kInvalidArgument, std::string("task ") + std::string(to_string(task)) +
                                                 " needs an object description");
  }
  const std::string fi = "frame " + std::to_string(frame_start);
  const std::string fj = "frame " + std::to_string(frame_end);
  const std::string desc = description ? std::string(*description) : std::string();
  const std::string during = "During the sequence between " + fi + " and " + fj + ", ";
  switch (task) {
    case TaskKind::kCamAbsDis:
      return "Approximately how far (in meters) did the camera move between " + fi + " and " + fj + "?";
    case TaskKind::kCamRelDir:
      return during +
             "what was the primary consistent translation of the camera's movement relative to its position at the "
             "start?";
    case TaskKind::kObjAbsDis:
      return "Approximately how far (in meters) did " + desc + " move between " + fi + " and " + fj + "?";
    case TaskKind::kObjCamAbsDis: {
      const bool has_article = desc.size() > 4 && (desc.compare(0, 4, "the ") == 0 || desc.compare(0, 4, "The ") == 0);
      return "What is the approximate distance (in meters) between the camera (or the observer filming) in " + fi +
             " and the nearest point of " + (has_article ? "" : "the ") + desc + " in " + fj + "?";
    }
    case TaskKind::kObjCamRelDis:
      return during + "is the distance between " + desc +
             " and the camera (or the observer filming) getting closer or farther away?";
    case TaskKind::kObjCamRelDirLateral:
      return during + "is " + desc +
             " getting left or right from the camera (or the observer filming) relative to camera's position at the "
             "start?";
    case TaskKind::kObjCamRelDirLongitudinal:
      return during + "is " + desc +
             " getting closer or farther away from the camera (or the observer filming) relative to camera's position "
             "at the start?";
  }
  return {};
}

inline constexpr std::string_view kStaticLabel = "not moving";

/// Fixed option labels for a categorical task, before shuffling.
inline std::vector<std::string> label_set(TaskKind task, bool keep_static) {
  std::vector<std::string> labels;
  switch (task) {
    case TaskKind::kCamRelDir: labels = {"right", "left", "up", "down", "forward", "backward"}; break;
    case TaskKind::kObjCamRelDis:
    case TaskKind::kObjCamRelDirLongitudinal: labels = {"closer", "farther"}; break;
    case TaskKind::kObjCamRelDirLateral: labels = {"left", "right"}; break;
    default: return {};
  }
  if (keep_static) labels.emplace_back(kStaticLabel);
  return labels;
}

// ---------------------------------------------------------------------------
// Candidate enumeration

/// Ground truth of one (task, pair) candidate. `label` is empty for numeric
/// tasks and "not moving" for the static categorical outcome.
struct Evaluation {
  double value = 0.0;
  std::string label;
};

/// Evaluates the task on a pair; std::nullopt when the candidate falls under
/// the motion floor or the object is not visible at both frames.
inline std::optional<Evaluation> evaluate_candidate(const SceneMetadata& scene, TaskKind task, const FramePair& pair,
                                                    const GenerationConfig& cfg) {
  if (involves_object(task)) {
    if (!pair.object) return std::nullopt;
    const auto& obj = scene.objects[*pair.object];
    if (!obj.present_at(pair.i) || !obj.present_at(pair.j)) return std::nullopt;
  }
  auto numeric = [&](double v) -> std::optional<Evaluation> {
    if (v <= cfg.min_motion || !numeric_mcq_feasible(v, cfg)) return std::nullopt;
    return Evaluation{v, {}};
  };
  switch (task) {
    case TaskKind::kCamAbsDis: return numeric(camera_absolute_distance(scene, pair.i, pair.j));
    case TaskKind::kObjAbsDis: return numeric(object_absolute_distance(scene, *pair.object, pair.i, pair.j));
    case TaskKind::kObjCamAbsDis:
      return numeric(object_camera_absolute_distance(scene, *pair.object, pair.i, pair.j));
    case TaskKind::kCamRelDir: {
      const auto d = camera_relative_direction(scene, pair.i, pair.j, cfg.min_motion, cfg.direction_mode);
      if (d.label == Direction::kNone) {
        if (!cfg.keep_static_labels) return std::nullopt;
        return Evaluation{d.vector.norm(), std::string(kStaticLabel)};
      }
      return Evaluation{d.vector.norm(), std::string(to_string(d.label))};
    }
    case TaskKind::kObjCamRelDis: {
      const auto r = object_camera_relative_distance(scene, *pair.object, pair.i, pair.j, cfg.tau);
      if (r.label == RelativeMotion::kNotMoving) {
        if (!cfg.keep_static_labels) return std::nullopt;
        return Evaluation{r.delta, std::string(kStaticLabel)};
      }
      return Evaluation{r.delta, std::string(to_string(r.label))};
    }
    case TaskKind::kObjCamRelDirLateral:
    case TaskKind::kObjCamRelDirLongitudinal: {
      const auto r = object_camera_relative_direction(scene, *pair.object, pair.i, pair.j, cfg.tau);
      const bool lateral = task == TaskKind::kObjCamRelDirLateral;
      const double delta = lateral ? r.dx : r.dz;
      const std::string label =
          lateral ? std::string(to_string(r.lateral)) : std::string(to_string(r.longitudinal));
      if (label == "none") {
        if (!cfg.keep_static_labels) return std::nullopt;
        return Evaluation{delta, std::string(kStaticLabel)};
      }
      return Evaluation{delta, label};
    }
  }
  return std::nullopt;
}

/// Ordered pairs i < j (on the frame_stride grid) whose task quantity clears
/// the motion floor; object tasks emit one entry per visible object.
inline std::vector<FramePair> enumerate_frame_pairs(const SceneMetadata& scene, TaskKind task,
                                                    const GenerationConfig& cfg) {
  std::vector<FramePair> out;
  const std::size_t k = std::min(scene.frame_count, scene.cameras.size());
  for (std::size_t i = 0; i < k; i += cfg.frame_stride) {
    for (std::size_t j = i + cfg.frame_stride; j < k; j += cfg.frame_stride) {
      if (!involves_object(task)) {
        FramePair pair{i, j, std::nullopt};
        if (evaluate_candidate(scene, task, pair, cfg)) out.push_back(pair);
        continue;
      }
      for (std::size_t m = 0; m < scene.objects.size(); ++m) {
        FramePair pair{i, j, m};
        if (evaluate_candidate(scene, task, pair, cfg)) out.push_back(pair);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scene-level generation

inline std::string make_qa_id(std::string_view video_id, TaskKind task, std::size_t i, std::size_t j,
                              const std::optional<std::string>& object_id) {
  std::string id = std::string(video_id) + "/" + std::string(to_string(task)) + "/" + std::to_string(i) + "-" +
                   std::to_string(j);
  if (object_id) id += "/" + *object_id;
  return id;
}

inline QAPair build_qa(const SceneMetadata& scene, TaskKind task, const FramePair& pair, const Evaluation& eval,
                       const GenerationConfig& cfg) {
  QAPair qa;
  qa.video_id = scene.video_id;
  qa.task = task;
  qa.frame_start = pair.i;
  qa.frame_end = pair.j;
  const ObjectTrack* obj = pair.object ? &scene.objects[*pair.object] : nullptr;
  if (obj) qa.object_id = obj->object_id;
  qa.id = make_qa_id(scene.video_id, task, pair.i, pair.j, qa.object_id);
  qa.question = render_question(task, pair.i, pair.j,
                                obj ? std::optional<std::string_view>(obj->description) : std::nullopt);

  Rng rng(derive_seed(cfg.seed, scene.video_id, to_string(task), pair.i, pair.j,
                      qa.object_id ? std::string_view(*qa.object_id) : std::string_view()));
  if (is_numeric(task)) {
    auto mcq = generate_numeric_mcq(eval.value, rng, cfg);
    qa.options = std::move(mcq.options);
    qa.answer_index = mcq.answer_index;
    qa.gt_value = eval.value;
  } else {
    qa.options = label_set(task, cfg.keep_static_labels);
    rng.shuffle(qa.options);
    const auto it = std::find(qa.options.begin(), qa.options.end(), eval.label);
    if (it == qa.options.end()) throw Error(ErrorKind::kInvalidArgument, "label '" + eval.label + "' not in option set");
    qa.answer_index = static_cast<std::size_t>(it - qa.options.begin());
    qa.gt_value = eval.label;
  }

  qa.gt_anchors.camera_centers = {camera_center(scene.cameras[pair.i]), camera_center(scene.cameras[pair.j])};
  if (obj) qa.gt_anchors.object_centroids = std::array<Vec3, 2>{object_centroid(*obj, pair.i), object_centroid(*obj, pair.j)};
  return qa;
}

/// All QA pairs for one scene, downsampled uniformly to per_video_cap.
/// Deterministic in (scene, cfg); every draw is keyed by video and item.
inline std::vector<QAPair> generate_for_scene(const SceneMetadata& scene, const GenerationConfig& cfg) {
  cfg.validate();
  const auto report = validate_scene(scene);
  if (!report.valid) {
    for (const auto& issue : report.issues) {
      if (issue.severity == Severity::kError) {
        throw Error(ErrorKind::kValidation, scene.video_id + ": " + issue.locus + ": " + issue.message);
      }
    }
  }
  if (scene.frame_count < 2) return {};

  struct Candidate {
    TaskKind task;
    FramePair pair;
    Evaluation eval;
  };
  std::vector<Candidate> candidates;
  for (auto task : kAllTasks) {
    for (const auto& pair : enumerate_frame_pairs(scene, task, cfg)) {
      candidates.push_back({task, pair, *evaluate_candidate(scene, task, pair, cfg)});
    }
  }

  std::vector<std::size_t> chosen(candidates.size());
  for (std::size_t k = 0; k < chosen.size(); ++k) chosen[k] = k;
  if (chosen.size() > cfg.per_video_cap) {
    Rng rng(derive_seed(cfg.seed, scene.video_id, "per_video_cap"));
    for (std::size_t k = 0; k < cfg.per_video_cap; ++k) {
      std::swap(chosen[k], chosen[k + rng.below(chosen.size() - k)]);
    }
    chosen.resize(cfg.per_video_cap);
    std::sort(chosen.begin(), chosen.end());
  }

  std::vector<QAPair> out;
  out.reserve(chosen.size());
  for (auto k : chosen) out.push_back(build_qa(scene, candidates[k].task, candidates[k].pair, candidates[k].eval, cfg));
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark balancing

struct BenchmarkManifest {
  std::size_t per_subtask = 0;
  std::array<std::vector<std::string>, 6> ids;  // indexed by Subtask

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& v : ids) n += v.size();
    return n;
  }
};

/// Draws per_subtask pairs for each of the six subtasks, round-robin over
/// seeded per-subtask shuffles, admitting at most per_video_cap pairs per video.
inline BenchmarkManifest balance_benchmark(const std::vector<QAPair>& pairs, std::size_t per_subtask,
                                           std::size_t per_video_cap, std::uint64_t seed) {
  if (per_video_cap < 1) throw Error(ErrorKind::kInvalidConfig, "per_video_cap must be >= 1");
  std::array<std::vector<std::size_t>, 6> pools;
  for (std::size_t k = 0; k < pairs.size(); ++k) pools[static_cast<int>(subtask_of(pairs[k].task))].push_back(k);

  for (auto s : kAllSubtasks) {
    auto& pool = pools[static_cast<int>(s)];
    if (pool.size() < per_subtask) {
      throw Error(ErrorKind::kInsufficientPairs, "subtask " + std::string(to_string(s)) + " has " +
                                                     std::to_string(pool.size()) + " pairs, needs " +
                                                     std::to_string(per_subtask));
    }
    Rng rng(derive_seed(seed, "benchmark", to_string(s)));
    rng.shuffle(pool);
  }

  BenchmarkManifest manifest;
  manifest.per_subtask = per_subtask;
  std::map<std::string, std::size_t> per_video;
  std::array<std::size_t, 6> cursor{};
  for (std::size_t filled = 0; filled < per_subtask; ++filled) {
    for (auto s : kAllSubtasks) {
      const int si = static_cast<int>(s);
      auto& pool = pools[si];
      bool placed = false;
      while (cursor[si] < pool.size()) {
        const QAPair& qa = pairs[pool[cursor[si]++]];
        auto& count = per_video[qa.video_id];
        if (count >= per_video_cap) continue;
        ++count;
        manifest.ids[si].push_back(qa.id);
        placed = true;
        break;
      }
      if (!placed) {
        throw Error(ErrorKind::kInsufficientPairs, "subtask " + std::string(to_string(s)) + " ran out of pairs under per-video cap " +
                                                       std::to_string(per_video_cap) + " after " +
                                                       std::to_string(manifest.ids[si].size()));
      }
    }
  }
  return manifest;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json qa_to_json(const QAPair& qa) {
  using nlohmann::json;
  json anchors = {{"camera_centers", json::array({json_io::to_json(qa.gt_anchors.camera_centers[0]),
                                                  json_io::to_json(qa.gt_anchors.camera_centers[1])})},
                  {"object_centroids", nullptr}};
  if (qa.gt_anchors.object_centroids) {
    anchors["object_centroids"] = json::array(
        {json_io::to_json((*qa.gt_anchors.object_centroids)[0]), json_io::to_json((*qa.gt_anchors.object_centroids)[1])});
  }
  json j = {{"id", qa.id},
            {"video_id", qa.video_id},
            {"task", std::string(to_string(qa.task))},
            {"frame_start", qa.frame_start},
            {"frame_end", qa.frame_end},
            {"object_id", qa.object_id ? json(*qa.object_id) : json(nullptr)},
            {"question", qa.question},
            {"options", qa.options},
            {"answer_index", qa.answer_index},
            {"gt_value", nullptr},
            {"gt_anchors", std::move(anchors)}};
  if (const auto* d = std::get_if<double>(&qa.gt_value)) {
    j["gt_value"] = *d;
  } else {
    j["gt_value"] = std::get<std::string>(qa.gt_value);
  }
  return j;
}

inline QAPair qa_from_json(const nlohmann::json& j) {
  using namespace json_io;
  QAPair qa;
  qa.id = string(field(j, "id", "$"), "$.id");
  qa.video_id = string(field(j, "video_id", "$"), "$.video_id");
  const auto task = task_from_string(string(field(j, "task", "$"), "$.task"));
  if (!task) fail("$.task", "unknown task kind");
  qa.task = *task;
  qa.frame_start = static_cast<std::size_t>(integer(field(j, "frame_start", "$"), "$.frame_start"));
  qa.frame_end = static_cast<std::size_t>(integer(field(j, "frame_end", "$"), "$.frame_end"));
  const auto& oid = field(j, "object_id", "$");
  if (!oid.is_null()) qa.object_id = string(oid, "$.object_id");
  qa.question = string(field(j, "question", "$"), "$.question");
  const auto& opts = field(j, "options", "$");
  if (!opts.is_array() || opts.empty()) fail("$.options", "expected non-empty array");
  for (std::size_t k = 0; k < opts.size(); ++k) qa.options.push_back(string(opts[k], "$.options[" + std::to_string(k) + "]"));
  const auto ans = integer(field(j, "answer_index", "$"), "$.answer_index");
  if (ans < 0 || static_cast<std::size_t>(ans) >= qa.options.size()) fail("$.answer_index", "out of range");
  qa.answer_index = static_cast<std::size_t>(ans);
  const auto& gt = field(j, "gt_value", "$");
  if (gt.is_number()) {
    qa.gt_value = gt.get<double>();
  } else if (gt.is_string()) {
    qa.gt_value = gt.get<std::string>();
  } else {
    fail("$.gt_value", "expected number or string");
  }
  const auto& anchors = field(j, "gt_anchors", "$");
  const auto& cams = field(anchors, "camera_centers", "$.gt_anchors");
  if (!cams.is_array() || cams.size() != 2) fail("$.gt_anchors.camera_centers", "expected 2 points");
  qa.gt_anchors.camera_centers = {vec3(cams[0], "$.gt_anchors.camera_centers[0]"),
                                  vec3(cams[1], "$.gt_anchors.camera_centers[1]")};
  if (auto it = anchors.find("object_centroids"); it != anchors.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 2) fail("$.gt_anchors.object_centroids", "expected 2 points");
    qa.gt_anchors.object_centroids = std::array<Vec3, 2>{vec3((*it)[0], "$.gt_anchors.object_centroids[0]"),
                                                         vec3((*it)[1], "$.gt_anchors.object_centroids[1]")};
  }
  return qa;
}

inline nlohmann::json manifest_to_json(const BenchmarkManifest& m) {
  nlohmann::json subtasks = nlohmann::json::object();
  for (auto s : kAllSubtasks) subtasks[std::string(to_string(s))] = m.ids[static_cast<int>(s)];
  return {{"per_subtask", m.per_subtask}, {"total", m.size()}, {"subtasks", std::move(subtasks)}};
}

/// Question plus lettered options, as shown to a model.
inline std::string render_mcq_prompt(const QAPair& qa) {
  std::string out = qa.question;
  for (std::size_t k = 0; k < qa.options.size(); ++k) {
    out += "\n";
    out += static_cast<char>('A' + k);
    out += ". " + qa.options[k];
  }
  return out;
}

}  // namespace stqa

#endif  // STQA_QA_GENERATOR_HPP_
