#ifndef STQA_SYNTH_ORACLE_HPP_
#define STQA_SYNTH_ORACLE_HPP_

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stqa/json_io.hpp"
#include "stqa/qa_generator.hpp"
#include "stqa/scene_model.hpp"

// Parametric scenes with closed-form ground truth for every task kind. The
// truths below are derived from each generator's motion model directly and do
// not call into relation_solver.

namespace stqa::oracle {

struct Thresholds {
  double tau = kDefaultTau;
  double min_motion = kDefaultMinMotion;
};

/// Expected solver output for one (task, frame pair, object).
struct Truth {
  TaskKind task = TaskKind::kCamAbsDis;
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<std::size_t> object;
  /// Distance for numeric tasks; d_j - d_i for objcam_rel_dis; dx / dz for
  /// the lateral / longitudinal tasks; unused for cam_rel_dir.
  double value = 0;
  /// Solver label name ("forward", "not_moving", "none", ...); empty for numeric tasks.
  std::string label;
  /// cam_rel_dir only: expected vectors and labels in both direction modes.
  Vec3 center_vector = Vec3::Zero();
  Vec3 raw_vector = Vec3::Zero();
  std::string raw_label;
};

struct OracleScene {
  SceneMetadata scene;
  Thresholds thresholds;
  std::vector<Truth> truths;
};

struct DollyParams {
  std::size_t frames = 32;
  double speed = 0.5;  // meters per frame
  Vec3 object_offset{1.5, 0.5, 20.0};
  Vec3 axis{0.0, 0.0, 1.0};
  Vec3 camera_start = Vec3::Zero();
  Vec3 half_extents{0.5, 0.4, 0.3};
  std::string video_id = "dolly";
  Thresholds thresholds;
};

struct LinearObjectParams {
  std::size_t frames = 32;
  Vec3 velocity{0.2, 0.0, 0.0};  // meters per frame
  Vec3 start{0.0, 0.0, 5.0};
  Vec3 half_extents{0.5, 0.4, 0.3};
  std::string video_id = "linear";
  Thresholds thresholds;
};

struct OrbitParams {
  std::size_t frames = 32;
  double radius = 2.0;
  double angular_step = 0.1;  // radians per frame
  double half_height = 0.5;
  std::string video_id = "orbit";
  Thresholds thresholds;
};

namespace detail {

inline PointSet box_corners(const Vec3& center, const Vec3& half) {
  PointSet pts;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) pts.push_back(center + Vec3(sx * half.x(), sy * half.y(), sz * half.z()));
    }
  }
  return pts;
}

/// Distance from p to the nearest corner of an axis-aligned box: the nearest
/// corner takes, per axis, the face on p's side of the center.
inline double nearest_corner_distance(const Vec3& p, const Vec3& center, const Vec3& half) {
  Vec3 corner;
  for (int k = 0; k < 3; ++k) corner[k] = center[k] + (p[k] >= center[k] ? half[k] : -half[k]);
  return (corner - p).norm();
}

inline std::string direction_label(const Vec3& d, double min_motion) {
  if (std::sqrt(d.x() * d.x() + d.y() * d.y() + d.z() * d.z()) <= min_motion) return "none";
  const double ax = std::fabs(d.x()), ay = std::fabs(d.y()), az = std::fabs(d.z());
  constexpr double kTie = 1e-9;
  if (az + kTie >= ax && az + kTie >= ay) return d.z() > 0 ? "forward" : "backward";
  if (ax + kTie >= ay) return d.x() > 0 ? "right" : "left";
  return d.y() > 0 ? "down" : "up";
}

inline std::string motion_label(double delta, double tau) {
  if (delta > tau) return "farther";
  if (delta < -tau) return "closer";
  return "not_moving";
}

/// Closed-form quantities a generator supplies for the truth table.
struct Model {
  std::function<double(std::size_t, std::size_t)> cam_distance;
  std::function<Vec3(std::size_t, std::size_t)> cam_center_vector;
  std::function<Vec3(std::size_t, std::size_t)> cam_raw_vector;
  std::function<double(std::size_t, std::size_t)> obj_distance;
  std::function<double(std::size_t, std::size_t)> objcam_distance;  // (camera frame, object frame)
  std::function<Vec3(std::size_t, std::size_t)> obj_local_shift;    // centroid shift in frame-i camera axes
};

inline std::vector<Truth> build_truths(std::size_t frames, const Model& m, const Thresholds& th) {
  std::vector<Truth> out;
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t j = i + 1; j < frames; ++j) {
      Truth t;
      t.i = i;
      t.j = j;

      t.task = TaskKind::kCamAbsDis;
      t.value = m.cam_distance(i, j);
      out.push_back(t);

      Truth dir = t;
      dir.task = TaskKind::kCamRelDir;
      dir.value = 0;
      dir.center_vector = m.cam_center_vector(i, j);
      dir.raw_vector = m.cam_raw_vector(i, j);
      dir.label = direction_label(dir.center_vector, th.min_motion);
      dir.raw_label = direction_label(dir.raw_vector, th.min_motion);
      out.push_back(dir);

      Truth obj = t;
      obj.object = 0;
      obj.task = TaskKind::kObjAbsDis;
      obj.value = m.obj_distance(i, j);
      out.push_back(obj);

      obj.task = TaskKind::kObjCamAbsDis;
      obj.value = m.objcam_distance(i, j);
      out.push_back(obj);

      obj.task = TaskKind::kObjCamRelDis;
      obj.value = m.objcam_distance(j, j) - m.objcam_distance(i, i);
      obj.label = motion_label(obj.value, th.tau);
      out.push_back(obj);

      const Vec3 shift = m.obj_local_shift(i, j);
      obj.task = TaskKind::kObjCamRelDirLateral;
      obj.value = shift.x();
      obj.label = shift.x() > th.tau ? "right" : shift.x() < -th.tau ? "left" : "none";
      out.push_back(obj);

      obj.task = TaskKind::kObjCamRelDirLongitudinal;
      obj.value = shift.z();
      obj.label = shift.z() > th.tau ? "farther" : shift.z() < -th.tau ? "closer" : "none";
      out.push_back(obj);
    }
  }
  return out;
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, message);
}

}  // namespace detail

/// Camera translating along `axis` at constant speed with identity rotation;
/// one static box.
inline OracleScene make_dolly_scene(const DollyParams& p = {}) {
  detail::require(p.frames >= 2, "dolly scene needs at least 2 frames");
  detail::require(p.speed >= 0 && std::isfinite(p.speed), "dolly speed must be >= 0");
  detail::require(p.axis.norm() > 0, "dolly axis must be non-zero");
  const Vec3 axis = p.axis.normalized();
  auto center = [&](std::size_t k) -> Vec3 { return p.camera_start + static_cast<double>(k) * p.speed * axis; };

  OracleScene out;
  out.thresholds = p.thresholds;
  auto& s = out.scene;
  s.video_id = p.video_id;
  s.frame_count = p.frames;
  ObjectTrack box{"box", "the box", {}};
  for (std::size_t k = 0; k < p.frames; ++k) {
    s.cameras.push_back({RotationMatrix::Identity(), -center(k)});
    box.points_per_frame.emplace_back(detail::box_corners(p.object_offset, p.half_extents));
  }
  s.objects.push_back(std::move(box));

  detail::Model m;
  m.cam_distance = [&](std::size_t i, std::size_t j) { return p.speed * static_cast<double>(j - i); };
  m.cam_center_vector = [&](std::size_t i, std::size_t j) -> Vec3 { return p.speed * static_cast<double>(j - i) * axis; };
  // t_k = -c_k, so the raw translation difference points against the motion.
  m.cam_raw_vector = [&](std::size_t i, std::size_t j) -> Vec3 { return -p.speed * static_cast<double>(j - i) * axis; };
  m.obj_distance = [](std::size_t, std::size_t) { return 0.0; };
  m.objcam_distance = [&](std::size_t ci, std::size_t) {
    return detail::nearest_corner_distance(center(ci), p.object_offset, p.half_extents);
  };
  m.obj_local_shift = [](std::size_t, std::size_t) -> Vec3 { return Vec3::Zero(); };
  out.truths = detail::build_truths(p.frames, m, p.thresholds);
  return out;
}

/// Static identity camera at the origin; one rigid box moving at constant velocity.
inline OracleScene make_linear_object_scene(const LinearObjectParams& p = {}) {
  detail::require(p.frames >= 2, "linear-object scene needs at least 2 frames");
  detail::require(p.velocity.allFinite() && p.start.allFinite(), "linear-object parameters must be finite");
  auto centroid = [&](std::size_t k) -> Vec3 { return p.start + static_cast<double>(k) * p.velocity; };

  OracleScene out;
  out.thresholds = p.thresholds;
  auto& s = out.scene;
  s.video_id = p.video_id;
  s.frame_count = p.frames;
  ObjectTrack box{"box", "the moving box", {}};
  for (std::size_t k = 0; k < p.frames; ++k) {
    s.cameras.push_back({RotationMatrix::Identity(), Vec3::Zero()});
    box.points_per_frame.emplace_back(detail::box_corners(centroid(k), p.half_extents));
  }
  s.objects.push_back(std::move(box));

  const double speed = p.velocity.norm();
  detail::Model m;
  m.cam_distance = [](std::size_t, std::size_t) { return 0.0; };
  m.cam_center_vector = [](std::size_t, std::size_t) -> Vec3 { return Vec3::Zero(); };
  m.cam_raw_vector = [](std::size_t, std::size_t) -> Vec3 { return Vec3::Zero(); };
  m.obj_distance = [speed](std::size_t i, std::size_t j) { return speed * static_cast<double>(j - i); };
  m.objcam_distance = [&](std::size_t, std::size_t oj) {
    return detail::nearest_corner_distance(Vec3::Zero(), centroid(oj), p.half_extents);
  };
  m.obj_local_shift = [&](std::size_t i, std::size_t j) -> Vec3 { return static_cast<double>(j - i) * p.velocity; };
  out.truths = detail::build_truths(p.frames, m, p.thresholds);
  return out;
}

/// Camera circling a static vertical pole at the origin in the y = 0 plane,
/// always looking at it. Camera y points along world +y.
inline OracleScene make_orbit_scene(const OrbitParams& p = {}) {
  detail::require(p.frames >= 2, "orbit scene needs at least 2 frames");
  detail::require(p.radius > 0 && std::isfinite(p.radius), "orbit radius must be positive");
  detail::require(std::isfinite(p.angular_step), "orbit angular step must be finite");
  detail::require(p.half_height >= 0, "orbit pole half height must be >= 0");
  const double r = p.radius;
  auto angle = [&](std::size_t k) { return static_cast<double>(k) * p.angular_step; };

  OracleScene out;
  out.thresholds = p.thresholds;
  auto& s = out.scene;
  s.video_id = p.video_id;
  s.frame_count = p.frames;
  const Vec3 half(0.0, p.half_height, 0.0);
  ObjectTrack pole{"pole", "the pole", {}};
  for (std::size_t k = 0; k < p.frames; ++k) {
    const double a = angle(k);
    // Rows are the camera right, down and forward axes in world coordinates.
    RotationMatrix R;
    R << std::cos(a), 0.0, std::sin(a),  //
        0.0, 1.0, 0.0,                   //
        -std::sin(a), 0.0, std::cos(a);
    // Center r (sin a, 0, -cos a) gives R c = (0, 0, -r), so t = (0, 0, r).
    s.cameras.push_back({R, Vec3(0.0, 0.0, r)});
    pole.points_per_frame.emplace_back(detail::box_corners(Vec3::Zero(), half));
  }
  s.objects.push_back(std::move(pole));

  const double pole_distance = std::sqrt(r * r + p.half_height * p.half_height);
  detail::Model m;
  m.cam_distance = [&](std::size_t i, std::size_t j) {
    return 2.0 * r * std::fabs(std::sin((angle(j) - angle(i)) / 2.0));
  };
  m.cam_center_vector = [&](std::size_t i, std::size_t j) -> Vec3 {
    const double d = angle(j) - angle(i);
    return {r * std::sin(d), 0.0, r * (1.0 - std::cos(d))};
  };
  m.cam_raw_vector = [](std::size_t, std::size_t) -> Vec3 { return Vec3::Zero(); };
  m.obj_distance = [](std::size_t, std::size_t) { return 0.0; };
  m.objcam_distance = [pole_distance](std::size_t, std::size_t) { return pole_distance; };
  m.obj_local_shift = [](std::size_t, std::size_t) -> Vec3 { return Vec3::Zero(); };
  out.truths = detail::build_truths(p.frames, m, p.thresholds);
  return out;
}

inline nlohmann::json truths_to_json(const OracleScene& o) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& t : o.truths) {
    json row = {{"task", std::string(to_string(t.task))}, {"i", t.i}, {"j", t.j}};
    row["object_id"] = t.object ? json(o.scene.objects[*t.object].object_id) : json(nullptr);
    if (t.task == TaskKind::kCamRelDir) {
      row["label"] = t.label;
      row["vector"] = json_io::to_json(t.center_vector);
      row["raw_label"] = t.raw_label;
      row["raw_vector"] = json_io::to_json(t.raw_vector);
    } else {
      row["value"] = t.value;
      if (!t.label.empty()) row["label"] = t.label;
    }
    rows.push_back(std::move(row));
  }
  return {{"video_id", o.scene.video_id},
          {"tau", o.thresholds.tau},
          {"min_motion", o.thresholds.min_motion},
          {"truths", std::move(rows)}};
}

}  // namespace stqa::oracle

#endif  // STQA_SYNTH_ORACLE_HPP_
