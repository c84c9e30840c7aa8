#ifndef STQA_RELATION_SOLVER_HPP_
#define STQA_RELATION_SOLVER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "stqa/scene_model.hpp"

namespace stqa {

// Camera-local axes: +X right, +Y down, +Z forward.
enum class Direction { kRight, kLeft, kDown, kUp, kForward, kBackward, kNone };
enum class RelativeMotion { kCloser, kFarther, kNotMoving };
enum class Lateral { kLeft, kRight, kNone };
enum class Longitudinal { kCloser, kFarther, kNone };

/// How camera_relative_direction builds its displacement vector.
enum class DirectionMode {
  /// R_i (c_j - c_i): camera-center displacement expressed in the frame-i
  /// camera axes. Invariant to global rigid transforms.
  kCenterDisplacement,
  /// R_i^T (t_j - t_i): the raw translation difference, taken literally.
  kRawTranslation,
};

inline constexpr double kDefaultTau = 0.1;
inline constexpr double kDefaultMinMotion = 0.05;
inline constexpr double kAxisTieTolerance = 1e-9;

struct CameraDirection {
  Direction label = Direction::kNone;
  Vec3 vector = Vec3::Zero();
};

struct LateralLongitudinal {
  Lateral lateral = Lateral::kNone;
  Longitudinal longitudinal = Longitudinal::kNone;
  double dx = 0.0;
  double dz = 0.0;
};

struct RelativeDistance {
  RelativeMotion label = RelativeMotion::kNotMoving;
  double delta = 0.0;
};

inline std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kRight: return "right";
    case Direction::kLeft: return "left";
    case Direction::kDown: return "down";
    case Direction::kUp: return "up";
    case Direction::kForward: return "forward";
    case Direction::kBackward: return "backward";
    case Direction::kNone: break;
  }
  return "none";
}

inline std::string_view to_string(RelativeMotion m) {
  switch (m) {
    case RelativeMotion::kCloser: return "closer";
    case RelativeMotion::kFarther: return "farther";
    case RelativeMotion::kNotMoving: break;
  }
  return "not_moving";
}

inline std::string_view to_string(Lateral l) {
  switch (l) {
    case Lateral::kLeft: return "left";
    case Lateral::kRight: return "right";
    case Lateral::kNone: break;
  }
  return "none";
}

inline std::string_view to_string(Longitudinal l) {
  switch (l) {
    case Longitudinal::kCloser: return "closer";
    case Longitudinal::kFarther: return "farther";
    case Longitudinal::kNone: break;
  }
  return "none";
}

inline std::string_view to_string(DirectionMode m) {
  return m == DirectionMode::kRawTranslation ? "raw_translation" : "center_displacement";
}

namespace detail {

inline void check_frame(const SceneMetadata& scene, std::size_t f) {
  if (f >= scene.frame_count || f >= scene.cameras.size()) {
    throw Error(ErrorKind::kFrameOutOfRange,
                "frame " + std::to_string(f) + " out of range (K=" + std::to_string(scene.frame_count) + ")");
  }
}

inline const ObjectTrack& check_object(const SceneMetadata& scene, std::size_t m) {
  if (m >= scene.objects.size()) {
    throw Error(ErrorKind::kInvalidArgument, "object index " + std::to_string(m) + " out of range");
  }
  return scene.objects[m];
}

inline double min_distance(const PointSet& points, const Vec3& from) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, (p - from).norm());
  return best;
}

}  // namespace detail

/// Dominant-magnitude axis of a camera-local vector, with Z > X > Y priority
/// on ties. Vectors no longer than min_motion map to kNone.
inline Direction dominant_direction(const Vec3& d, double min_motion) {
  if (d.norm() <= min_motion) return Direction::kNone;
  const double ax = std::abs(d.x());
  const double ay = std::abs(d.y());
  const double az = std::abs(d.z());
  if (az >= ax - kAxisTieTolerance && az >= ay - kAxisTieTolerance) {
    return d.z() > 0 ? Direction::kForward : Direction::kBackward;
  }
  if (ax >= ay - kAxisTieTolerance) {
    return d.x() > 0 ? Direction::kRight : Direction::kLeft;
  }
  return d.y() > 0 ? Direction::kDown : Direction::kUp;
}

inline double camera_absolute_distance(const SceneMetadata& scene, std::size_t i, std::size_t j) {
  detail::check_frame(scene, i);
  detail::check_frame(scene, j);
  return (camera_center(scene.cameras[j]) - camera_center(scene.cameras[i])).norm();
}

inline CameraDirection camera_relative_direction(const SceneMetadata& scene, std::size_t i, std::size_t j,
                                                 double min_motion = kDefaultMinMotion,
                                                 DirectionMode mode = DirectionMode::kCenterDisplacement) {
  detail::check_frame(scene, i);
  detail::check_frame(scene, j);
  const auto& ci = scene.cameras[i];
  const auto& cj = scene.cameras[j];
  CameraDirection out;
  if (mode == DirectionMode::kRawTranslation) {
    out.vector = ci.R.transpose() * (cj.t - ci.t);
  } else {
    out.vector = ci.R * (camera_center(cj) - camera_center(ci));
  }
  out.label = dominant_direction(out.vector, min_motion);
  return out;
}

/// Distance between the object's centroids at frames i and j.
inline double object_absolute_distance(const SceneMetadata& scene, std::size_t m, std::size_t i, std::size_t j) {
  const auto& obj = detail::check_object(scene, m);
  return (object_centroid(obj, j) - object_centroid(obj, i)).norm();
}

/// Nearest-point distance from the camera center at cam_frame to the object at obj_frame.
inline double object_camera_absolute_distance(const SceneMetadata& scene, std::size_t m, std::size_t cam_frame,
                                              std::size_t obj_frame) {
  detail::check_frame(scene, cam_frame);
  const auto& obj = detail::check_object(scene, m);
  return detail::min_distance(object_points(obj, obj_frame), camera_center(scene.cameras[cam_frame]));
}

inline RelativeMotion classify_relative_motion(double delta, double tau) {
  if (delta > tau) return RelativeMotion::kFarther;
  if (delta < -tau) return RelativeMotion::kCloser;
  return RelativeMotion::kNotMoving;
}

/// Change in same-frame camera-object distance, d_j - d_i, and its label.
inline RelativeDistance object_camera_relative_distance(const SceneMetadata& scene, std::size_t m, std::size_t i,
                                                        std::size_t j, double tau = kDefaultTau) {
  if (!(tau > 0)) throw Error(ErrorKind::kInvalidArgument, "tau must be positive");
  const double di = object_camera_absolute_distance(scene, m, i, i);
  const double dj = object_camera_absolute_distance(scene, m, j, j);
  RelativeDistance out;
  out.delta = dj - di;
  out.label = classify_relative_motion(out.delta, tau);
  return out;
}

/// Centroid shift of the object between frames i and j, both expressed in
/// the frame-i camera coordinates.
inline LateralLongitudinal object_camera_relative_direction(const SceneMetadata& scene, std::size_t m, std::size_t i,
                                                            std::size_t j, double tau = kDefaultTau) {
  detail::check_frame(scene, i);
  detail::check_frame(scene, j);
  const auto& obj = detail::check_object(scene, m);
  const auto& cam = scene.cameras[i];
  auto local_centroid = [&](std::size_t frame) {
    const PointSet& pts = object_points(obj, frame);
    Vec3 sum = Vec3::Zero();
    for (const auto& p : pts) sum += cam.R * p + cam.t;
    return Vec3(sum / static_cast<double>(pts.size()));
  };
  const Vec3 before = local_centroid(i);
  const Vec3 after = local_centroid(j);

  LateralLongitudinal out;
  out.dx = after.x() - before.x();
  out.dz = after.z() - before.z();
  if (out.dx > tau) {
    out.lateral = Lateral::kRight;
  } else if (out.dx < -tau) {
    out.lateral = Lateral::kLeft;
  }
  if (out.dz > tau) {
    out.longitudinal = Longitudinal::kFarther;
  } else if (out.dz < -tau) {
    out.longitudinal = Longitudinal::kCloser;
  }
  return out;
}

}  // namespace stqa

#endif  // STQA_RELATION_SOLVER_HPP_
