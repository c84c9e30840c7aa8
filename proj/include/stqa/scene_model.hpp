#ifndef STQA_SCENE_MODEL_HPP_
#define STQA_SCENE_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "stqa/error.hpp"

namespace stqa {

/// World-frame point or vector, in meters.
using Vec3 = Eigen::Vector3d;
using RotationMatrix = Eigen::Matrix3d;
using PointSet = std::vector<Vec3>;

inline constexpr double kRotationTolerance = 1e-6;

/// World-to-camera extrinsics: a world point x maps to R * x + t.
struct CameraPose {
  RotationMatrix R = RotationMatrix::Identity();
  Vec3 t = Vec3::Zero();

  friend bool operator==(const CameraPose& a, const CameraPose& b) { return a.R == b.R && a.t == b.t; }
};

struct ObjectTrack {
  std::string object_id;
  std::string description;
  /// One entry per frame; std::nullopt where the object is not observed.
  std::vector<std::optional<PointSet>> points_per_frame;

  bool present_at(std::size_t frame) const {
    return frame < points_per_frame.size() && points_per_frame[frame].has_value() &&
           !points_per_frame[frame]->empty();
  }

  friend bool operator==(const ObjectTrack&, const ObjectTrack&) = default;
};

struct SceneMetadata {
  std::string video_id;
  std::size_t frame_count = 0;
  std::vector<CameraPose> cameras;
  std::vector<ObjectTrack> objects;

  friend bool operator==(const SceneMetadata&, const SceneMetadata&) = default;
};

enum class Severity { kWarning, kError };

struct ValidationIssue {
  Severity severity;
  std::string locus;  // e.g. "cameras[3]" or "objects[car].points[7]"
  std::string message;
};

struct SceneValidationReport {
  bool valid = true;
  std::vector<ValidationIssue> issues;

  std::size_t error_count() const {
    std::size_t n = 0;
    for (const auto& issue : issues) n += issue.severity == Severity::kError;
    return n;
  }
};

inline bool is_finite(const Vec3& v) { return v.allFinite(); }

/// Camera center in world coordinates, -R^T t.
inline Vec3 camera_center(const CameraPose& pose) {
  if (!pose.R.allFinite() || !pose.t.allFinite()) {
    throw Error(ErrorKind::kInvalidPose, "camera pose has non-finite entries");
  }
  return -pose.R.transpose() * pose.t;
}

inline const PointSet& object_points(const ObjectTrack& track, std::size_t frame) {
  if (frame >= track.points_per_frame.size()) {
    throw Error(ErrorKind::kFrameOutOfRange,
                "frame " + std::to_string(frame) + " out of range for object '" + track.object_id + "'");
  }
  if (!track.present_at(frame)) {
    throw Error(ErrorKind::kMissingObject,
                "object '" + track.object_id + "' missing at frame " + std::to_string(frame));
  }
  return *track.points_per_frame[frame];
}

/// Arithmetic mean of the object's points at a frame.
inline Vec3 object_centroid(const ObjectTrack& track, std::size_t frame) {
  const PointSet& points = object_points(track, frame);
  Vec3 sum = Vec3::Zero();
  for (const auto& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

/// Max-abs-entry deviation of R^T R from identity.
inline double orthonormality_error(const RotationMatrix& R) {
  return (R.transpose() * R - RotationMatrix::Identity()).cwiseAbs().maxCoeff();
}

inline SceneValidationReport validate_scene(const SceneMetadata& scene) {
  SceneValidationReport report;
  auto add = [&report](Severity sev, std::string locus, std::string message) {
    report.issues.push_back({sev, std::move(locus), std::move(message)});
  };

  const std::size_t k = scene.frame_count;
  if (k == 0) {
    add(Severity::kError, "frame_count", "frame count must be positive");
  } else if (k == 1) {
    add(Severity::kWarning, "frame_count", "single-frame scene yields no frame pairs");
  }
  if (scene.cameras.size() != k) {
    add(Severity::kError, "cameras",
        "camera count " + std::to_string(scene.cameras.size()) + " != frame count " + std::to_string(k));
  }

  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    const auto& cam = scene.cameras[i];
    const std::string locus = "cameras[" + std::to_string(i) + "]";
    if (!cam.R.allFinite() || !cam.t.allFinite()) {
      add(Severity::kError, locus, "non-finite pose entry");
      continue;
    }
    if (orthonormality_error(cam.R) > kRotationTolerance) {
      add(Severity::kError, locus, "rotation not orthonormal");
    }
    if (std::abs(cam.R.determinant() - 1.0) > kRotationTolerance) {
      add(Severity::kError, locus, "rotation determinant not 1");
    }
  }

  for (std::size_t m = 0; m < scene.objects.size(); ++m) {
    const auto& obj = scene.objects[m];
    const std::string base = "objects[" + (obj.object_id.empty() ? std::to_string(m) : obj.object_id) + "]";
    if (obj.object_id.empty()) add(Severity::kError, base, "empty object id");
    for (std::size_t n = 0; n < m; ++n) {
      if (scene.objects[n].object_id == obj.object_id) {
        add(Severity::kError, base, "duplicate object id");
        break;
      }
    }
    if (obj.points_per_frame.size() != k) {
      add(Severity::kError, base, "track length mismatch");
    }
    for (std::size_t f = 0; f < obj.points_per_frame.size(); ++f) {
      const auto& pts = obj.points_per_frame[f];
      if (!pts) continue;
      const std::string locus = base + ".points[" + std::to_string(f) + "]";
      if (pts->empty()) {
        add(Severity::kError, locus, "empty point set");
        continue;
      }
      for (const auto& p : *pts) {
        if (!is_finite(p)) {
          add(Severity::kError, locus, "non-finite point");
          break;
        }
      }
    }
  }

  report.valid = report.error_count() == 0;
  return report;
}

inline const ObjectTrack* find_object(const SceneMetadata& scene, std::string_view object_id) {
  for (const auto& obj : scene.objects) {
    if (obj.object_id == object_id) return &obj;
  }
  return nullptr;
}

}  // namespace stqa

#endif  // STQA_SCENE_MODEL_HPP_
