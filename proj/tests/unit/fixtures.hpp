#ifndef STQA_TESTS_FIXTURES_HPP_
#define STQA_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <random>
#include <string>

#include <Eigen/Geometry>

#include "stqa/stqa.hpp"

namespace stqa::testing {

inline CameraPose pose(const RotationMatrix& R, const Vec3& t) { return CameraPose{R, t}; }

/// K identity cameras at the origin and no objects.
inline SceneMetadata static_scene(std::size_t frames, std::string video_id = "static") {
  SceneMetadata s;
  s.video_id = std::move(video_id);
  s.frame_count = frames;
  s.cameras.assign(frames, CameraPose{});
  return s;
}

/// Adds an object holding the same point set at every frame.
inline void add_static_object(SceneMetadata& s, std::string id, PointSet pts) {
  ObjectTrack obj;
  obj.object_id = id;
  obj.description = "the " + id;
  obj.points_per_frame.assign(s.frame_count, pts);
  s.objects.push_back(std::move(obj));
}

inline RotationMatrix random_rotation(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(gen), n(gen), n(gen), n(gen));
  q.normalize();
  return q.toRotationMatrix();
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("stqa_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace stqa::testing

#endif  // STQA_TESTS_FIXTURES_HPP_
