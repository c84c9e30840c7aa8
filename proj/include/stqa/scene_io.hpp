#ifndef STQA_SCENE_IO_HPP_
#define STQA_SCENE_IO_HPP_

#include <filesystem>
#include <string>

#include "stqa/json_io.hpp"
#include "stqa/scene_model.hpp"

namespace stqa {

// Scene file layout:
//   {"video_id": str, "frame_count": int,
//    "cameras": [{"R": [9 floats, row-major], "t": [3 floats]}, ...],
//    "objects": [{"object_id": str, "description": str,
//                 "points": [null | [[x,y,z], ...], ...]}, ...]}

inline nlohmann::json scene_to_json(const SceneMetadata& scene) {
  using nlohmann::json;
  json cams = json::array();
  for (const auto& cam : scene.cameras) {
    json r = json::array();
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) r.push_back(cam.R(row, col));
    }
    cams.push_back({{"R", r}, {"t", json_io::to_json(cam.t)}});
  }
  json objs = json::array();
  for (const auto& obj : scene.objects) {
    json frames = json::array();
    for (const auto& pts : obj.points_per_frame) {
      if (!pts) {
        frames.push_back(nullptr);
        continue;
      }
      json arr = json::array();
      for (const auto& p : *pts) arr.push_back(json_io::to_json(p));
      frames.push_back(std::move(arr));
    }
    objs.push_back({{"object_id", obj.object_id}, {"description", obj.description}, {"points", std::move(frames)}});
  }
  return {{"video_id", scene.video_id},
          {"frame_count", scene.frame_count},
          {"cameras", std::move(cams)},
          {"objects", std::move(objs)}};
}

/// Schema-checks and converts; errors name the offending JSON path ("$.cameras[2].R").
/// Only structure is checked here; geometric validity is validate_scene's job.
inline SceneMetadata scene_from_json(const nlohmann::json& doc) {
  using namespace json_io;
  const std::string root = "$";
  SceneMetadata scene;
  scene.video_id = string(field(doc, "video_id", root), "$.video_id");
  const auto k = integer(field(doc, "frame_count", root), "$.frame_count");
  if (k < 0) fail("$.frame_count", "must be non-negative");
  scene.frame_count = static_cast<std::size_t>(k);

  const auto& cams = field(doc, "cameras", root);
  if (!cams.is_array()) fail("$.cameras", "expected array");
  for (std::size_t i = 0; i < cams.size(); ++i) {
    const std::string path = "$.cameras[" + std::to_string(i) + "]";
    const auto& r = field(cams[i], "R", path);
    if (!r.is_array() || r.size() != 9) fail(path + ".R", "expected array of 9 numbers");
    CameraPose pose;
    for (int e = 0; e < 9; ++e) {
      pose.R(e / 3, e % 3) = number(r[e], path + ".R[" + std::to_string(e) + "]");
    }
    pose.t = vec3(field(cams[i], "t", path), path + ".t");
    scene.cameras.push_back(pose);
  }

  const auto& objs = field(doc, "objects", root);
  if (!objs.is_array()) fail("$.objects", "expected array");
  for (std::size_t m = 0; m < objs.size(); ++m) {
    const std::string path = "$.objects[" + std::to_string(m) + "]";
    ObjectTrack track;
    track.object_id = string(field(objs[m], "object_id", path), path + ".object_id");
    track.description = string(field(objs[m], "description", path), path + ".description");
    const auto& frames = field(objs[m], "points", path);
    if (!frames.is_array()) fail(path + ".points", "expected array");
    for (std::size_t f = 0; f < frames.size(); ++f) {
      const std::string fpath = path + ".points[" + std::to_string(f) + "]";
      if (frames[f].is_null()) {
        track.points_per_frame.emplace_back(std::nullopt);
        continue;
      }
      if (!frames[f].is_array()) fail(fpath, "expected null or array of points");
      PointSet pts;
      pts.reserve(frames[f].size());
      for (std::size_t p = 0; p < frames[f].size(); ++p) {
        pts.push_back(vec3(frames[f][p], fpath + "[" + std::to_string(p) + "]"));
      }
      track.points_per_frame.emplace_back(std::move(pts));
    }
    scene.objects.push_back(std::move(track));
  }
  return scene;
}

inline SceneMetadata load_scene(const std::filesystem::path& path) {
  const auto text = json_io::read_file(path);
  return scene_from_json(json_io::parse_document(text, path.string()));
}

inline void save_scene(const SceneMetadata& scene, const std::filesystem::path& path) {
  json_io::write_file(path, scene_to_json(scene).dump() + "\n");
}

}  // namespace stqa

#endif  // STQA_SCENE_IO_HPP_
