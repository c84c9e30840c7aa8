#ifndef STQA_CONFIG_HPP_
#define STQA_CONFIG_HPP_

#include <charconv>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>

#include "stqa/grpo_math.hpp"
#include "stqa/json_io.hpp"
#include "stqa/qa_generator.hpp"
#include "stqa/reward_engine.hpp"

// Flat key-value config files. Either one JSON object with scalar values or
// lines of `key = value` (also `key: value`), with `#` comments.

namespace stqa::config {

using KeyValues = std::map<std::string, std::string>;

inline std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline KeyValues parse_key_values(const std::string& text, const std::string& where) {
  KeyValues kv;
  const auto start = trimmed(text);
  if (!start.empty() && start.front() == '{') {
    const auto doc = json_io::parse_document(text, where);
    for (const auto& [key, value] : doc.items()) {
      if (value.is_string()) {
        kv[key] = value.get<std::string>();
      } else if (value.is_primitive() && !value.is_null()) {
        kv[key] = value.dump();
      } else {
        throw Error(ErrorKind::kParse, where + ": $." + key + ": expected scalar value");
      }
    }
    return kv;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) {
      throw Error(ErrorKind::kParse, where + ":" + std::to_string(line_no) + ": expected key = value");
    }
    kv[trimmed(line.substr(0, sep))] = trimmed(line.substr(sep + 1));
  }
  return kv;
}

inline KeyValues load_key_values(const std::filesystem::path& path) {
  return parse_key_values(json_io::read_file(path), path.string());
}

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw Error(ErrorKind::kInvalidConfig, key + ": expected number");
  return out;
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorKind::kInvalidConfig, key + ": expected non-negative integer");
  }
  return out;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error(ErrorKind::kInvalidConfig, key + ": expected true or false");
}

[[noreturn]] inline void unknown(const std::string& key) {
  throw Error(ErrorKind::kInvalidConfig, "unknown config key '" + key + "'");
}

}  // namespace detail

inline void apply(GenerationConfig& cfg, const KeyValues& kv) {
  using namespace detail;
  for (const auto& [key, v] : kv) {
    if (key == "seed") cfg.seed = to_uint(key, v);
    else if (key == "option_count") cfg.option_count = to_uint(key, v);
    else if (key == "distractor_lo") cfg.distractor_lo = to_double(key, v);
    else if (key == "distractor_hi") cfg.distractor_hi = to_double(key, v);
    else if (key == "min_option_separation") cfg.min_option_separation = to_double(key, v);
    else if (key == "per_video_cap") cfg.per_video_cap = to_uint(key, v);
    else if (key == "tau") cfg.tau = to_double(key, v);
    else if (key == "min_motion") cfg.min_motion = to_double(key, v);
    else if (key == "value_rounding") cfg.value_rounding = static_cast<int>(to_uint(key, v));
    else if (key == "frame_stride") cfg.frame_stride = to_uint(key, v);
    else if (key == "keep_static_labels") cfg.keep_static_labels = to_bool(key, v);
    else if (key == "direction_mode") {
      if (v == "center_displacement") cfg.direction_mode = DirectionMode::kCenterDisplacement;
      else if (v == "raw_translation") cfg.direction_mode = DirectionMode::kRawTranslation;
      else throw Error(ErrorKind::kInvalidConfig, "direction_mode: expected center_displacement or raw_translation");
    } else unknown(key);
  }
  cfg.validate();
}

inline void apply(RewardWeights& w, const KeyValues& kv) {
  using namespace detail;
  for (const auto& [key, v] : kv) {
    if (key == "lambda_acc") w.lambda_acc = to_double(key, v);
    else if (key == "lambda_fmt") w.lambda_fmt = to_double(key, v);
    else if (key == "lambda_st") w.lambda_st = to_double(key, v);
    else if (key == "lambda_1") w.lambda_1 = to_double(key, v);
    else if (key == "lambda_2") w.lambda_2 = to_double(key, v);
    else if (key == "lambda_cam") w.lambda_cam = to_double(key, v);
    else if (key == "lambda_obj") w.lambda_obj = to_double(key, v);
    else unknown(key);
  }
  w.validate();
}

inline void apply(GrpoConfig& cfg, const KeyValues& kv) {
  using namespace detail;
  for (const auto& [key, v] : kv) {
    if (key == "group_size") cfg.group_size = to_uint(key, v);
    else if (key == "clip_epsilon") cfg.clip_epsilon = to_double(key, v);
    else if (key == "kl_beta") cfg.kl_beta = to_double(key, v);
    else if (key == "sigma_min") cfg.sigma_min = to_double(key, v);
    else unknown(key);
  }
  cfg.validate();
}

}  // namespace stqa::config

#endif  // STQA_CONFIG_HPP_
