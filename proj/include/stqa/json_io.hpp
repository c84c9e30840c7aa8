#ifndef STQA_JSON_IO_HPP_
#define STQA_JSON_IO_HPP_

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stqa/error.hpp"
#include "stqa/scene_model.hpp"

namespace stqa::json_io {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::kParse, path + ": " + message);
}

inline const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected number");
  return v.get<double>();
}

inline std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected string");
  return v.get<std::string>();
}

inline std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected integer");
  return v.get<std::int64_t>();
}

inline Vec3 vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected array of 3 numbers");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]"), number(v[2], path + "[2]")};
}

inline json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

inline json parse_document(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, where + ": malformed JSON (" + e.what() + ")");
  }
}

/// Calls `fn(doc, line_number)` for every non-blank line. Parse errors carry
/// the 1-based line number.
inline void for_each_jsonl(const std::filesystem::path& path,
                           const std::function<void(const json&, std::size_t)>& fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kParse, path.string() + ":" + std::to_string(line_no) + ": malformed JSON");
    }
    try {
      fn(doc, line_no);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kParse) throw;
      throw Error(ErrorKind::kParse, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline std::string to_jsonl(const std::vector<json>& docs) {
  std::string out;
  for (const auto& d : docs) {
    out += d.dump();
    out += '\n';
  }
  return out;
}

}  // namespace stqa::json_io

#endif  // STQA_JSON_IO_HPP_
