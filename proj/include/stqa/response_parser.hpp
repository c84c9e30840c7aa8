#ifndef STQA_RESPONSE_PARSER_HPP_
#define STQA_RESPONSE_PARSER_HPP_

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stqa/scene_model.hpp"

namespace stqa {

inline constexpr std::string_view kThinkOpen = "<thinking>";
inline constexpr std::string_view kThinkClose = "</thinking>";
inline constexpr std::string_view kAnswerOpen = "<answer>";
inline constexpr std::string_view kAnswerClose = "</answer>";

struct ParsedResponse {
  bool structural_ok = false;
  std::string thinking;
  std::string answer;
  std::vector<Vec3> camera_centers;
  std::vector<Vec3> object_centers;
  /// Inner text of the single <answer> block when one exists, whether or not
  /// the overall structure is valid. Used for answer matching only.
  std::optional<std::string> loose_answer;
};

struct CenterSeries {
  std::vector<Vec3> camera;
  std::vector<Vec3> object;
};

enum class MatchMethod { kLetter, kText, kNone };

struct AnswerResolution {
  std::optional<std::size_t> matched_index;
  MatchMethod method = MatchMethod::kNone;
};

namespace detail {

inline bool is_blank(std::string_view s) {
  for (unsigned char c : s) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

inline std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(a[k])) != std::tolower(static_cast<unsigned char>(b[k]))) return false;
  }
  return true;
}

/// Cursor over the text of a bracketed coordinate array.
class CoordinateReader {
 public:
  CoordinateReader(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  std::size_t pos() const { return pos_; }

  /// "[x, y, z]" or "[[x, y, z], ...]"; nullopt on any malformation.
  std::optional<std::vector<Vec3>> read_array() {
    if (!consume('[')) return std::nullopt;
    skip_ws();
    std::vector<Vec3> out;
    if (peek() == '[') {
      while (true) {
        auto v = read_triple();
        if (!v) return std::nullopt;
        out.push_back(*v);
        skip_ws();
        if (consume(',')) {
          skip_ws();
          continue;
        }
        if (consume(']')) return out;
        return std::nullopt;
      }
    }
    auto v = read_components();
    if (!v || !consume(']')) return std::nullopt;
    out.push_back(*v);
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::optional<double> read_number() {
    skip_ws();
    if (peek() == '+') ++pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first || !std::isfinite(value)) return std::nullopt;
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::optional<Vec3> read_components() {
    Vec3 v;
    for (int k = 0; k < 3; ++k) {
      if (k > 0 && !consume(',')) return std::nullopt;
      auto x = read_number();
      if (!x) return std::nullopt;
      v[k] = *x;
    }
    return v;
  }

  std::optional<Vec3> read_triple() {
    if (!consume('[')) return std::nullopt;
    auto v = read_components();
    if (!v || !consume(']')) return std::nullopt;
    return v;
  }

  std::string_view text_;
  std::size_t pos_;
};

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// Checks the tag grammar: optional whitespace, exactly one thinking block,
/// optional whitespace, exactly one answer block, optional whitespace.
/// Tags are case-sensitive. Center lists are left empty.
inline ParsedResponse parse_structure(std::string_view text) {
  using detail::count_occurrences;
  ParsedResponse out;

  if (count_occurrences(text, kAnswerOpen) == 1 && count_occurrences(text, kAnswerClose) == 1) {
    const auto a_open = text.find(kAnswerOpen);
    const auto a_close = text.find(kAnswerClose);
    if (a_open < a_close) {
      out.loose_answer = std::string(text.substr(a_open + kAnswerOpen.size(), a_close - a_open - kAnswerOpen.size()));
    }
  }

  if (count_occurrences(text, kThinkOpen) != 1 || count_occurrences(text, kThinkClose) != 1 || !out.loose_answer) {
    return out;
  }
  const auto t_open = text.find(kThinkOpen);
  const auto t_close = text.find(kThinkClose);
  const auto a_open = text.find(kAnswerOpen);
  const auto a_close = text.find(kAnswerClose);
  if (!(t_open < t_close && t_close < a_open && a_open < a_close)) return out;

  const auto t_inner = t_open + kThinkOpen.size();
  const auto t_end = t_close + kThinkClose.size();
  const auto a_end = a_close + kAnswerClose.size();
  if (!detail::is_blank(text.substr(0, t_open)) || !detail::is_blank(text.substr(t_end, a_open - t_end)) ||
      !detail::is_blank(text.substr(a_end))) {
    return out;
  }
  out.structural_ok = true;
  out.thinking = std::string(text.substr(t_inner, t_close - t_inner));
  out.answer = *out.loose_answer;
  return out;
}

/// Collects "Camera Center:" / "Object Center:" coordinate arrays in document
/// order. Labels are case-insensitive; malformed arrays are skipped.
inline CenterSeries extract_centers(std::string_view text) {
  static constexpr std::string_view kCamera = "camera center";
  static constexpr std::string_view kObject = "object center";
  CenterSeries out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::vector<Vec3>* target = nullptr;
    std::size_t label_len = 0;
    if (pos + kCamera.size() <= text.size() && detail::iequals(text.substr(pos, kCamera.size()), kCamera)) {
      target = &out.camera;
      label_len = kCamera.size();
    } else if (pos + kObject.size() <= text.size() && detail::iequals(text.substr(pos, kObject.size()), kObject)) {
      target = &out.object;
      label_len = kObject.size();
    }
    if (!target) {
      ++pos;
      continue;
    }
    std::size_t cur = pos + label_len;
    while (cur < text.size() && std::isspace(static_cast<unsigned char>(text[cur]))) ++cur;
    if (cur >= text.size() || text[cur] != ':') {
      pos += label_len;
      continue;
    }
    ++cur;
    while (cur < text.size() && std::isspace(static_cast<unsigned char>(text[cur]))) ++cur;
    detail::CoordinateReader reader(text, cur);
    if (auto arr = reader.read_array()) {
      target->insert(target->end(), arr->begin(), arr->end());
      pos = reader.pos();
    } else {
      pos += label_len;
    }
  }
  return out;
}

/// Structure check, then center extraction from the thinking block.
inline ParsedResponse parse_response(std::string_view text) {
  ParsedResponse out = parse_structure(text);
  if (out.structural_ok) {
    auto centers = extract_centers(out.thinking);
    out.camera_centers = std::move(centers.camera);
    out.object_centers = std::move(centers.object);
  }
  return out;
}

/// Maps an answer string onto an option: a bare letter, the option text, or
/// a lettered prefix such as "B. farther". Case-insensitive, trimmed.
inline AnswerResolution normalize_answer(std::string_view answer_text, const std::vector<std::string>& options) {
  AnswerResolution none;
  if (options.empty()) return none;
  const auto s = detail::trim(answer_text);
  if (s.empty()) return none;

  auto letter_index = [&](char c) -> std::optional<std::size_t> {
    const int k = std::toupper(static_cast<unsigned char>(c)) - 'A';
    if (k < 0 || static_cast<std::size_t>(k) >= options.size() || k >= 26) return std::nullopt;
    return static_cast<std::size_t>(k);
  };

  if (s.size() == 1 && std::isalpha(static_cast<unsigned char>(s[0]))) {
    if (auto k = letter_index(s[0])) return {k, MatchMethod::kLetter};
    return none;
  }
  for (std::size_t k = 0; k < options.size(); ++k) {
    if (detail::iequals(s, detail::trim(options[k]))) return {k, MatchMethod::kText};
  }
  if (s.size() >= 2 && std::isalpha(static_cast<unsigned char>(s[0])) && (s[1] == '.' || s[1] == ')' || s[1] == ':')) {
    if (auto k = letter_index(s[0])) return {k, MatchMethod::kLetter};
  }
  return none;
}

/// Inputs of the canonical response serializer.
struct ResponseParts {
  std::string prose_before;
  std::vector<Vec3> object_centers;
  std::vector<Vec3> camera_centers;
  std::string prose_after;
  std::string answer;

  static std::string format_centers(const std::vector<Vec3>& centers) {
    std::string out = "[";
    for (std::size_t k = 0; k < centers.size(); ++k) {
      if (k > 0) out += ", ";
      out += "[" + detail::format_number(centers[k].x()) + ", " + detail::format_number(centers[k].y()) + ", " +
             detail::format_number(centers[k].z()) + "]";
    }
    return out + "]";
  }

  std::string thinking_text() const {
    std::string out = prose_before;
    if (!object_centers.empty()) out += "\nObject Center:" + format_centers(object_centers);
    if (!camera_centers.empty()) out += "\nCamera Center:" + format_centers(camera_centers);
    out += "\n" + prose_after;
    return out;
  }
};

inline std::string format_response(const ResponseParts& parts) {
  return std::string(kThinkOpen) + parts.thinking_text() + std::string(kThinkClose) + "\n" + std::string(kAnswerOpen) +
         parts.answer + std::string(kAnswerClose);
}

}  // namespace stqa

#endif  // STQA_RESPONSE_PARSER_HPP_
