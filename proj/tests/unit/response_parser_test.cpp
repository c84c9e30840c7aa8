#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace stqa {
namespace {

TEST(ParseStructure, WellFormed) {
  const auto p = parse_structure("<thinking>x</thinking><answer>B</answer>");
  EXPECT_TRUE(p.structural_ok);
  EXPECT_EQ(p.answer, "B");
  EXPECT_EQ(p.thinking, "x");
}

TEST(ParseStructure, SurroundingWhitespaceAllowed) {
  EXPECT_TRUE(parse_structure("\n <thinking>a</thinking>\n\n<answer>C</answer>\n").structural_ok);
}

TEST(ParseStructure, MissingAnswerClose) {
  EXPECT_FALSE(parse_structure("<thinking>x</thinking><answer>B").structural_ok);
}

TEST(ParseStructure, TwoThinkingBlocks) {
  EXPECT_FALSE(parse_structure("<thinking>x</thinking><thinking>y</thinking><answer>B</answer>").structural_ok);
}

TEST(ParseStructure, Violations) {
  for (const char* text : {
           "",
           "B",
           "<answer>B</answer><thinking>x</thinking>",
           "<thinking>x<answer>B</answer></thinking>",
           "prefix <thinking>x</thinking><answer>B</answer>",
           "<thinking>x</thinking> between <answer>B</answer>",
           "<thinking>x</thinking><answer>B</answer> trailing",
           "<THINKING>x</THINKING><answer>B</answer>",
           "<thinking>x</thinking><answer>B</answer><answer>C</answer>",
       }) {
    EXPECT_FALSE(parse_structure(text).structural_ok) << text;
  }
}

TEST(ParseStructure, LooseAnswerWithoutThinking) {
  const auto p = parse_structure("<answer>A</answer>");
  EXPECT_FALSE(p.structural_ok);
  ASSERT_TRUE(p.loose_answer.has_value());
  EXPECT_EQ(*p.loose_answer, "A");
}

TEST(ExtractCenters, SingleTriples) {
  const auto c = extract_centers("Camera Center:[0,0,0] then later Camera Center:[1.5, 0, -2]");
  ASSERT_EQ(c.camera.size(), 2u);
  EXPECT_EQ(c.camera[0], Vec3(0, 0, 0));
  EXPECT_EQ(c.camera[1], Vec3(1.5, 0, -2));
  EXPECT_TRUE(c.object.empty());
}

TEST(ExtractCenters, NestedList) {
  const auto c = extract_centers("Object Center: [[0,0,1],[0,0,2]]");
  ASSERT_EQ(c.object.size(), 2u);
  EXPECT_EQ(c.object[0], Vec3(0, 0, 1));
  EXPECT_EQ(c.object[1], Vec3(0, 0, 2));
}

TEST(ExtractCenters, NoLabels) {
  const auto c = extract_centers("the camera moved forward");
  EXPECT_TRUE(c.camera.empty());
  EXPECT_TRUE(c.object.empty());
}

TEST(ExtractCenters, MalformedSkipped) {
  const auto c = extract_centers(
      "Camera Center: [1, 2] Camera Center: [nan, 0, 0] camera center : [+1, 2e1, -3.5] Object Center: [[1,2,3]");
  ASSERT_EQ(c.camera.size(), 1u);
  EXPECT_EQ(c.camera[0], Vec3(1, 20, -3.5));
  EXPECT_TRUE(c.object.empty());
}

TEST(ParseResponse, CentersOnlyFromThinking) {
  const auto p = parse_response(
      "<thinking>Camera Center:[[0,0,0],[0,0,1]]</thinking><answer>Camera Center:[5,5,5]</answer>");
  ASSERT_TRUE(p.structural_ok);
  EXPECT_EQ(p.camera_centers.size(), 2u);
}

TEST(NormalizeAnswer, Letter) {
  const std::vector<std::string> opts{"1.0", "2.0", "3.0", "4.0"};
  const auto r = normalize_answer("B", opts);
  EXPECT_EQ(r.matched_index, 1u);
  EXPECT_EQ(r.method, MatchMethod::kLetter);
  EXPECT_EQ(normalize_answer(" b ", opts).matched_index, 1u);
}

TEST(NormalizeAnswer, Text) {
  const auto r = normalize_answer("closer", {"closer", "farther"});
  EXPECT_EQ(r.matched_index, 0u);
  EXPECT_EQ(r.method, MatchMethod::kText);
  EXPECT_EQ(normalize_answer("FARTHER", {"closer", "farther"}).matched_index, 1u);
}

TEST(NormalizeAnswer, OutOfRangeLetter) {
  const auto r = normalize_answer("E", {"a1", "b1", "c1", "d1"});
  EXPECT_FALSE(r.matched_index.has_value());
  EXPECT_EQ(r.method, MatchMethod::kNone);
}

TEST(NormalizeAnswer, LetterPrefix) {
  EXPECT_EQ(normalize_answer("B. farther", {"closer", "farther"}).matched_index, 1u);
  EXPECT_EQ(normalize_answer("A) closer", {"closer", "farther"}).matched_index, 0u);
  EXPECT_FALSE(normalize_answer("maybe", {"closer", "farther"}).matched_index.has_value());
}

TEST(FormatResponse, RoundTripsCenters) {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    ResponseParts parts;
    parts.prose_before = "Step 1: look.";
    parts.prose_after = "Step 5: decide.";
    for (int n = 0; n < 2 + static_cast<int>(rng.below(3)); ++n) {
      parts.camera_centers.emplace_back(rng.uniform(-1e3, 1e3), rng.uniform(-1, 1), rng.uniform(-1e-6, 1e-6));
      parts.object_centers.emplace_back(rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50));
    }
    parts.answer = "C";
    const auto p = parse_response(format_response(parts));
    ASSERT_TRUE(p.structural_ok);
    EXPECT_EQ(p.camera_centers, parts.camera_centers);
    EXPECT_EQ(p.object_centers, parts.object_centers);
    EXPECT_EQ(p.answer, "C");
  }
}

}  // namespace
}  // namespace stqa
