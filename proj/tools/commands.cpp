#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "stqa/stqa.hpp"

namespace stqa::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kValidation:
    case ErrorKind::kInvalidConfig:
    case ErrorKind::kInvalidArgument: return kValidationFailure;
    case ErrorKind::kInsufficientPairs: return kInsufficientData;
    default: return kRuntimeFailure;
  }
}

Vec3 parse_vec3(const std::string& text, const std::string& flag) {
  Vec3 v;
  std::stringstream ss(text);
  std::string part;
  int k = 0;
  while (std::getline(ss, part, ',')) {
    if (k >= 3) break;
    try {
      std::size_t used = 0;
      v[k] = std::stod(part, &used);
      if (config::trimmed(part.substr(used)).size() != 0) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, flag + ": expected x,y,z");
    }
    ++k;
  }
  if (k != 3 || std::getline(ss, part, ',')) throw Error(ErrorKind::kInvalidArgument, flag + ": expected x,y,z");
  return v;
}

std::vector<QAPair> load_qa(const fs::path& path) {
  std::vector<QAPair> out;
  json_io::for_each_jsonl(path, [&](const json& doc, std::size_t) { out.push_back(qa_from_json(doc)); });
  return out;
}

fs::path truths_path_for(const fs::path& scene_path) {
  fs::path p = scene_path;
  p.replace_extension();
  return fs::path(p.string() + ".truths.json");
}

std::vector<fs::path> scene_files(const fs::path& input) {
  if (!fs::exists(input)) throw Error(ErrorKind::kIo, "no such file or directory: " + input.string());
  if (!fs::is_directory(input)) return {input};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(input)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (name.size() >= 12 && name.compare(name.size() - 12, 12, ".truths.json") == 0) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::optional<double> optional_number(const json& doc, const char* key, std::size_t line) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": $." + key + ": expected number");
  }
  return it->get<double>();
}

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string config_path;
  std::string weights_path;
  std::optional<std::size_t> max_per_video;
  std::optional<double> tau;
  std::optional<double> min_motion;

  // positional
  std::string input;
  std::string input2;
  std::string kind;

  // synth
  std::size_t frames = 32;
  double speed = 0.5;
  std::string offset = "1.5,0.5,20";
  std::string axis = "0,0,1";
  std::string velocity = "0.2,0,0";
  std::string start = "0,0,5";
  double radius = 2.0;
  double step = 0.1;
  double half_height = 0.5;
  std::string video_id;

  std::size_t per_subtask = 1000;
  std::size_t group_size = 12;
  std::string mode = "path";
  std::string stats_path;
};

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto scene = load_scene(o.input);
  const auto report = validate_scene(scene);
  for (const auto& issue : report.issues) {
    err << (issue.severity == Severity::kError ? "error: " : "warning: ") << issue.locus << ": " << issue.message
        << "\n";
  }
  out << "validate: " << o.input << " " << (report.valid ? "valid" : "invalid") << " (" << report.error_count()
      << " errors, " << report.issues.size() - report.error_count() << " warnings)\n";
  return report.valid ? kSuccess : kValidationFailure;
}

int cmd_synth(const Options& o, std::ostream& out) {
  oracle::Thresholds th;
  if (o.tau) th.tau = *o.tau;
  if (o.min_motion) th.min_motion = *o.min_motion;
  oracle::OracleScene scene;
  if (o.kind == "dolly") {
    oracle::DollyParams p;
    p.frames = o.frames;
    p.speed = o.speed;
    p.object_offset = parse_vec3(o.offset, "--offset");
    p.axis = parse_vec3(o.axis, "--axis");
    if (!o.video_id.empty()) p.video_id = o.video_id;
    p.thresholds = th;
    scene = oracle::make_dolly_scene(p);
  } else if (o.kind == "linear") {
    oracle::LinearObjectParams p;
    p.frames = o.frames;
    p.velocity = parse_vec3(o.velocity, "--velocity");
    p.start = parse_vec3(o.start, "--start");
    if (!o.video_id.empty()) p.video_id = o.video_id;
    p.thresholds = th;
    scene = oracle::make_linear_object_scene(p);
  } else if (o.kind == "orbit") {
    oracle::OrbitParams p;
    p.frames = o.frames;
    p.radius = o.radius;
    p.angular_step = o.step;
    p.half_height = o.half_height;
    if (!o.video_id.empty()) p.video_id = o.video_id;
    p.thresholds = th;
    scene = oracle::make_orbit_scene(p);
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown scene kind '" + o.kind + "' (dolly, linear, orbit)");
  }
  save_scene(scene.scene, o.out);
  const auto truths = truths_path_for(o.out);
  json_io::write_file(truths, oracle::truths_to_json(scene).dump() + "\n");
  out << "synth: " << o.kind << " scene '" << scene.scene.video_id << "' with " << scene.scene.frame_count
      << " frames -> " << o.out << " (truths: " << truths.string() << ")\n";
  return kSuccess;
}

int cmd_generate(const Options& o, std::ostream& out) {
  GenerationConfig cfg;
  if (!o.config_path.empty()) config::apply(cfg, config::load_key_values(o.config_path));
  cfg.seed = o.seed;
  if (o.max_per_video) cfg.per_video_cap = *o.max_per_video;
  if (o.tau) cfg.tau = *o.tau;
  if (o.min_motion) cfg.min_motion = *o.min_motion;
  cfg.validate();

  const auto files = scene_files(o.input);
  std::vector<QAPair> pairs;
  for (const auto& f : files) {
    auto qa = generate_for_scene(load_scene(f), cfg);
    pairs.insert(pairs.end(), std::make_move_iterator(qa.begin()), std::make_move_iterator(qa.end()));
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const QAPair& a, const QAPair& b) {
    return std::tie(a.video_id, a.id) < std::tie(b.video_id, b.id);
  });
  std::vector<json> docs;
  docs.reserve(pairs.size());
  for (const auto& qa : pairs) docs.push_back(qa_to_json(qa));
  json_io::write_file(o.out, json_io::to_jsonl(docs));
  out << "generate: " << pairs.size() << " QA pairs from " << files.size() << " scenes -> " << o.out << "\n";
  return kSuccess;
}

int cmd_benchmark(const Options& o, std::ostream& out) {
  const auto pairs = load_qa(o.input);
  const auto manifest = balance_benchmark(pairs, o.per_subtask, o.max_per_video.value_or(20), o.seed);
  json_io::write_file(o.out, manifest_to_json(manifest).dump(2) + "\n");
  out << "benchmark: " << manifest.size() << " questions (" << o.per_subtask << " per subtask) -> " << o.out << "\n";
  return kSuccess;
}

int cmd_rollouts(const Options& o, std::ostream& out) {
  const auto pairs = load_qa(o.input);
  std::vector<json> docs;
  for (const auto& qa : pairs) {
    for (const auto& r : oracle::simulate_rollouts(qa, o.group_size, o.seed)) {
      docs.push_back({{"question_id", r.question_id},
                      {"group_id", r.group_id},
                      {"response", r.response},
                      {"logp_new", r.logp.logp_new},
                      {"logp_old", r.logp.logp_old},
                      {"logp_ref", r.logp.logp_ref}});
    }
  }
  json_io::write_file(o.out, json_io::to_jsonl(docs));
  out << "rollouts: " << docs.size() << " simulated rollouts for " << pairs.size() << " questions -> " << o.out << "\n";
  return kSuccess;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream& err) {
  RewardWeights weights;
  if (!o.weights_path.empty()) config::apply(weights, config::load_key_values(o.weights_path));
  if (!weights.top_level_sums_to_one()) err << "warning: lambda_acc + lambda_fmt + lambda_st != 1\n";

  std::map<std::string, QAPair> by_id;
  for (auto& qa : load_qa(o.input)) {
    auto id = qa.id;
    by_id.emplace(std::move(id), std::move(qa));
  }
  std::vector<json> docs;
  json_io::for_each_jsonl(o.input2, [&](const json& doc, std::size_t) {
    const auto qid = json_io::string(json_io::field(doc, "question_id", "$"), "$.question_id");
    json_io::string(json_io::field(doc, "group_id", "$"), "$.group_id");
    const auto text = json_io::string(json_io::field(doc, "response", "$"), "$.response");
    const auto it = by_id.find(qid);
    if (it == by_id.end()) json_io::fail("$.question_id", "unknown question '" + qid + "'");
    const auto b = score_rollout(it->second, text, weights);
    json row = doc;
    row["task"] = std::string(to_string(it->second.task));
    row["r_acc"] = b.r_acc;
    row["r_stru_fmt"] = b.r_stru_fmt;
    row["r_st_fmt"] = b.r_st_fmt;
    row["r_fmt"] = b.r_fmt;
    row["r_cam"] = b.r_cam;
    row["r_obj"] = b.r_obj;
    row["r_st"] = b.r_st;
    row["total"] = b.total;
    docs.push_back(std::move(row));
  });
  json_io::write_file(o.out, json_io::to_jsonl(docs));
  out << "score: " << docs.size() << " rollouts scored -> " << o.out << "\n";
  return kSuccess;
}

struct ScoredRow {
  json doc;
  std::size_t line = 0;
};

int cmd_advantages(const Options& o, std::ostream& out, std::ostream& err) {
  GrpoConfig cfg;
  if (!o.config_path.empty()) config::apply(cfg, config::load_key_values(o.config_path));

  std::map<std::pair<std::string, std::string>, std::vector<ScoredRow>> groups;
  json_io::for_each_jsonl(o.input, [&](const json& doc, std::size_t line) {
    const auto qid = json_io::string(json_io::field(doc, "question_id", "$"), "$.question_id");
    const auto gid = json_io::string(json_io::field(doc, "group_id", "$"), "$.group_id");
    json_io::number(json_io::field(doc, "total", "$"), "$.total");
    groups[{qid, gid}].push_back({doc, line});
  });

  std::vector<json> docs;
  std::size_t mismatched = 0;
  for (const auto& [key, rows] : groups) {
    std::vector<double> rewards;
    std::vector<RolloutLogProbs> logps;
    bool have_logps = true;
    for (const auto& row : rows) {
      rewards.push_back(row.doc["total"].get<double>());
      const auto n = optional_number(row.doc, "logp_new", row.line);
      const auto old = optional_number(row.doc, "logp_old", row.line);
      const auto ref = optional_number(row.doc, "logp_ref", row.line);
      if (n && old && ref) {
        logps.push_back({*n, *old, *ref});
      } else {
        have_logps = false;
      }
    }
    if (rows.size() != cfg.group_size) ++mismatched;
    const auto group = group_advantages(rewards, cfg.sigma_min);
    json doc = {{"question_id", key.first},
                {"group_id", key.second},
                {"rewards", group.rewards},
                {"advantages", group.advantages},
                {"degenerate", group.degenerate}};
    if (have_logps) doc["surrogate"] = surrogate_objective(logps, group.advantages, cfg);
    docs.push_back(std::move(doc));
  }
  if (mismatched > 0) err << "warning: " << mismatched << " groups differ from group_size " << cfg.group_size << "\n";
  json_io::write_file(o.out, json_io::to_jsonl(docs));
  out << "advantages: " << docs.size() << " groups -> " << o.out << "\n";
  return kSuccess;
}

int cmd_coldstart(const Options& o, std::ostream& out) {
  const auto mode = filter_mode_from_string(o.mode);
  if (!mode) throw Error(ErrorKind::kInvalidArgument, "--mode must be path or item");

  std::vector<json> docs;
  std::vector<ColdStartCandidate> candidates;
  std::map<std::string, std::size_t> next_path;
  json_io::for_each_jsonl(o.input, [&](const json& doc, std::size_t) {
    ColdStartCandidate c;
    const auto task = task_from_string(json_io::string(json_io::field(doc, "task", "$"), "$.task"));
    if (!task) json_io::fail("$.task", "unknown task kind");
    c.scenario = *task;
    c.sample_id = json_io::string(json_io::field(doc, "question_id", "$"), "$.question_id");
    c.reward = json_io::number(json_io::field(doc, "total", "$"), "$.total");
    if (auto it = doc.find("path_id"); it != doc.end()) {
      c.path_id = static_cast<std::size_t>(json_io::integer(*it, "$.path_id"));
    } else {
      c.path_id = next_path[c.sample_id]++;
    }
    candidates.push_back(std::move(c));
    docs.push_back(doc);
  });

  const auto result = filter_candidates(candidates, *mode);
  std::vector<json> kept;
  for (auto k : result.kept) kept.push_back(docs[k]);
  json_io::write_file(o.out, json_io::to_jsonl(kept));

  json stats = json::array();
  for (const auto& s : result.stats) {
    stats.push_back({{"scenario", std::string(to_string(s.scenario))},
                     {"sample_count", s.sample_count},
                     {"path_count", s.path_count},
                     {"threshold", s.threshold},
                     {"kept_count", s.kept_count},
                     {"kept_samples", s.kept_samples}});
  }
  const std::string stats_path = o.stats_path.empty() ? o.out + ".stats.json" : o.stats_path;
  json_io::write_file(stats_path, json({{"mode", o.mode}, {"scenarios", stats}}).dump(2) + "\n");
  out << "coldstart: kept " << kept.size() << " of " << candidates.size() << " paths across " << result.stats.size()
      << " scenarios -> " << o.out << " (stats: " << stats_path << ")\n";
  return kSuccess;
}

int cmd_prompts(const Options& o, std::ostream& out) {
  const auto stage = prompt_stage_from_string(o.kind);
  if (!stage) throw Error(ErrorKind::kInvalidArgument, "stage must be sft, coldstart or grpo");
  out << system_prompt(*stage) << "\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spatiotemporal QA synthesis and rollout reward tooling"};
  app.require_subcommand(1);

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Root random seed (default 0)"); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output path")->required(); };

  auto* validate = app.add_subcommand("validate", "Check a scene file");
  validate->add_option("scene", o.input)->required();

  auto* synth = app.add_subcommand("synth", "Write a synthetic scene with closed-form truths");
  synth->add_option("kind", o.kind, "dolly | linear | orbit")->required();
  synth->add_option("--frames", o.frames);
  synth->add_option("--speed", o.speed, "dolly: meters per frame");
  synth->add_option("--offset", o.offset, "dolly: object center x,y,z");
  synth->add_option("--axis", o.axis, "dolly: motion direction x,y,z");
  synth->add_option("--velocity", o.velocity, "linear: object velocity x,y,z per frame");
  synth->add_option("--start", o.start, "linear: initial object center x,y,z");
  synth->add_option("--radius", o.radius, "orbit: radius in meters");
  synth->add_option("--step", o.step, "orbit: radians per frame");
  synth->add_option("--half-height", o.half_height, "orbit: pole half height");
  synth->add_option("--video-id", o.video_id);
  synth->add_option("--tau", o.tau);
  synth->add_option("--min-motion", o.min_motion);
  add_out(synth);

  auto* generate = app.add_subcommand("generate", "Generate QA pairs from scene files");
  generate->add_option("scenes", o.input, "Scene file or directory of scene files")->required();
  generate->add_option("--config", o.config_path, "Generation config (key = value)");
  generate->add_option("--max-per-video", o.max_per_video);
  generate->add_option("--tau", o.tau);
  generate->add_option("--min-motion", o.min_motion);
  add_seed(generate);
  add_out(generate);

  auto* benchmark = app.add_subcommand("benchmark", "Build a balanced benchmark manifest");
  benchmark->add_option("qa", o.input)->required();
  benchmark->add_option("--per-subtask", o.per_subtask);
  benchmark->add_option("--max-per-video", o.max_per_video);
  add_seed(benchmark);
  add_out(benchmark);

  auto* rollouts = app.add_subcommand("rollouts", "Simulate rollout groups for QA pairs");
  rollouts->add_option("qa", o.input)->required();
  rollouts->add_option("--group-size", o.group_size);
  add_seed(rollouts);
  add_out(rollouts);

  auto* score = app.add_subcommand("score", "Score rollouts against QA pairs");
  score->add_option("qa", o.input)->required();
  score->add_option("rollouts", o.input2)->required();
  score->add_option("--weights", o.weights_path, "Reward weights (key = value)");
  add_out(score);

  auto* advantages = app.add_subcommand("advantages", "Group-normalized advantages of scored rollouts");
  advantages->add_option("scored", o.input)->required();
  advantages->add_option("--config", o.config_path, "GRPO config (key = value)");
  add_out(advantages);

  auto* coldstart = app.add_subcommand("coldstart", "Scenario-adaptive cold-start filter");
  coldstart->add_option("scored", o.input)->required();
  coldstart->add_option("--mode", o.mode, "path | item");
  coldstart->add_option("--stats", o.stats_path, "Stats summary path (default <out>.stats.json)");
  add_out(coldstart);

  auto* prompts = app.add_subcommand("prompts", "Print the system prompt for a stage");
  prompts->add_option("stage", o.kind, "sft | coldstart | grpo")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }

  try {
    if (*validate) return cmd_validate(o, out, err);
    if (*synth) return cmd_synth(o, out);
    if (*generate) return cmd_generate(o, out);
    if (*benchmark) return cmd_benchmark(o, out);
    if (*rollouts) return cmd_rollouts(o, out);
    if (*score) return cmd_score(o, out, err);
    if (*advantages) return cmd_advantages(o, out, err);
    if (*coldstart) return cmd_coldstart(o, out);
    if (*prompts) return cmd_prompts(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kRuntimeFailure;
}

}  // namespace stqa::cli
