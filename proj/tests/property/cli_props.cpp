#include <gtest/gtest.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "trials.hpp"
#include "tsteval/commands.hpp"
#include "tsteval/config.hpp"
#include "tsteval/error.hpp"

namespace tsteval {
namespace {

namespace fs = std::filesystem;
using testing::for_trials;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const fs::path kSynthetic = fs::path(TSTEVAL_SOURCE_DIR) / "data" / "synthetic";

// Source files split into (instance id, chunk) pieces, read once. Header
// records have an empty id and are always kept.
using Pieces = std::vector<std::pair<std::string, std::string>>;

const std::map<std::string, Pieces>& source_pieces() {
  static const std::map<std::string, Pieces> pieces = [] {
    std::map<std::string, Pieces> m;
    for (const char* name : {"dataset.jsonl", "style_dists.jsonl", "tokens.jsonl", "external_scores.jsonl"}) {
      std::istringstream in(slurp(kSynthetic / name));
      std::string line;
      while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        m[name].emplace_back(j.value("instance_id", ""), line + "\n");
      }
    }
    for (const char* name : {"parses.conllu", "amr.penman"}) {
      const std::string text = slurp(kSynthetic / name);
      std::size_t pos = 0;
      while (pos < text.size()) {
        auto end = text.find("\n\n", pos);
        end = end == std::string::npos ? text.size() : end + 2;
        const std::string block = text.substr(pos, end - pos);
        const auto a = block.find("# instance_id = ") + 16;
        m[name].emplace_back(block.substr(a, block.find('\n', a) - a), block);
        pos = end;
      }
    }
    m["lexicon.txt"].emplace_back("", slurp(kSynthetic / "lexicon.txt"));
    return m;
  }();
  return pieces;
}

// Copies the synthetic set into `dir`, keeping only the given instances.
void write_subset(const fs::path& dir, const std::set<std::string>& keep) {
  fs::create_directories(dir);
  for (const auto& [name, pieces] : source_pieces()) {
    std::string out;
    for (const auto& [id, chunk] : pieces)
      if (id.empty() || keep.count(id)) out += chunk;
    spit(dir / name, out);
  }
}

std::vector<std::string> all_ids() {
  std::vector<std::string> ids;
  std::istringstream in(slurp(kSynthetic / "dataset.jsonl"));
  std::string line;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("instance_id")) ids.push_back(j["instance_id"]);
  }
  return ids;
}

using Command = int (*)(const RunConfig&);
const std::pair<const char*, Command> kCommands[] = {
    {"score", cmd_score},           {"correlate", cmd_correlate}, {"fit-ensemble", cmd_fit_ensemble},
    {"overall", cmd_overall},       {"render-prompts", cmd_render_prompts}, {"report", cmd_report},
};

struct PipelineRun {
  std::vector<int> codes;
  std::map<std::string, std::string> files;  // relative path -> bytes
  std::string hash;
};

PipelineRun run_all(const fs::path& dir, const nlohmann::json& cfg) {
  spit(dir / "config.json", cfg.dump(2));
  const auto config = RunConfig::load(dir / "config.json");
  PipelineRun r;
  r.hash = config.hash();
  std::ostringstream sink;
  auto* old = std::cout.rdbuf(sink.rdbuf());
  for (const auto& [name, fn] : kCommands) {
    int code;
    try {
      code = fn(config);
    } catch (const ConfigError&) {
      code = kExitConfig;
    } catch (const std::exception&) {
      code = kExitData;
    }
    r.codes.push_back(code);
  }
  std::cout.rdbuf(old);
  for (const auto& e : fs::recursive_directory_iterator(dir / "out"))
    if (e.is_regular_file()) r.files[fs::relative(e.path(), dir / "out").generic_string()] = slurp(e.path());
  return r;
}

nlohmann::json random_config(Rng& rng) {
  auto cfg = nlohmann::json::parse(slurp(kSynthetic / "config.json"));
  std::vector<std::string> metrics = cfg["metrics"];
  shuffle_range(metrics.begin(), metrics.end(), rng);
  metrics.resize(4 + uniform_index(rng, metrics.size() - 3));
  cfg["metrics"] = metrics;
  cfg["seed"] = rng() % 1000;
  cfg["mode"] = uniform_index(rng, 2) ? "reference-free" : "reference-based";
  cfg["workers"] = 1 + uniform_index(rng, 3);
  return cfg;
}

class CliProps : public ::testing::Test {
 protected:
  void SetUp() override {
    spdlog::set_level(spdlog::level::off);
    root_ = fs::temp_directory_path() / ("tsteval_cli_props_" + std::to_string(::getpid()));
    fs::remove_all(root_);
  }
  void TearDown() override {
    fs::remove_all(root_);
    spdlog::set_level(spdlog::level::info);
  }
  fs::path root_;
};

// Both properties share one pass over the trials: every trial runs the
// whole pipeline twice in fresh directories.
TEST_F(CliProps, RerunsAreByteIdenticalAndNameTheConfigHash) {
  const auto ids = all_ids();
  for_trials(701, [&](Rng& rng, int t) {
    auto pick = ids;
    if (t % 10 != 0) {
      shuffle_range(pick.begin(), pick.end(), rng);
      pick.resize(8 + uniform_index(rng, 9));
    }
    const std::set<std::string> keep(pick.begin(), pick.end());
    const auto cfg = random_config(rng);
    const fs::path a = root_ / "a";
    const fs::path b = root_ / "b";
    fs::remove_all(root_);
    write_subset(a, keep);
    write_subset(b, keep);
    const PipelineRun ra = run_all(a, cfg);
    const PipelineRun rb = run_all(b, cfg);
    EXPECT_EQ(ra.codes, rb.codes);
    ASSERT_EQ(ra.files.size(), rb.files.size());
    for (const auto& [name, bytes] : ra.files) {
      auto it = rb.files.find(name);
      ASSERT_NE(it, rb.files.end()) << name;
      EXPECT_TRUE(it->second == bytes) << name << " differs";
      // Rendered prompts are bare template text; their hash lives in index.tsv.
      const bool prompt_body = name.rfind("prompts/", 0) == 0 && name != "prompts/index.tsv";
      if (!prompt_body) EXPECT_NE(bytes.find(ra.hash), std::string::npos) << name << " lacks the config hash";
    }
    EXPECT_TRUE(ra.files.count("manifest_score.json"));
  });
}

}  // namespace
}  // namespace tsteval
