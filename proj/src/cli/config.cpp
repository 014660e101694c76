#include "tsteval/config.hpp"

#include <fstream>
#include <set>

#include "tsteval/error.hpp"
#include "tsteval/hashing.hpp"

namespace tsteval {

namespace {

// Keys a config may carry at top level.
const std::set<std::string> kKnownKeys = {
    "dataset", "style_dists", "tokens", "external_scores", "parses", "amr", "lexicon", "metrics", "mode",
    "dimension", "seed", "workers", "output_dir", "scores", "smatch", "ted", "wmd", "kl_direction", "registry",
    "ensemble", "overall", "correlate", "judge", "bleu", "pinc", "meteor"};

}  // namespace

void RunConfig::throw_type(const char* section, const char* key) {
  throw ConfigError(std::string("config key ") + section + "." + key + " has the wrong type");
}

RunConfig RunConfig::load(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return from_json(std::move(j), base, overrides);
}

RunConfig RunConfig::from_json(nlohmann::json j, std::filesystem::path base_dir, const ConfigOverrides& o) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kKnownKeys.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
  if (o.mode) j["mode"] = *o.mode;
  if (o.dimension) j["dimension"] = *o.dimension;
  if (o.seed) j["seed"] = *o.seed;
  if (o.workers) j["workers"] = *o.workers;
  RunConfig c;
  c.j_ = std::move(j);
  c.base_ = std::move(base_dir);
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  c.hash_ = sha256_hex(c.j_.dump());
  // Validate eagerly so bad values fail before any work.
  c.mode();
  c.dimension();
  c.seed();
  c.workers();
  return c;
}

std::filesystem::path RunConfig::resolve(const std::string& p) const {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base_ / path;
}

std::optional<std::filesystem::path> RunConfig::path(const char* key) const {
  auto it = j_.find(key);
  if (it == j_.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ConfigError(std::string("config key '") + key + "' must be a path string");
  return resolve(it->get<std::string>());
}

std::filesystem::path RunConfig::required_path(const char* key) const {
  auto p = path(key);
  if (!p) throw ConfigError(std::string("config lacks '") + key + "'");
  return *p;
}

std::filesystem::path RunConfig::output_dir() const {
  auto p = path("output_dir");
  return p ? *p : base_ / "out";
}

Mode RunConfig::mode() const {
  auto it = j_.find("mode");
  if (it == j_.end()) return Mode::reference_free;
  if (!it->is_string()) throw ConfigError("config key 'mode' must be a string");
  return parse_mode(it->get<std::string>());
}

std::optional<Dimension> RunConfig::dimension() const {
  auto it = j_.find("dimension");
  if (it == j_.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ConfigError("config key 'dimension' must be a string");
  return parse_dimension(it->get<std::string>());
}

std::uint64_t RunConfig::seed() const {
  auto it = j_.find("seed");
  if (it == j_.end()) return 0;
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
    throw ConfigError("config key 'seed' must be a non-negative integer");
  return it->get<std::uint64_t>();
}

int RunConfig::workers() const {
  auto it = j_.find("workers");
  if (it == j_.end()) return 1;
  if (!it->is_number_integer() || it->get<int>() < 1) throw ConfigError("config key 'workers' must be >= 1");
  return it->get<int>();
}

std::vector<std::string> RunConfig::metrics() const {
  auto it = j_.find("metrics");
  if (it == j_.end()) return {};
  if (!it->is_array()) throw ConfigError("config key 'metrics' must be a list");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw ConfigError("metric ids must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<std::filesystem::path> RunConfig::score_inputs() const {
  auto it = j_.find("scores");
  if (it == j_.end() || it->is_null()) return {output_dir() / "scores.tsv"};
  std::vector<std::filesystem::path> out;
  if (it->is_string()) return {resolve(it->get<std::string>())};
  if (!it->is_array()) throw ConfigError("config key 'scores' must be a path or list of paths");
  for (const auto& v : *it) {
    if (!v.is_string()) throw ConfigError("score paths must be strings");
    out.push_back(resolve(v.get<std::string>()));
  }
  return out;
}

Registry RunConfig::registry() const {
  auto base = Registry::builtin();
  auto it = j_.find("registry");
  if (it == j_.end()) return base;
  if (!it->is_array()) throw ConfigError("config key 'registry' must be a list");
  std::vector<MetricDescriptor> overrides;
  for (const auto& e : *it) {
    if (!e.is_object() || !e.contains("metric_id") || !e.contains("dimension") || !e.contains("orientation"))
      throw ConfigError("registry entries need metric_id, dimension and orientation");
    MetricDescriptor d;
    d.metric_id = e["metric_id"].get<std::string>();
    d.dimension = parse_dimension(e["dimension"].get<std::string>());
    d.orientation = parse_orientation(e["orientation"].get<std::string>());
    d.ingested = e.value("ingested", true);
    const std::string norm = e.value("normalization", "minmax_per_dataset");
    if (norm == "minmax_per_dataset") {
      d.normalization = Normalization::minmax();
    } else if (norm == "fixed_bounds") {
      if (!e.contains("lo") || !e.contains("hi")) throw ConfigError("fixed_bounds needs lo and hi");
      d.normalization = Normalization::fixed(e["lo"].get<double>(), e["hi"].get<double>());
    } else if (norm == "none") {
      d.normalization = Normalization::identity();
    } else {
      throw ConfigError("unknown normalization '" + norm + "'");
    }
    overrides.push_back(std::move(d));
  }
  return base.with_overrides(overrides);
}

}  // namespace tsteval
