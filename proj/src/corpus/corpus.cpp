#include "tsteval/corpus.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "json.hpp"
#include "tsteval/error.hpp"

namespace tsteval {

using json = nlohmann::json;

namespace {

constexpr double kProbSumTolerance = 1e-6;

[[noreturn]] void fail(std::string_view file, std::size_t line, std::string_view msg) {
  throw DataError(std::string(file) + " line " + std::to_string(line) + ": " + std::string(msg));
}

const json& require(const json& obj, const char* field, std::string_view file, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) fail(file, line, std::string("missing field '") + field + "'");
  return *it;
}

std::string require_string(const json& obj, const char* field, std::string_view file, std::size_t line) {
  const auto& v = require(obj, field, file, line);
  if (!v.is_string()) fail(file, line, std::string("field '") + field + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const char* field, std::string_view file, std::size_t line) {
  if (!v.is_array()) fail(file, line, std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) fail(file, line, std::string("field '") + field + "' must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

template <class F>
void for_each_record(std::istream& in, std::string_view file, F&& f) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(file, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!rec.is_object()) fail(file, line_no, "record must be a JSON object");
    f(rec, line_no);
  }
}

std::map<Dimension, RatingScale> parse_scales(const json& rec, std::size_t line_no) {
  const auto& scales = rec.at("rating_scales");
  if (!scales.is_object()) fail("dataset", line_no, "field 'rating_scales' must be an object");
  std::map<Dimension, RatingScale> out;
  for (auto it = scales.begin(); it != scales.end(); ++it) {
    Dimension d;
    try {
      d = parse_dimension(it.key());
    } catch (const ConfigError&) {
      fail("dataset", line_no, "unknown rating dimension '" + it.key() + "'");
    }
    const auto& s = it.value();
    if (!s.is_object() || !s.contains("min") || !s.contains("max") || !s["min"].is_number() ||
        !s["max"].is_number())
      fail("dataset", line_no, "rating scale for '" + it.key() + "' needs numeric min and max");
    RatingScale scale{s["min"].get<double>(), s["max"].get<double>()};
    if (!(scale.min < scale.max)) fail("dataset", line_no, "rating scale for '" + it.key() + "' has min >= max");
    out[d] = scale;
  }
  return out;
}

EvaluationInstance parse_instance(const json& rec, std::size_t line_no) {
  constexpr std::string_view f = "dataset";
  EvaluationInstance inst;
  inst.instance_id = require_string(rec, "instance_id", f, line_no);
  try {
    inst.language = Language::parse(require_string(rec, "language", f, line_no));
    inst.task = Task::parse(require_string(rec, "task", f, line_no));
  } catch (const DataError& e) {
    fail(f, line_no, e.what());
  }
  inst.direction = require_string(rec, "direction", f, line_no);
  inst.system_id = require_string(rec, "system_id", f, line_no);
  inst.source_text = require_string(rec, "source_text", f, line_no);
  inst.generated_text = require_string(rec, "generated_text", f, line_no);
  if (auto it = rec.find("reference_text"); it != rec.end() && !it->is_null()) {
    if (!it->is_string()) fail(f, line_no, "field 'reference_text' must be a string");
    inst.reference_text = it->get<std::string>();
  }
  const auto& label = require(rec, "target_style_label", f, line_no);
  if (!label.is_number_integer() || label.get<long long>() < 0)
    fail(f, line_no, "field 'target_style_label' must be a non-negative integer");
  inst.target_style_label = label.get<int>();
  if (auto it = rec.find("human"); it != rec.end() && !it->is_null()) {
    if (!it->is_object()) fail(f, line_no, "field 'human' must be an object");
    for (auto h = it->begin(); h != it->end(); ++h) {
      Dimension d;
      try {
        d = parse_dimension(h.key());
      } catch (const ConfigError&) {
        fail(f, line_no, "field 'human." + h.key() + "' is not a rating dimension");
      }
      if (h.value().is_null()) continue;
      if (!h.value().is_number()) fail(f, line_no, "field 'human." + h.key() + "' must be a number");
      inst.human_ratings[d] = h.value().get<double>();
    }
  }
  return inst;
}

json instance_to_json(const EvaluationInstance& inst) {
  json j;
  j["instance_id"] = inst.instance_id;
  j["language"] = inst.language.tag;
  j["task"] = inst.task.tag;
  j["direction"] = inst.direction;
  j["system_id"] = inst.system_id;
  j["source_text"] = inst.source_text;
  j["generated_text"] = inst.generated_text;
  if (inst.reference_text) j["reference_text"] = *inst.reference_text;
  j["target_style_label"] = inst.target_style_label;
  json human = json::object();
  for (const auto& [d, v] : inst.human_ratings) human[std::string(to_string(d))] = v;
  j["human"] = human;
  return j;
}

SentenceRef parse_ref(const json& rec, std::string_view file, std::size_t line_no) {
  SentenceRef ref;
  ref.instance_id = require_string(rec, "instance_id", file, line_no);
  try {
    ref.slot = parse_slot(require_string(rec, "slot", file, line_no));
  } catch (const DataError& e) {
    fail(file, line_no, e.what());
  }
  return ref;
}

}  // namespace

Dataset::Dataset(std::map<Dimension, RatingScale> scales, std::vector<EvaluationInstance> instances)
    : scales_(std::move(scales)), instances_(std::move(instances)) {
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const auto& inst = instances_[i];
    if (!index_.emplace(inst.instance_id, i).second)
      throw DataError("duplicate instance_id '" + inst.instance_id + "'");
    for (const auto& [d, v] : inst.human_ratings) {
      auto it = scales_.find(d);
      if (it == scales_.end())
        throw DataError("instance '" + inst.instance_id + "' rates " + std::string(to_string(d)) +
                        " but the dataset declares no scale for it");
      if (!it->second.contains(v))
        throw DataError("instance '" + inst.instance_id + "' rating " + std::string(to_string(d)) + "=" +
                        std::to_string(v) + " outside declared scale");
    }
  }
}

const EvaluationInstance* Dataset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &instances_[it->second];
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(instances_.size());
  for (const auto& i : instances_) out.push_back(i.instance_id);
  return out;
}

Dataset parse_dataset(std::istream& in) {
  std::optional<std::map<Dimension, RatingScale>> scales;
  std::vector<EvaluationInstance> instances;
  std::set<std::string> seen;
  for_each_record(in, "dataset", [&](const json& rec, std::size_t line_no) {
    if (rec.contains("rating_scales")) {
      if (scales) fail("dataset", line_no, "second header record");
      if (!instances.empty()) fail("dataset", line_no, "header record must precede instances");
      scales = parse_scales(rec, line_no);
      return;
    }
    if (!scales) fail("dataset", line_no, "missing header record with 'rating_scales'");
    auto inst = parse_instance(rec, line_no);
    if (!seen.insert(inst.instance_id).second)
      fail("dataset", line_no, "duplicate instance_id '" + inst.instance_id + "'");
    for (const auto& [d, v] : inst.human_ratings) {
      auto it = scales->find(d);
      if (it == scales->end())
        fail("dataset", line_no, "field 'human." + std::string(to_string(d)) + "' has no declared scale");
      if (!it->second.contains(v))
        fail("dataset", line_no, "field 'human." + std::string(to_string(d)) + "' outside declared scale");
    }
    instances.push_back(std::move(inst));
  });
  if (!scales) throw DataError("dataset: missing header record with 'rating_scales'");
  return Dataset(std::move(*scales), std::move(instances));
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return parse_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  json scales = json::object();
  for (const auto& [d, s] : dataset.rating_scales())
    scales[std::string(to_string(d))] = {{"min", s.min}, {"max", s.max}};
  out << json{{"rating_scales", scales}}.dump() << '\n';
  for (const auto& inst : dataset.instances()) out << instance_to_json(inst).dump() << '\n';
}

std::vector<StyleDistribution> parse_style_dists(std::istream& in) {
  constexpr std::string_view f = "style_dists";
  std::vector<StyleDistribution> out;
  for_each_record(in, f, [&](const json& rec, std::size_t line_no) {
    StyleDistribution d;
    d.ref = parse_ref(rec, f, line_no);
    const auto& labels = require(rec, "class_labels", f, line_no);
    if (!labels.is_array()) fail(f, line_no, "field 'class_labels' must be an array");
    for (const auto& l : labels) {
      if (!l.is_string()) fail(f, line_no, "field 'class_labels' must contain strings");
      d.class_labels.push_back(l.get<std::string>());
    }
    d.probs = number_array(require(rec, "probs", f, line_no), "probs", f, line_no);
    if (d.probs.size() < 2) fail(f, line_no, "field 'probs' needs at least 2 classes");
    if (d.probs.size() != d.class_labels.size()) fail(f, line_no, "field 'probs' length differs from class_labels");
    double sum = 0.0;
    for (double p : d.probs) {
      if (!(p >= 0.0) || !std::isfinite(p)) fail(f, line_no, "field 'probs' must be non-negative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTolerance)
      fail(f, line_no, "field 'probs' sums to " + std::to_string(sum) + ", expected 1");
    out.push_back(std::move(d));
  });
  return out;
}

std::vector<TokenAnnotation> parse_tokens(std::istream& in) {
  constexpr std::string_view f = "tokens";
  std::vector<TokenAnnotation> out;
  for_each_record(in, f, [&](const json& rec, std::size_t line_no) {
    TokenAnnotation a;
    a.ref = parse_ref(rec, f, line_no);
    const auto& toks = require(rec, "tokens", f, line_no);
    if (!toks.is_array()) fail(f, line_no, "field 'tokens' must be an array");
    for (const auto& t : toks) {
      if (!t.is_string()) fail(f, line_no, "field 'tokens' must contain strings");
      a.tokens.push_back(t.get<std::string>());
    }
    if (auto it = rec.find("embeddings"); it != rec.end() && !it->is_null()) {
      if (!it->is_array()) fail(f, line_no, "field 'embeddings' must be an array of arrays");
      std::vector<std::vector<double>> rows;
      for (const auto& r : *it) rows.push_back(number_array(r, "embeddings", f, line_no));
      if (rows.size() != a.tokens.size())
        fail(f, line_no, "field 'embeddings' has " + std::to_string(rows.size()) + " rows for " +
                             std::to_string(a.tokens.size()) + " tokens");
      for (const auto& r : rows)
        if (r.size() != rows.front().size()) fail(f, line_no, "field 'embeddings' rows differ in dimension");
      a.embeddings = Matrix::from_rows(rows);
    }
    if (auto it = rec.find("sentence_embedding"); it != rec.end() && !it->is_null())
      a.sentence_embedding = number_array(*it, "sentence_embedding", f, line_no);
    if (auto it = rec.find("idf"); it != rec.end() && !it->is_null()) {
      a.idf = number_array(*it, "idf", f, line_no);
      if (a.idf->size() != a.tokens.size()) fail(f, line_no, "field 'idf' length differs from token count");
      for (double v : *a.idf)
        if (!(v >= 0.0)) fail(f, line_no, "field 'idf' values must be >= 0");
    }
    if (auto it = rec.find("mask_flags"); it != rec.end() && !it->is_null()) {
      if (!it->is_array()) fail(f, line_no, "field 'mask_flags' must be an array");
      std::vector<bool> flags;
      for (const auto& b : *it) {
        if (!b.is_boolean()) fail(f, line_no, "field 'mask_flags' must contain booleans");
        flags.push_back(b.get<bool>());
      }
      if (flags.size() != a.tokens.size()) fail(f, line_no, "field 'mask_flags' length differs from token count");
      a.mask_flags = std::move(flags);
    }
    out.push_back(std::move(a));
  });
  return out;
}

std::vector<ExternalScore> parse_external_scores(std::istream& in) {
  constexpr std::string_view f = "external_scores";
  std::vector<ExternalScore> out;
  for_each_record(in, f, [&](const json& rec, std::size_t line_no) {
    ExternalScore s;
    s.instance_id = require_string(rec, "instance_id", f, line_no);
    s.metric_id = require_string(rec, "metric_id", f, line_no);
    const auto& v = require(rec, "value", f, line_no);
    if (!v.is_number()) fail(f, line_no, "field 'value' must be a number");
    s.value = v.get<double>();
    out.push_back(std::move(s));
  });
  return out;
}

const StyleDistribution* SideArtifacts::distribution(const std::string& id, Slot slot) const {
  auto it = distributions.find(SentenceRef{id, slot});
  return it == distributions.end() ? nullptr : &it->second;
}

const TokenAnnotation* SideArtifacts::annotation(const std::string& id, Slot slot) const {
  auto it = tokens.find(SentenceRef{id, slot});
  return it == tokens.end() ? nullptr : &it->second;
}

void validate_side_artifacts(const Dataset& dataset, SideArtifacts& artifacts) {
  const std::vector<std::string>* labels = nullptr;
  for (const auto& [ref, d] : artifacts.distributions) {
    if (!dataset.find(ref.instance_id))
      throw DataError("style_dists: dangling instance_id '" + ref.instance_id + "'");
    if (!labels) labels = &d.class_labels;
    else if (*labels != d.class_labels)
      throw DataError("style_dists: class order for '" + ref.instance_id + "' differs from the rest of the dataset");
  }
  for (const auto& [ref, a] : artifacts.tokens)
    if (!dataset.find(ref.instance_id)) throw DataError("tokens: dangling instance_id '" + ref.instance_id + "'");
  for (const auto& s : artifacts.external_scores)
    if (!dataset.find(s.instance_id))
      throw DataError("external_scores: dangling instance_id '" + s.instance_id + "'");
  if (labels) {
    for (const auto& inst : dataset.instances())
      if (static_cast<std::size_t>(inst.target_style_label) >= labels->size())
        throw DataError("instance '" + inst.instance_id + "' target_style_label out of range for " +
                        std::to_string(labels->size()) + " classes");
  }
}

SideArtifacts load_side_artifacts(const Dataset& dataset, const SideArtifactPaths& paths) {
  SideArtifacts out;
  auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw DataError("cannot open artifact file " + p.string());
    return in;
  };
  if (paths.style_dists) {
    auto in = open(*paths.style_dists);
    for (auto& d : parse_style_dists(in)) {
      auto ref = d.ref;
      if (!out.distributions.emplace(ref, std::move(d)).second)
        throw DataError("style_dists: duplicate entry for (" + ref.instance_id + ", " +
                        std::string(to_string(ref.slot)) + ")");
    }
  }
  if (paths.tokens) {
    auto in = open(*paths.tokens);
    for (auto& a : parse_tokens(in)) {
      auto ref = a.ref;
      if (!out.tokens.emplace(ref, std::move(a)).second)
        throw DataError("tokens: duplicate entry for (" + ref.instance_id + ", " + std::string(to_string(ref.slot)) +
                        ")");
    }
  }
  if (paths.external_scores) {
    auto in = open(*paths.external_scores);
    out.external_scores = parse_external_scores(in);
  }
  validate_side_artifacts(dataset, out);
  return out;
}

void write_style_dists(std::ostream& out, const std::vector<StyleDistribution>& dists) {
  for (const auto& d : dists)
    out << json{{"instance_id", d.ref.instance_id},
                {"slot", to_string(d.ref.slot)},
                {"class_labels", d.class_labels},
                {"probs", d.probs}}
               .dump()
        << '\n';
}

void write_tokens(std::ostream& out, const std::vector<TokenAnnotation>& tokens) {
  for (const auto& a : tokens) {
    json j{{"instance_id", a.ref.instance_id}, {"slot", to_string(a.ref.slot)}, {"tokens", a.tokens}};
    if (a.embeddings) {
      json rows = json::array();
      for (std::size_t r = 0; r < a.embeddings->rows(); ++r) {
        auto row = a.embeddings->row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
      }
      j["embeddings"] = rows;
    }
    if (a.sentence_embedding) j["sentence_embedding"] = *a.sentence_embedding;
    if (a.idf) j["idf"] = *a.idf;
    if (a.mask_flags) j["mask_flags"] = *a.mask_flags;
    out << j.dump() << '\n';
  }
}

void write_external_scores(std::ostream& out, const std::vector<ExternalScore>& scores) {
  for (const auto& s : scores)
    out << json{{"instance_id", s.instance_id}, {"metric_id", s.metric_id}, {"value", s.value}}.dump() << '\n';
}

}  // namespace tsteval
