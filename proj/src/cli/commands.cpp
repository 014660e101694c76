#include "tsteval/commands.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "tsteval/corpus.hpp"
#include "tsteval/ensemble.hpp"
#include "tsteval/error.hpp"
#include "tsteval/hashing.hpp"
#include "tsteval/judge.hpp"
#include "tsteval/report.hpp"
#include "tsteval/scoring.hpp"
#include "tsteval/text.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace tsteval {
namespace {

// Records inputs and outputs of one command. Paths are stored relative to
// the config directory so reruns elsewhere produce the same manifest.
class Manifest {
 public:
  Manifest(const RunConfig& c, std::string command) : c_(c) {
    j_["command"] = std::move(command);
    j_["config_hash"] = c.hash();
    j_["seed"] = c.seed();
    j_["mode"] = to_string(c.mode());
    j_["inputs"] = ordered_json::object();
    j_["outputs"] = ordered_json::object();
  }

  void input(const fs::path& p) { j_["inputs"][rel(p)] = sha256_file(p); }
  void output(const fs::path& p) { j_["outputs"][rel(p)] = sha256_file(p); }
  ordered_json& extra() { return j_; }

  void write(const fs::path& dir) {
    const auto p = dir / ("manifest_" + j_["command"].get<std::string>() + ".json");
    std::ofstream out(p);
    out << j_.dump(2) << '\n';
  }

 private:
  std::string rel(const fs::path& p) const { return fs::relative(p, c_.base_dir()).generic_string(); }

  const RunConfig& c_;
  ordered_json j_;
};

fs::path ensure_dir(const fs::path& d) {
  fs::create_directories(d);
  return d;
}

template <class F>
fs::path write_file(const fs::path& p, F&& f) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  f(out);
  out.close();
  if (!out) throw DataError("failed writing " + p.string());
  return p;
}

ScoreTable load_scores(const RunConfig& c, Manifest& m, bool with_hybrids = false) {
  std::vector<ScoreTable> tables;
  auto inputs = c.score_inputs();
  // fit-ensemble output joins the inputs unless it is listed already.
  const auto hybrids = c.output_dir() / "hybrids.tsv";
  if (with_hybrids && fs::exists(hybrids) &&
      std::none_of(inputs.begin(), inputs.end(), [&](const auto& p) { return fs::exists(p) && fs::equivalent(p, hybrids); }))
    inputs.push_back(hybrids);
  for (const auto& p : inputs) {
    if (!fs::exists(p)) throw DataError("score table " + p.string() + " does not exist (run score first)");
    tables.push_back(read_score_table(p));
    m.input(p);
  }
  return merge_score_tables(tables);
}

Dataset load_dataset_logged(const RunConfig& c, Manifest& m) {
  const auto p = c.required_path("dataset");
  m.input(p);
  return load_dataset(p);
}

std::vector<std::optional<double>> human_column(const ScoreTable& t, const Dataset& d, Dimension dim) {
  std::vector<std::optional<double>> h(t.num_rows());
  bool any = false;
  for (std::size_t i = 0; i < t.num_rows(); ++i) {
    const auto* inst = d.find(t.row_ids()[i]);
    if (!inst) throw DataError("score table row '" + t.row_ids()[i] + "' is not in the dataset");
    auto it = inst->human_ratings.find(dim);
    if (it != inst->human_ratings.end()) {
      h[i] = it->second;
      any = true;
    }
  }
  if (!any) throw DataError("no human ratings for dimension " + std::string(to_string(dim)));
  return h;
}

std::string dim_suffix(Dimension d) { return d == Dimension::style_accuracy ? "st" : "cp"; }

std::vector<Dimension> dimensions_list(const RunConfig& c, const char* section, std::vector<Dimension> fallback) {
  if (auto d = c.dimension()) return {*d};
  const auto names = c.get<std::vector<std::string>>(section, "dimensions", {});
  if (names.empty()) return fallback;
  std::vector<Dimension> out;
  for (const auto& n : names) out.push_back(parse_dimension(n));
  return out;
}

std::vector<std::string> report_metrics(const RunConfig& c, const ScoreTable& t, const Registry& reg, Dimension dim) {
  auto configured = c.get<std::vector<std::string>>("correlate", "metrics", {});
  std::vector<std::string> out;
  for (const auto& col : t.columns()) {
    const auto* d = reg.find(col.metric_id);
    if (!d) throw ConfigError("score column '" + col.metric_id + "' is not a registered metric");
    if (d->dimension != dim) continue;
    if (!configured.empty() && std::find(configured.begin(), configured.end(), col.metric_id) == configured.end())
      continue;
    out.push_back(col.metric_id);
  }
  return out;
}

void correlate_dimension(const RunConfig& c, const ScoreTable& t, const Dataset& ds, const Registry& reg,
                         Dimension dim, Manifest& m, std::ostream* text_out) {
  const auto metrics = report_metrics(c, t, reg, dim);
  if (metrics.empty()) throw ConfigError("no metrics to correlate for " + std::string(to_string(dim)));
  const auto report = build_report(t, ds, dim, c.mode(), metrics);
  const auto dir = ensure_dir(c.output_dir());
  const std::string stem = "report_" + std::string(to_string(dim));
  m.output(write_file(dir / (stem + ".jsonl"), [&](auto& o) { render_report_jsonl(o, report, c.hash()); }));
  m.output(write_file(dir / (stem + ".tsv"), [&](auto& o) { render_report_tsv(o, report, c.hash()); }));
  m.output(write_file(dir / (stem + ".txt"), [&](auto& o) { render_report_text(o, report, c.hash()); }));
  if (text_out) render_report_text(*text_out, report, c.hash());
  if (c.get<bool>("correlate", "pairwise", true) && metrics.size() >= 2) {
    const auto pm = pairwise_matrix(t, metrics);
    m.output(write_file(dir / ("pairwise_" + std::string(to_string(dim)) + ".tsv"),
                        [&](auto& o) { render_pairwise_tsv(o, pm, c.hash()); }));
  }
  const auto bins = c.get<int>("correlate", "histogram_bins", 10);
  if (bins > 0) {
    std::vector<Histogram> hs;
    for (const auto& id : metrics) hs.push_back(histogram(id, t.column(id), static_cast<std::size_t>(bins)));
    m.output(write_file(dir / ("histograms_" + std::string(to_string(dim)) + ".tsv"),
                        [&](auto& o) { render_histograms_tsv(o, hs, c.hash()); }));
  }
}

std::vector<TemplateId> configured_templates(const RunConfig& c) {
  const auto names = c.get<std::vector<std::string>>("judge", "templates", {});
  if (names.empty())
    return {TemplateId::style_likert, TemplateId::style_binary, TemplateId::content_likert,
            TemplateId::fluency_likert};
  std::vector<TemplateId> out;
  for (const auto& n : names) out.push_back(parse_template_id(n));
  return out;
}

}  // namespace

ScoreTable merge_score_tables(const std::vector<ScoreTable>& tables) {
  if (tables.empty()) throw ConfigError("no score tables given");
  ScoreTable out(tables.front().row_ids());
  for (const auto& t : tables) {
    if (t.row_ids() != out.row_ids()) throw DataError("score tables cover different rows");
    for (std::size_t c = 0; c < t.num_columns(); ++c) {
      const auto col = t.column(c);
      out.add_column(t.info(c), ScoreColumn(col.begin(), col.end()));
    }
  }
  return out;
}

int cmd_score(const RunConfig& c) {
  Manifest m(c, "score");
  const auto registry = c.registry();
  ScoringOptions opt;
  opt.mode = c.mode();
  opt.metrics = c.metrics();
  opt.seed = c.seed();
  opt.workers = c.workers();
  opt.smatch_restarts = c.get<int>("smatch", "restarts", 4);
  opt.smatch_drop_punct = c.get<bool>("smatch", "drop_punct", true);
  opt.ted_label = parse_ted_label(c.get<std::string>("ted", "label", "deprel_upos"));
  opt.wmd_cell_cap = c.get<std::size_t>("wmd", "cell_cap", kWmdDefaultCellCap);
  opt.bleu_max_n = c.get<int>("bleu", "max_n", 4);
  opt.pinc_max_n = c.get<int>("pinc", "max_n", 4);
  opt.english_stemming = c.get<bool>("meteor", "stemming", true);
  if (auto it = c.json().find("kl_direction"); it != c.json().end()) {
    const auto v = it->get<std::string>();
    if (v == "source_to_generated") opt.kl_direction = KlDirection::source_to_generated;
    else if (v == "generated_to_source") opt.kl_direction = KlDirection::generated_to_source;
    else throw ConfigError("unknown kl_direction '" + v + "'");
  }
  validate_metric_request(opt.metrics, registry, opt.mode);

  const auto dataset = load_dataset_logged(c, m);
  SideArtifactPaths paths;
  paths.style_dists = c.path("style_dists");
  paths.tokens = c.path("tokens");
  paths.external_scores = c.path("external_scores");
  for (const auto& p : {paths.style_dists, paths.tokens, paths.external_scores})
    if (p) m.input(*p);
  const auto artifacts = load_side_artifacts(dataset, paths);

  std::optional<std::map<SentenceRef, DependencyTree>> parses;
  std::optional<std::map<SentenceRef, SemanticGraph>> amr;
  std::optional<StyleLexicon> lexicon;
  if (auto p = c.path("parses")) {
    m.input(*p);
    parses = load_conllu_file(p->string());
  }
  if (auto p = c.path("amr")) {
    m.input(*p);
    amr = load_penman_file(p->string());
  }
  if (auto p = c.path("lexicon")) {
    m.input(*p);
    lexicon = load_lexicon(p->string());
  }
  ScoringInputs in;
  in.dataset = &dataset;
  in.artifacts = &artifacts;
  in.parses = parses ? &*parses : nullptr;
  in.amr = amr ? &*amr : nullptr;
  in.lexicon = lexicon ? &*lexicon : nullptr;

  const auto result = score_dataset(in, opt, registry);
  const auto dir = ensure_dir(c.output_dir());
  m.output(write_file(dir / "scores.tsv", [&](auto& o) { write_score_table(o, result.table, c.hash()); }));
  auto& nulls = m.extra()["null_counts"];
  nulls = ordered_json::object();
  for (const auto& id : opt.metrics) nulls[id] = result.diagnostics.at(id).nulls;
  m.write(dir);
  return result.has_nulls() ? kExitPartial : kExitOk;
}

int cmd_correlate(const RunConfig& c) {
  Manifest m(c, "correlate");
  const auto registry = c.registry();
  const auto dataset = load_dataset_logged(c, m);
  const auto table = load_scores(c, m);
  const auto dims = dimensions_list(c, "correlate", {Dimension::style_accuracy});
  for (auto d : dims) correlate_dimension(c, table, dataset, registry, d, m, nullptr);
  m.write(c.output_dir());
  return kExitOk;
}

int cmd_report(const RunConfig& c) {
  Manifest m(c, "report");
  const auto registry = c.registry();
  const auto dataset = load_dataset_logged(c, m);
  const auto table = load_scores(c, m);
  bool any = false;
  for (auto d : kAllDimensions) {
    if (report_metrics(c, table, registry, d).empty()) continue;
    const bool rated = std::any_of(dataset.instances().begin(), dataset.instances().end(),
                                   [&](const auto& i) { return i.human_ratings.count(d) > 0; });
    if (!rated) {
      spdlog::warn("no human ratings for {}; skipping its report", to_string(d));
      continue;
    }
    correlate_dimension(c, table, dataset, registry, d, m, &std::cout);
    std::cout << '\n';
    any = true;
  }
  if (!any) throw ConfigError("no dimension has both metrics and human ratings");
  m.write(c.output_dir());
  return kExitOk;
}

int cmd_fit_ensemble(const RunConfig& c) {
  Manifest m(c, "fit-ensemble");
  const auto registry = c.registry();
  const auto dataset = load_dataset_logged(c, m);
  const auto table = load_scores(c, m);
  const auto oriented = orient_and_normalize(table, registry);
  const auto split = hash_split(table.row_ids());
  const auto dir = ensure_dir(c.output_dir());

  SimulationOptions so;
  so.grid_step = c.get<double>("ensemble", "grid_step", 0.05);
  so.min_tuning_rows = c.get<std::size_t>("ensemble", "min_tuning_rows", 10);
  ForestOptions fo;
  fo.n_trees = c.get<int>("ensemble", "n_trees", 200);
  fo.seed = c.seed();
  fo.workers = c.workers();
  const bool learned = c.get<bool>("ensemble", "learned", true);

  ScoreTable hybrids(table.row_ids());
  auto& models = m.extra()["models"];
  models = ordered_json::object();
  for (auto d : dimensions_list(c, "ensemble", {Dimension::style_accuracy, Dimension::content_preservation})) {
    if (d != Dimension::style_accuracy && d != Dimension::content_preservation)
      throw ConfigError("hybrids exist for style_accuracy and content_preservation only");
    const auto human = human_column(table, dataset, d);
    auto emit = [&](const HybridModel& model, const std::string& id) {
      const auto p = write_file(dir / (id + ".txt"), [&](auto& o) {
        o << "# config_hash=" << c.hash() << '\n';
        write_hybrid_model(o, model);
      });
      m.output(p);
      ColumnInfo info{id, d, Orientation::higher_better, c.mode()};
      hybrids.add_column(info, apply_hybrid(model, oriented));
      const auto held = hybrid_pearson(oriented, human, model.metrics, model.weights, split.held_out);
      auto& e = models[id];
      e["metrics"] = model.metrics;
      e["weights"] = model.weights;
      e["held_out_pearson"] = held ? ordered_json(*held) : ordered_json(nullptr);
      spdlog::info("{}: {} {} / {} {} / {} {} (oracle; held-out PC {})", id, model.metrics[0], model.weights[0],
                   model.metrics[1], model.weights[1], model.metrics[2], model.weights[2],
                   held ? format_double(*held) : "NA");
    };
    emit(fit_hybrid_simulation(oriented, human, d, registry, split.tuning, so), "hybrid_simulation_" + dim_suffix(d));
    if (learned) {
      const auto fit = fit_learned_from_table(oriented, human, d, registry, split.tuning, fo);
      emit(fit.model, "hybrid_learned_" + dim_suffix(d));
      auto& imp = models["hybrid_learned_" + dim_suffix(d)]["importances"];
      imp = ordered_json::object();
      for (std::size_t k = 0; k < fit.feature_ids.size(); ++k) imp[fit.feature_ids[k]] = fit.forest.importances[k];
    }
  }
  m.output(write_file(dir / "hybrids.tsv", [&](auto& o) { write_score_table(o, hybrids, c.hash()); }));
  m.write(dir);
  return kExitOk;
}

int cmd_overall(const RunConfig& c) {
  Manifest m(c, "overall");
  const auto registry = c.registry();
  const auto dataset = load_dataset_logged(c, m);
  const auto table = load_scores(c, m, true);
  const auto oriented = orient_and_normalize(table, registry);
  auto presets = c.get<std::vector<std::string>>("overall", "presets", {"existing", "ours1", "ours2"});
  ScoreTable out(table.row_ids());
  auto& triples = m.extra()["triples"];
  triples = ordered_json::object();
  bool partial = false;
  for (const auto& name : presets) {
    ScoreColumn col(table.num_rows());
    std::size_t nulls = 0;
    for (std::size_t i = 0; i < table.num_rows(); ++i) {
      const auto* inst = dataset.find(table.row_ids()[i]);
      if (!inst) throw DataError("score table row '" + table.row_ids()[i] + "' is not in the dataset");
      const auto p = overall_preset(name, inst->task, inst->language);
      triples[name][inst->task.tag + "/" + inst->language.tag] = {p.style, p.content, p.fluency};
      std::optional<double> v[3];
      const std::string* ids[3] = {&p.style, &p.content, &p.fluency};
      bool ok = true;
      for (int k = 0; k < 3; ++k) {
        if (!oriented.has_column(*ids[k])) throw ConfigError("preset " + name + " needs column '" + *ids[k] + "'");
        v[k] = oriented.at(i, oriented.column_index(*ids[k]));
        ok = ok && v[k].has_value();
      }
      if (ok) col[i] = overall_score(*v[0], *v[1], *v[2]);
      else ++nulls;
    }
    if (nulls) {
      spdlog::warn("overall_{}: {} rows null (missing components)", name, nulls);
      partial = true;
    }
    out.add_column({"overall_" + name, Dimension::overall, Orientation::higher_better, c.mode()}, std::move(col));
  }
  const auto dir = ensure_dir(c.output_dir());
  m.output(write_file(dir / "overall.tsv", [&](auto& o) { write_score_table(o, out, c.hash()); }));
  m.write(dir);
  return partial ? kExitPartial : kExitOk;
}

int cmd_render_prompts(const RunConfig& c) {
  Manifest m(c, "render-prompts");
  const auto dataset = load_dataset_logged(c, m);
  const auto templates = configured_templates(c);
  const auto dir = ensure_dir(c.output_dir() / "prompts");
  std::ostringstream index;
  index << "# config_hash=" << c.hash() << "\ninstance_id\ttemplate_id\tfile\n";
  for (const auto& inst : dataset.instances())
    for (auto t : templates) {
      const std::string name = inst.instance_id + "." + std::string(to_string(t)) + ".txt";
      m.output(write_file(dir / name, [&](auto& o) { o << render_prompt(t, inst); }));
      index << inst.instance_id << '\t' << to_string(t) << '\t' << name << '\n';
    }
  m.output(write_file(dir / "index.tsv", [&](auto& o) { o << index.str(); }));
  m.write(c.output_dir());
  return kExitOk;
}

int cmd_judge(const RunConfig& c) {
  Manifest m(c, "judge");
  const auto dataset = load_dataset_logged(c, m);
  const auto templates = configured_templates(c);
  const auto& j = c.json();
  if (!j.contains("judge") || !j["judge"].is_object()) throw ConfigError("config lacks a 'judge' block");
  const auto& jb = j["judge"];
  EndpointConfig ec;
  if (jb.contains("endpoint")) {
    const auto& e = jb["endpoint"];
    ec.base_url = e.value("base_url", "");
    ec.path = e.value("path", ec.path);
    ec.model_id = e.value("model_id", "");
    ec.auth_token_env = e.value("auth_token_env", "");
    ec.timeout_seconds = e.value("timeout_seconds", ec.timeout_seconds);
    ec.temperature = e.value("temperature", ec.temperature);
    ec.max_tokens = e.value("max_tokens", ec.max_tokens);
  }
  const std::string model_id = jb.value("model_id", ec.model_id);
  if (model_id.empty()) throw ConfigError("judge needs a model_id");
  ec.model_id = model_id;
  JudgeOptions jo;
  jo.offline = jb.value("offline", false);
  jo.max_in_flight = jb.value("max_in_flight", jo.max_in_flight);
  jo.max_retries = jb.value("max_retries", jo.max_retries);
  jo.initial_backoff = std::chrono::milliseconds(jb.value("initial_backoff_ms", 500));
  jo.backoff_factor = jb.value("backoff_factor", 2.0);
  jo.min_interval = std::chrono::milliseconds(jb.value("min_interval_ms", 0));
  const auto cache_path = c.resolve(jb.value("cache", "judge_cache.jsonl"));
  JudgeCache cache(cache_path);
  std::unique_ptr<CompletionEndpoint> endpoint;
  if (!jo.offline) endpoint = make_http_endpoint(ec);

  JudgeStats stats;
  const auto responses = judge_batch(dataset.instances(), templates, endpoint.get(), model_id, cache, jo, &stats);
  ScoreTable out(dataset.ids());
  bool partial = false;
  for (auto t : templates) {
    auto col = judged_column(responses, t, out.row_ids());
    partial = partial || std::any_of(col.begin(), col.end(), [](const auto& v) { return !v.has_value(); });
    out.add_column({template_metric_id(t) + "@" + model_id, template_dimension(t), Orientation::higher_better,
                    c.mode()},
                   std::move(col));
  }
  const auto dir = ensure_dir(c.output_dir());
  m.output(write_file(dir / "judged.tsv", [&](auto& o) { write_score_table(o, out, c.hash()); }));
  m.extra()["judge"] = {{"model_id", model_id},
                        {"cache_hits", stats.cache_hits},
                        {"failures", stats.failures},
                        {"parse_failures", stats.parse_failures}};
  m.write(dir);
  return partial ? kExitPartial : kExitOk;
}

}  // namespace tsteval
