#include "tsteval/scoring.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "tsteval/embedding.hpp"
#include "tsteval/error.hpp"
#include "tsteval/hashing.hpp"
#include "tsteval/rng.hpp"

namespace tsteval {

bool ScoringResult::has_nulls() const {
  for (const auto& [id, d] : diagnostics)
    if (d.nulls > 0) return true;
  return false;
}

void validate_metric_request(const std::vector<std::string>& metrics, const Registry& registry, Mode mode) {
  if (metrics.empty()) throw ConfigError("no metrics requested");
  std::set<std::string> seen;
  for (const auto& id : metrics) {
    const auto& d = registry.at(id);
    const auto base = base_metric_id(id);
    if (base.starts_with("hybrid_") || base.starts_with("overall_"))
      throw ConfigError("metric '" + id + "' is produced by fit-ensemble/overall, not score");
    if (!d.supports(mode)) throw ConfigError("metric '" + id + "' does not support " + std::string(to_string(mode)));
    if (!seen.insert(id).second) throw ConfigError("metric '" + id + "' requested twice");
  }
}

namespace {

// Per-cell outcome: a value, or the reason it is null.
struct Cell {
  std::optional<double> value;
  std::string reason;
  bool approximate = false;
};

Cell missing(std::string why) { return {std::nullopt, std::move(why), false}; }
Cell ok(double v, bool approximate = false) { return {v, "", approximate}; }

class RowScorer {
 public:
  RowScorer(const ScoringInputs& in, const ScoringOptions& opt, const EvaluationInstance& inst)
      : in_(in), opt_(opt), inst_(inst) {
    other_ = opt.mode == Mode::reference_free ? Slot::source : Slot::reference;
  }

  Cell score(const std::string& id, const MetricDescriptor& d) {
    try {
      return dispatch(id, d);
    } catch (const DataError& e) {
      return missing(e.what());
    }
  }

 private:
  bool has_other() const { return other_ == Slot::source || inst_.reference_text.has_value(); }

  const std::string& text(Slot s) const {
    switch (s) {
      case Slot::generated: return inst_.generated_text;
      case Slot::reference: return *inst_.reference_text;
      default: return inst_.source_text;
    }
  }

  Tokens tokens(Slot s) const {
    if (in_.artifacts)
      if (const auto* a = in_.artifacts->annotation(inst_.instance_id, s)) return a->tokens;
    return simple_tokenize(text(s));
  }

  const TokenAnnotation* annotation(Slot s) const {
    return in_.artifacts ? in_.artifacts->annotation(inst_.instance_id, s) : nullptr;
  }

  const StyleDistribution* dist(Slot s) const {
    return in_.artifacts ? in_.artifacts->distribution(inst_.instance_id, s) : nullptr;
  }

  static Slot masked(Slot s) {
    switch (s) {
      case Slot::source: return Slot::source_masked;
      case Slot::generated: return Slot::generated_masked;
      case Slot::reference: return Slot::reference_masked;
      default: return s;
    }
  }

  const DependencyTree* parse(Slot s) const {
    if (!in_.parses) return nullptr;
    auto it = in_.parses->find({inst_.instance_id, s});
    return it == in_.parses->end() ? nullptr : &it->second;
  }

  const SemanticGraph* graph(Slot s) const {
    if (!in_.amr) return nullptr;
    auto it = in_.amr->find({inst_.instance_id, s});
    return it == in_.amr->end() ? nullptr : &it->second;
  }

  std::uint64_t row_seed() const { return mix_seed(opt_.seed, fnv1a64(inst_.instance_id)); }

  Cell dispatch(const std::string& id, const MetricDescriptor& d) {
    if (d.ingested || base_metric_id(id).starts_with("llm_")) return ingested(id);
    if (!has_other()) return missing("no reference text");
    const auto base = base_metric_id(id);

    if (base == "sentence_accuracy" || base == "classifier_confidence") {
      const auto* q = dist(Slot::generated);
      if (!q) return missing("no style distribution for generated text");
      const auto target = static_cast<std::size_t>(inst_.target_style_label);
      return ok(base == "sentence_accuracy" ? static_cast<double>(sentence_accuracy(*q, target))
                                          : classifier_confidence(*q, target));
    }
    if (base == "emd" || base == "kl" || base == "js" || base == "dist_cosine") {
      const auto* p = dist(other_);
      const auto* q = dist(Slot::generated);
      if (!p || !q) return missing("no style distributions");
      if (base == "emd") return ok(emd(*p, *q));
      if (base == "js") return ok(js_divergence(*p, *q));
      if (base == "dist_cosine") return ok(dist_cosine(*p, *q));
      return ok(opt_.kl_direction == KlDirection::source_to_generated ? kl_divergence(*p, *q) : kl_divergence(*q, *p));
    }

    if (base == "bleu" || base == "rouge_2" || base == "rouge_l" || base == "meteor" || base == "ter" ||
        base == "masked_bleu") {
      const auto c = tokens(Slot::generated);
      const auto r = tokens(other_);
      if (base == "bleu") return ok(bleu(c, r, opt_.bleu_max_n));
      if (base == "rouge_2") return ok(rouge_2(c, r));
      if (base == "rouge_l") return ok(rouge_l(c, r));
      if (base == "ter") return ok(ter(c, r));
      if (base == "meteor") {
        MeteorOptions mo;
        if (opt_.english_stemming && inst_.language.kind == Language::Kind::en) mo.stemmer = porter_stem;
        mo.synonyms = in_.synonyms;
        return ok(meteor(c, r, mo));
      }
      const auto* ca = annotation(Slot::generated);
      const auto* ra = annotation(other_);
      std::optional<std::vector<bool>> cf = ca ? ca->mask_flags : std::nullopt;
      std::optional<std::vector<bool>> rf = ra ? ra->mask_flags : std::nullopt;
      if (!in_.lexicon && !cf && !rf) return missing("no style lexicon or mask flags");
      static const StyleLexicon empty;
      return ok(masked_bleu(c, r, in_.lexicon ? *in_.lexicon : empty, cf, rf, opt_.bleu_max_n));
    }
    if (base == "pinc") return ok(pinc(tokens(Slot::source), tokens(Slot::generated), opt_.pinc_max_n));

    if (base == "cosine" || base == "masked_cosine") {
      const Slot a = base == "cosine" ? Slot::generated : masked(Slot::generated);
      const Slot b = base == "cosine" ? other_ : masked(other_);
      const auto* x = annotation(a);
      const auto* y = annotation(b);
      if (!x || !y || !x->sentence_embedding || !y->sentence_embedding) return missing("no sentence embeddings");
      return ok(sentence_cosine(*x->sentence_embedding, *y->sentence_embedding));
    }
    if (base == "wmd" || base == "bertscore" || base == "bertscore_idf") {
      const auto* x = annotation(Slot::generated);
      const auto* y = annotation(other_);
      if (!x || !y || !x->embeddings || !y->embeddings) return missing("no token embeddings");
      const auto a = EmbeddedSentence::from_annotation(*x);
      const auto b = EmbeddedSentence::from_annotation(*y);
      if (base == "wmd") {
        const auto r = wmd(a, b, opt_.wmd_cell_cap);
        return ok(r.value, r.approximate);
      }
      return ok(bert_score(a, b, base == "bertscore_idf").f1);
    }
    if (base == "smatch_dep" || base == "ted") {
      const auto* x = parse(Slot::generated);
      const auto* y = parse(other_);
      if (!x || !y) return missing("no dependency parses");
      if (base == "ted") return ok(ted(*x, *y, opt_.ted_label).normalized);
      const auto g1 = dep_to_amr_style(*x, opt_.smatch_drop_punct);
      const auto g2 = dep_to_amr_style(*y, opt_.smatch_drop_punct);
      return ok(smatch(g1, g2, opt_.smatch_restarts, row_seed()).f1);
    }
    if (base == "smatch_amr") {
      const auto* x = graph(Slot::generated);
      const auto* y = graph(other_);
      if (!x || !y) return missing("no AMR graphs");
      return ok(smatch(*x, *y, opt_.smatch_restarts, row_seed()).f1);
    }
    throw ConfigError("metric '" + id + "' has no scorer");
  }

  Cell ingested(const std::string& id) {
    if (!in_.artifacts) return missing("no external scores");
    auto it = external_index().find({inst_.instance_id, id});
    if (it == external_index().end()) return missing("no external score");
    return ok(it->second);
  }

  const std::map<std::pair<std::string, std::string>, double>& external_index() {
    if (!ext_) {
      ext_.emplace();
      for (const auto& s : in_.artifacts->external_scores)
        if (s.instance_id == inst_.instance_id) {
          if (!ext_->emplace(std::pair{s.instance_id, s.metric_id}, s.value).second)
            throw DataError("duplicate external score for (" + s.instance_id + ", " + s.metric_id + ")");
        }
    }
    return *ext_;
  }

  const ScoringInputs& in_;
  const ScoringOptions& opt_;
  const EvaluationInstance& inst_;
  Slot other_;
  std::optional<std::map<std::pair<std::string, std::string>, double>> ext_;
};

}  // namespace

ScoringResult score_dataset(const ScoringInputs& in, const ScoringOptions& opt, const Registry& registry) {
  if (!in.dataset) throw ConfigError("scoring needs a dataset");
  validate_metric_request(opt.metrics, registry, opt.mode);
  const auto& instances = in.dataset->instances();
  const std::size_t n = instances.size();
  const std::size_t m = opt.metrics.size();
  std::vector<const MetricDescriptor*> desc;
  for (const auto& id : opt.metrics) desc.push_back(&registry.at(id));

  std::vector<std::vector<Cell>> cells(n, std::vector<Cell>(m));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        RowScorer rs(in, opt, instances[i]);
        for (std::size_t k = 0; k < m; ++k) cells[i][k] = rs.score(opt.metrics[k], *desc[k]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ScoringResult res;
  res.table = ScoreTable(in.dataset->ids());
  for (std::size_t k = 0; k < m; ++k) {
    ScoreColumn col(n);
    auto& diag = res.diagnostics[opt.metrics[k]];
    for (std::size_t i = 0; i < n; ++i) {
      auto& c = cells[i][k];
      col[i] = c.value;
      if (!c.value) {
        ++diag.nulls;
        ++diag.reasons[c.reason];
      }
      if (c.approximate) ++diag.approximate;
    }
    for (const auto& [why, count] : diag.reasons)
      spdlog::warn("{}: {} of {} rows null ({})", opt.metrics[k], count, n, why);
    if (diag.approximate) spdlog::warn("{}: {} rows used the relaxed WMD bound", opt.metrics[k], diag.approximate);
    ColumnInfo info;
    info.metric_id = opt.metrics[k];
    info.dimension = desc[k]->dimension;
    info.orientation = desc[k]->orientation;
    info.mode = opt.mode;
    res.table.add_column(info, std::move(col));
  }
  return res;
}

}  // namespace tsteval
