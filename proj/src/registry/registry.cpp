#include "tsteval/registry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "tsteval/error.hpp"

namespace tsteval {

bool MetricDescriptor::supports(Mode m) const { return std::find(modes.begin(), modes.end(), m) != modes.end(); }

std::string_view base_metric_id(std::string_view metric_id) {
  const auto at = metric_id.find('@');
  return at == std::string_view::npos ? metric_id : metric_id.substr(0, at);
}

Registry::Registry(std::vector<MetricDescriptor> descriptors) : list_(std::move(descriptors)) {
  for (std::size_t i = 0; i < list_.size(); ++i) {
    const auto& d = list_[i];
    if (d.metric_id.empty() || d.metric_id.find('@') != std::string::npos)
      throw ConfigError("invalid metric id '" + d.metric_id + "'");
    if (!index_.emplace(d.metric_id, i).second) throw ConfigError("metric '" + d.metric_id + "' registered twice");
    if (d.normalization.kind == Normalization::Kind::fixed_bounds &&
        !(std::isfinite(d.normalization.lo) && std::isfinite(d.normalization.hi) &&
          d.normalization.lo < d.normalization.hi))
      throw ConfigError("metric '" + d.metric_id + "' has invalid fixed bounds");
    if (d.modes.empty()) throw ConfigError("metric '" + d.metric_id + "' supports no mode");
  }
}

Registry Registry::builtin() {
  using D = Dimension;
  using O = Orientation;
  std::vector<MetricDescriptor> v;
  auto add = [&](std::string id, D dim, O o, Normalization n = Normalization::minmax(), bool ingested = false,
                 std::vector<Mode> modes = {Mode::reference_free, Mode::reference_based}) {
    MetricDescriptor d;
    d.metric_id = std::move(id);
    d.dimension = dim;
    d.orientation = o;
    d.normalization = n;
    d.ingested = ingested;
    d.modes = std::move(modes);
    v.push_back(std::move(d));
  };
  const auto S = D::style_accuracy;
  const auto C = D::content_preservation;
  const auto F = D::fluency;
  const auto HB = O::higher_better;
  const auto LB = O::lower_better;

  add("sentence_accuracy", S, HB);
  add("classifier_confidence", S, HB);
  // A larger distributional shift from the source means more transfer.
  add("emd", S, HB);
  add("kl", S, HB);
  add("js", S, HB);
  add("dist_cosine", S, LB);

  add("bleu", C, HB);
  add("masked_bleu", C, HB);
  add("rouge_2", C, HB);
  add("rouge_l", C, HB);
  add("meteor", C, HB);
  add("ter", C, LB);
  add("pinc", C, LB);
  add("cosine", C, HB);
  add("masked_cosine", C, HB);
  add("wmd", C, LB);
  add("bertscore", C, HB);
  add("bertscore_idf", C, HB);
  add("smatch_dep", C, HB);
  add("smatch_amr", C, HB);
  add("ted", C, LB);
  add("bleurt", C, HB, Normalization::minmax(), true);
  add("s3bert", C, HB, Normalization::minmax(), true);

  add("ppl_gpt2", F, LB, Normalization::minmax(), true);
  add("ppl_mgpt", F, LB, Normalization::minmax(), true);
  add("ppl_gpt2_ft", F, LB, Normalization::minmax(), true);
  add("ppl_mgpt_ft", F, LB, Normalization::minmax(), true);

  add("llm_style_likert", S, HB, Normalization::fixed(1, 5));
  add("llm_style_binary", S, HB, Normalization::fixed(0, 1));
  add("llm_content_likert", C, HB, Normalization::fixed(1, 5));
  add("llm_fluency_likert", F, HB, Normalization::fixed(1, 5));
  add("llm_overall_likert", D::overall, HB, Normalization::fixed(1, 5));

  add("hybrid_simulation_st", S, HB, Normalization::identity());
  add("hybrid_simulation_cp", C, HB, Normalization::identity());
  add("hybrid_learned_st", S, HB, Normalization::identity());
  add("hybrid_learned_cp", C, HB, Normalization::identity());

  add("overall_existing", D::overall, HB, Normalization::identity());
  add("overall_ours1", D::overall, HB, Normalization::identity());
  add("overall_ours2", D::overall, HB, Normalization::identity());
  return Registry(std::move(v));
}

Registry Registry::with_overrides(const std::vector<MetricDescriptor>& overrides) const {
  auto list = list_;
  for (const auto& o : overrides) {
    auto it = std::find_if(list.begin(), list.end(), [&](const auto& d) { return d.metric_id == o.metric_id; });
    if (it != list.end())
      *it = o;
    else
      list.push_back(o);
  }
  return Registry(std::move(list));
}

const MetricDescriptor* Registry::find(std::string_view metric_id) const {
  auto it = index_.find(base_metric_id(metric_id));
  return it == index_.end() ? nullptr : &list_[it->second];
}

const MetricDescriptor& Registry::at(std::string_view metric_id) const {
  if (const auto* d = find(metric_id)) return *d;
  throw ConfigError("unknown metric id '" + std::string(metric_id) + "'");
}

ScoreColumn normalize_column(std::span<const std::optional<double>> values, const MetricDescriptor& d) {
  ScoreColumn out(values.size());
  const double sign = d.orientation == Orientation::lower_better ? -1.0 : 1.0;
  auto clamp = [](double v) { return std::clamp(v, kNormEpsilon, 1.0); };
  switch (d.normalization.kind) {
    case Normalization::Kind::none:
      for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i]) out[i] = clamp(d.orientation == Orientation::lower_better ? 1.0 - *values[i] : *values[i]);
      return out;
    case Normalization::Kind::fixed_bounds: {
      double lo = d.normalization.lo;
      double hi = d.normalization.hi;
      if (sign < 0) std::swap(lo, hi);
      for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i]) out[i] = clamp((sign * *values[i] - sign * lo) / (sign * hi - sign * lo));
      return out;
    }
    case Normalization::Kind::minmax_per_dataset: {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& v : values)
        if (v) {
          lo = std::min(lo, sign * *v);
          hi = std::max(hi, sign * *v);
        }
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) continue;
        out[i] = hi == lo ? 0.5 : clamp((sign * *values[i] - lo) / (hi - lo));
      }
      return out;
    }
  }
  return out;
}

ScoreTable orient_and_normalize(const ScoreTable& table, const Registry& registry) {
  ScoreTable out(table.row_ids());
  for (std::size_t c = 0; c < table.num_columns(); ++c) {
    const auto& d = registry.at(table.info(c).metric_id);
    auto info = table.info(c);
    info.orientation = Orientation::higher_better;
    out.add_column(info, normalize_column(table.column(c), d));
  }
  return out;
}

ScoreColumn ingest_external_metric(std::string_view metric_id, const std::vector<ExternalScore>& scores,
                                   const std::vector<std::string>& row_ids, const Registry& registry) {
  registry.at(metric_id);
  std::unordered_map<std::string_view, std::size_t> rows;
  for (std::size_t i = 0; i < row_ids.size(); ++i) rows.emplace(row_ids[i], i);
  ScoreColumn col(row_ids.size());
  for (const auto& s : scores) {
    if (s.metric_id != metric_id) continue;
    auto it = rows.find(s.instance_id);
    if (it == rows.end()) continue;
    if (col[it->second])
      throw DataError("duplicate external score for (" + s.instance_id + ", " + s.metric_id + ")");
    if (!std::isfinite(s.value))
      throw DataError("non-finite external score for (" + s.instance_id + ", " + s.metric_id + ")");
    col[it->second] = s.value;
  }
  return col;
}

}  // namespace tsteval
