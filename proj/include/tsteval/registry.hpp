#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsteval/score_table.hpp"
#include "tsteval/types.hpp"

namespace tsteval {

inline constexpr double kNormEpsilon = 1e-6;

struct Normalization {
  enum class Kind { minmax_per_dataset, fixed_bounds, none };
  Kind kind = Kind::minmax_per_dataset;
  double lo = 0.0;
  double hi = 1.0;

  static Normalization minmax() { return {}; }
  static Normalization fixed(double lo, double hi) { return {Kind::fixed_bounds, lo, hi}; }
  static Normalization identity() { return {Kind::none, 0.0, 1.0}; }
  bool operator==(const Normalization&) const = default;
};

struct MetricDescriptor {
  std::string metric_id;
  Dimension dimension = Dimension::content_preservation;
  Orientation orientation = Orientation::higher_better;
  std::vector<Mode> modes{Mode::reference_free, Mode::reference_based};
  Normalization normalization;
  bool ingested = false;  // value comes from external_scores.jsonl

  bool supports(Mode m) const;
};

class Registry {
 public:
  /// Throws ConfigError on duplicate ids or invalid fixed bounds.
  explicit Registry(std::vector<MetricDescriptor> descriptors);

  /// The documented built-in metric table.
  static Registry builtin();

  /// Returns a copy where `overrides` replace or extend the entries.
  Registry with_overrides(const std::vector<MetricDescriptor>& overrides) const;

  /// Lookup ignores an "@model" suffix ("llm_style_likert@gpt-4").
  const MetricDescriptor* find(std::string_view metric_id) const;
  /// Throws ConfigError for unregistered ids.
  const MetricDescriptor& at(std::string_view metric_id) const;
  bool contains(std::string_view metric_id) const { return find(metric_id) != nullptr; }
  const std::vector<MetricDescriptor>& all() const { return list_; }

 private:
  std::vector<MetricDescriptor> list_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

std::string_view base_metric_id(std::string_view metric_id);

/// Oriented [eps, 1] copy of one column. Lower-better values are negated
/// first; min-max uses the non-null values; constant columns map to 0.5.
ScoreColumn normalize_column(std::span<const std::optional<double>> values, const MetricDescriptor& d);

/// Applies normalize_column to every column. Throws ConfigError on an
/// unregistered column.
ScoreTable orient_and_normalize(const ScoreTable& table, const Registry& registry);

/// Column of an ingested metric aligned to `row_ids`; rows without a value
/// are null. Throws ConfigError for unregistered ids and DataError for
/// duplicate (instance, metric) entries.
ScoreColumn ingest_external_metric(std::string_view metric_id, const std::vector<ExternalScore>& scores,
                                   const std::vector<std::string>& row_ids, const Registry& registry);

}  // namespace tsteval
