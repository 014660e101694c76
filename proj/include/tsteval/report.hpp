#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsteval/corpus.hpp"
#include "tsteval/correlation.hpp"
#include "tsteval/score_table.hpp"

namespace tsteval {

struct ReportGroup {
  std::string task;
  std::string language;
  auto operator<=>(const ReportGroup&) const = default;
};

struct ReportCell {
  Correlation pc;
  Correlation sc;
  Correlation kc;
};

struct CorrelationReport {
  Dimension dimension = Dimension::style_accuracy;
  Mode mode = Mode::reference_free;
  std::vector<std::string> metrics;   // rows
  std::vector<ReportGroup> groups;    // column groups, sorted
  std::vector<std::vector<ReportCell>> cells;  // [metric][group]

  const ReportCell& cell(std::size_t metric, std::size_t group) const { return cells[metric][group]; }
};

/// Correlates raw metric values with the human rating of `dimension`,
/// grouped by (task, language). Groups without any rated row are omitted
/// with a warning. Throws DataError when no instance carries the rating and
/// ConfigError when `metrics` is empty or names an absent column.
CorrelationReport build_report(const ScoreTable& table, const Dataset& dataset, Dimension dimension, Mode mode,
                               const std::vector<std::string>& metrics);

void render_report_jsonl(std::ostream& out, const CorrelationReport& r, std::string_view config_hash);
void render_report_tsv(std::ostream& out, const CorrelationReport& r, std::string_view config_hash);
void render_report_text(std::ostream& out, const CorrelationReport& r, std::string_view config_hash);

struct PairwiseMatrix {
  std::vector<std::string> metrics;
  std::vector<std::vector<std::optional<double>>> r;  // Pearson, pairwise deletion
};

/// Throws ConfigError for fewer than 2 metrics.
PairwiseMatrix pairwise_matrix(const ScoreTable& table, const std::vector<std::string>& metrics);
void render_pairwise_tsv(std::ostream& out, const PairwiseMatrix& m, std::string_view config_hash);

struct Histogram {
  std::string metric_id;
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::size_t> counts;
};

/// Equal-width bins over the non-null range; the last bin is closed. A
/// constant column puts everything in a single zero-width bin.
Histogram histogram(std::string_view metric_id, std::span<const std::optional<double>> values, std::size_t bins);
void render_histograms_tsv(std::ostream& out, const std::vector<Histogram>& hs, std::string_view config_hash);

}  // namespace tsteval
