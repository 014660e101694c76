#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsteval/types.hpp"

namespace tsteval {

struct ColumnInfo {
  std::string metric_id;
  Dimension dimension = Dimension::content_preservation;
  Orientation orientation = Orientation::higher_better;
  Mode mode = Mode::reference_free;
  bool operator==(const ColumnInfo&) const = default;
};

using ScoreColumn = std::vector<std::optional<double>>;

/// Instances x metrics. Missing values stay null; nothing is imputed.
class ScoreTable {
 public:
  ScoreTable() = default;
  /// Throws DataError on duplicate row ids.
  explicit ScoreTable(std::vector<std::string> row_ids);

  const std::vector<std::string>& row_ids() const { return rows_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_columns() const { return columns_.size(); }
  std::optional<std::size_t> row_index(std::string_view id) const;

  /// Throws DataError if the metric already exists or the length mismatches.
  void add_column(ColumnInfo info, ScoreColumn values);

  bool has_column(std::string_view metric_id) const;
  /// Throws ConfigError for unknown metric ids.
  std::size_t column_index(std::string_view metric_id) const;
  const ColumnInfo& info(std::size_t col) const { return columns_[col]; }
  const std::vector<ColumnInfo>& columns() const { return columns_; }
  std::span<const std::optional<double>> column(std::size_t col) const { return values_[col]; }
  std::span<const std::optional<double>> column(std::string_view metric_id) const {
    return values_[column_index(metric_id)];
  }
  std::optional<double> at(std::size_t row, std::size_t col) const { return values_[col][row]; }
  std::size_t null_count(std::size_t col) const;

  bool operator==(const ScoreTable& o) const {
    return rows_ == o.rows_ && columns_ == o.columns_ && values_ == o.values_;
  }

 private:
  std::vector<std::string> rows_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::vector<ColumnInfo> columns_;
  std::vector<ScoreColumn> values_;
};

/// Tab-separated rendering with a commented metadata header; values are
/// written in shortest round-trip form, nulls as "NA".
void write_score_table(std::ostream& out, const ScoreTable& table, std::string_view config_hash);
ScoreTable read_score_table(std::istream& in);
ScoreTable read_score_table(const std::filesystem::path& path);

}  // namespace tsteval
