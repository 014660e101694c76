#include "tsteval/score_table.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "tsteval/error.hpp"
#include "tsteval/text.hpp"

namespace tsteval {

ScoreTable::ScoreTable(std::vector<std::string> row_ids) : rows_(std::move(row_ids)) {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (!row_index_.emplace(rows_[i], i).second) throw DataError("duplicate row id '" + rows_[i] + "'");
}

std::optional<std::size_t> ScoreTable::row_index(std::string_view id) const {
  auto it = row_index_.find(std::string(id));
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

void ScoreTable::add_column(ColumnInfo info, ScoreColumn values) {
  if (has_column(info.metric_id)) throw DataError("duplicate metric column '" + info.metric_id + "'");
  if (values.size() != rows_.size())
    throw DataError("column '" + info.metric_id + "' has " + std::to_string(values.size()) + " values for " +
                    std::to_string(rows_.size()) + " rows");
  columns_.push_back(std::move(info));
  values_.push_back(std::move(values));
}

bool ScoreTable::has_column(std::string_view metric_id) const {
  for (const auto& c : columns_)
    if (c.metric_id == metric_id) return true;
  return false;
}

std::size_t ScoreTable::column_index(std::string_view metric_id) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].metric_id == metric_id) return i;
  throw ConfigError("no metric column '" + std::string(metric_id) + "'");
}

std::size_t ScoreTable::null_count(std::size_t col) const {
  std::size_t n = 0;
  for (const auto& v : values_[col]) n += v ? 0 : 1;
  return n;
}

void write_score_table(std::ostream& out, const ScoreTable& table, std::string_view config_hash) {
  out << "# tsteval score table\n";
  out << "# config_hash=" << config_hash << '\n';
  for (const auto& c : table.columns())
    out << "# column\t" << c.metric_id << '\t' << to_string(c.dimension) << '\t' << to_string(c.orientation) << '\t'
        << to_string(c.mode) << '\n';
  out << "instance_id";
  for (const auto& c : table.columns()) out << '\t' << c.metric_id;
  out << '\n';
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    out << table.row_ids()[r];
    for (std::size_t c = 0; c < table.num_columns(); ++c) {
      const auto v = table.at(r, c);
      out << '\t' << (v ? format_double(*v) : std::string("NA"));
    }
    out << '\n';
  }
}

namespace {

double parse_value(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw DataError("score table line " + std::to_string(line_no) + ": bad value '" + s + "'");
  return v;
}

}  // namespace

ScoreTable read_score_table(std::istream& in) {
  std::vector<ColumnInfo> infos;
  std::vector<std::string> header;
  std::vector<std::string> rows;
  std::vector<ScoreColumn> cols;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# column\t", 0) == 0) {
      auto parts = split(line, '\t');
      if (parts.size() != 5) throw DataError("score table line " + std::to_string(line_no) + ": bad column record");
      infos.push_back({parts[1], parse_dimension(parts[2]), parse_orientation(parts[3]), parse_mode(parts[4])});
      continue;
    }
    if (line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (header.empty()) {
      header = parts;
      if (header.empty() || header[0] != "instance_id")
        throw DataError("score table line " + std::to_string(line_no) + ": expected header row");
      if (header.size() != infos.size() + 1)
        throw DataError("score table header lists " + std::to_string(header.size() - 1) + " metrics but " +
                        std::to_string(infos.size()) + " column records");
      for (std::size_t i = 0; i < infos.size(); ++i)
        if (infos[i].metric_id != header[i + 1]) throw DataError("score table header/column record mismatch");
      cols.resize(infos.size());
      continue;
    }
    if (parts.size() != header.size())
      throw DataError("score table line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                      " fields");
    rows.push_back(parts[0]);
    for (std::size_t c = 0; c < infos.size(); ++c) {
      const auto& s = parts[c + 1];
      if (s == "NA") cols[c].push_back(std::nullopt);
      else cols[c].push_back(parse_value(s, line_no));
    }
  }
  ScoreTable table(std::move(rows));
  for (std::size_t c = 0; c < infos.size(); ++c) table.add_column(infos[c], std::move(cols[c]));
  return table;
}

ScoreTable read_score_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open score table " + path.string());
  return read_score_table(in);
}

}  // namespace tsteval
