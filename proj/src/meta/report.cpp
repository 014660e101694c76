#include "tsteval/report.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "tsteval/error.hpp"
#include "tsteval/text.hpp"

namespace tsteval {
namespace {

std::string cell_text(const Correlation& c) {
  if (!c.value) return "NA";
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << *c.value;
  return s.str();
}

nlohmann::json corr_json(const Correlation& c) {
  if (!c.value) return nullptr;
  return *c.value;
}

}  // namespace

CorrelationReport build_report(const ScoreTable& table, const Dataset& dataset, Dimension dimension, Mode mode,
                               const std::vector<std::string>& metrics) {
  if (metrics.empty()) throw ConfigError("no metrics to correlate");
  CorrelationReport r;
  r.dimension = dimension;
  r.mode = mode;
  r.metrics = metrics;

  // Rows per group, human ratings in table row order.
  std::map<ReportGroup, std::vector<std::size_t>> rows;
  std::vector<std::optional<double>> human(table.num_rows());
  bool any_rating = false;
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    const auto* inst = dataset.find(table.row_ids()[i]);
    if (!inst) throw DataError("score table row '" + table.row_ids()[i] + "' is not in the dataset");
    auto it = inst->human_ratings.find(dimension);
    if (it != inst->human_ratings.end()) {
      human[i] = it->second;
      any_rating = true;
    }
    rows[{inst->task.tag, inst->language.tag}].push_back(i);
  }
  if (!any_rating) throw DataError("no human ratings for dimension " + std::string(to_string(dimension)));

  std::vector<std::size_t> cols;
  for (const auto& m : metrics) cols.push_back(table.column_index(m));

  for (const auto& [g, idx] : rows) {
    const bool rated = std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return human[i].has_value(); });
    if (!rated) {
      spdlog::warn("group {}/{} has no {} ratings; omitted", g.task, g.language, to_string(dimension));
      continue;
    }
    r.groups.push_back(g);
  }
  r.cells.assign(metrics.size(), std::vector<ReportCell>(r.groups.size()));
  for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
    const auto& idx = rows.at(r.groups[gi]);
    std::vector<std::optional<double>> h;
    for (auto i : idx) h.push_back(human[i]);
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      std::vector<std::optional<double>> v;
      for (auto i : idx) v.push_back(table.at(i, cols[m]));
      const auto p = paired(v, h);
      auto& cell = r.cells[m][gi];
      cell.pc = pearson(p.x, p.y);
      cell.sc = spearman(p.x, p.y);
      cell.kc = kendall_tau_b(p.x, p.y);
    }
  }
  return r;
}

void render_report_jsonl(std::ostream& out, const CorrelationReport& r, std::string_view config_hash) {
  for (std::size_t m = 0; m < r.metrics.size(); ++m)
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
      const auto& c = r.cell(m, g);
      nlohmann::ordered_json j;
      j["config_hash"] = config_hash;
      j["dimension"] = to_string(r.dimension);
      j["mode"] = to_string(r.mode);
      j["metric_id"] = r.metrics[m];
      j["task"] = r.groups[g].task;
      j["language"] = r.groups[g].language;
      j["pc"] = corr_json(c.pc);
      j["sc"] = corr_json(c.sc);
      j["kc"] = corr_json(c.kc);
      j["n_used"] = c.pc.n_used;
      if (!c.pc.value) j["reason"] = c.pc.reason;
      out << j.dump() << '\n';
    }
}

void render_report_tsv(std::ostream& out, const CorrelationReport& r, std::string_view config_hash) {
  out << "# config_hash=" << config_hash << "\n# dimension=" << to_string(r.dimension)
      << "\n# mode=" << to_string(r.mode) << "\nmetric_id";
  for (const auto& g : r.groups)
    for (const char* k : {"pc", "sc", "kc", "n"}) out << '\t' << g.task << ':' << g.language << ':' << k;
  out << '\n';
  auto num = [](const Correlation& c) { return c.value ? format_double(*c.value) : std::string("NA"); };
  for (std::size_t m = 0; m < r.metrics.size(); ++m) {
    out << r.metrics[m];
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
      const auto& c = r.cell(m, g);
      out << '\t' << num(c.pc) << '\t' << num(c.sc) << '\t' << num(c.kc) << '\t' << c.pc.n_used;
    }
    out << '\n';
  }
}

void render_report_text(std::ostream& out, const CorrelationReport& r, std::string_view config_hash) {
  out << to_string(r.dimension) << " (" << (r.mode == Mode::reference_free ? "reference-free" : "reference-based")
      << ")  config " << config_hash << "\n";
  std::size_t w = 6;
  for (const auto& m : r.metrics) w = std::max(w, m.size());
  const int cw = 7;
  std::ostringstream head1, head2;
  head1 << std::left << std::setw(static_cast<int>(w)) << "" ;
  head2 << std::left << std::setw(static_cast<int>(w)) << "metric";
  for (const auto& g : r.groups) {
    std::string label = g.task + "/" + g.language;
    if (label.size() > static_cast<std::size_t>(3 * cw)) label.resize(3 * cw);
    head1 << " | " << std::left << std::setw(3 * cw) << label;
    head2 << " | " << std::right << std::setw(cw) << "PC" << std::setw(cw) << "SC" << std::setw(cw) << "KC";
  }
  out << head1.str() << '\n' << head2.str() << '\n';
  out << std::string(head2.str().size(), '-') << '\n';
  for (std::size_t m = 0; m < r.metrics.size(); ++m) {
    out << std::left << std::setw(static_cast<int>(w)) << r.metrics[m];
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
      const auto& c = r.cell(m, g);
      out << " | " << std::right << std::setw(cw) << cell_text(c.pc) << std::setw(cw) << cell_text(c.sc)
          << std::setw(cw) << cell_text(c.kc);
    }
    out << '\n';
  }
}

PairwiseMatrix pairwise_matrix(const ScoreTable& table, const std::vector<std::string>& metrics) {
  if (metrics.size() < 2) throw ConfigError("pairwise matrix needs at least 2 metrics");
  PairwiseMatrix pm;
  pm.metrics = metrics;
  const auto n = metrics.size();
  pm.r.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto p = paired(table.column(metrics[i]), table.column(metrics[j]));
      auto c = pearson(p.x, p.y);
      // Unit diagonal whenever the column is usable at all.
      if (i == j && c.value) c.value = 1.0;
      pm.r[i][j] = pm.r[j][i] = c.value;
    }
  return pm;
}

void render_pairwise_tsv(std::ostream& out, const PairwiseMatrix& m, std::string_view config_hash) {
  out << "# config_hash=" << config_hash << "\nmetric_id";
  for (const auto& id : m.metrics) out << '\t' << id;
  out << '\n';
  for (std::size_t i = 0; i < m.metrics.size(); ++i) {
    out << m.metrics[i];
    for (const auto& v : m.r[i]) out << '\t' << (v ? format_double(*v) : "NA");
    out << '\n';
  }
}

Histogram histogram(std::string_view metric_id, std::span<const std::optional<double>> values, std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  Histogram h;
  h.metric_id = metric_id;
  std::vector<double> v;
  for (const auto& x : values)
    if (x) v.push_back(*x);
  if (v.empty()) return h;
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (lo == hi) {
    h.edges = {lo, hi};
    h.counts = {v.size()};
    return h;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(b == bins ? hi : lo + width * static_cast<double>(b));
  h.counts.assign(bins, 0);
  for (double x : v) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    if (b >= bins) b = bins - 1;
    // Guard the rounding of edges against the computed bin.
    while (b > 0 && x < h.edges[b]) --b;
    while (b + 1 < bins && x >= h.edges[b + 1]) ++b;
    ++h.counts[b];
  }
  return h;
}

void render_histograms_tsv(std::ostream& out, const std::vector<Histogram>& hs, std::string_view config_hash) {
  out << "# config_hash=" << config_hash << "\nmetric_id\tbin\tlower\tupper\tcount\n";
  for (const auto& h : hs)
    for (std::size_t b = 0; b < h.counts.size(); ++b)
      out << h.metric_id << '\t' << b << '\t' << format_double(h.edges[b]) << '\t' << format_double(h.edges[b + 1])
          << '\t' << h.counts[b] << '\n';
}

}  // namespace tsteval
