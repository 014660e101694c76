#include "tsteval/ensemble.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tsteval/correlation.hpp"
#include "tsteval/error.hpp"
#include "tsteval/hashing.hpp"
#include "tsteval/text.hpp"

namespace tsteval {

std::string_view to_string(Provenance p) { return p == Provenance::simulation ? "simulation" : "learned"; }

Provenance parse_provenance(std::string_view s) {
  if (s == "simulation") return Provenance::simulation;
  if (s == "learned") return Provenance::learned;
  throw DataError("unknown provenance '" + std::string(s) + "'");
}

TuningSplit hash_split(const std::vector<std::string>& row_ids) {
  std::vector<std::size_t> order(row_ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ha = fnv1a64(row_ids[a]);
    const auto hb = fnv1a64(row_ids[b]);
    return ha != hb ? ha < hb : row_ids[a] < row_ids[b];
  });
  TuningSplit s;
  const std::size_t half = (order.size() + 1) / 2;
  s.tuning.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
  s.held_out.assign(order.begin() + static_cast<std::ptrdiff_t>(half), order.end());
  std::sort(s.tuning.begin(), s.tuning.end());
  std::sort(s.held_out.begin(), s.held_out.end());
  return s;
}

std::vector<std::string> component_metrics(const ScoreTable& table, const Registry& registry, Dimension dimension) {
  std::vector<std::string> out;
  for (const auto& c : table.columns()) {
    const auto* d = registry.find(c.metric_id);
    if (!d || d->dimension != dimension) continue;
    const auto base = base_metric_id(c.metric_id);
    if (base.starts_with("hybrid_") || base.starts_with("overall_")) continue;
    out.push_back(c.metric_id);
  }
  return out;
}

std::vector<std::array<double, 3>> simplex_grid(double step) {
  if (!(step > 0.0) || step > 1.0) throw ConfigError("grid step must be in (0, 1]");
  const double inv = 1.0 / step;
  const long n = std::lround(inv);
  if (std::abs(inv - static_cast<double>(n)) > 1e-9) throw ConfigError("1 / grid step must be an integer");
  std::vector<std::array<double, 3>> out;
  for (long i = 0; i <= n; ++i)
    for (long j = 0; i + j <= n; ++j) {
      const long k = n - i - j;
      out.push_back({static_cast<double>(i) / static_cast<double>(n), static_cast<double>(j) / static_cast<double>(n),
                     static_cast<double>(k) / static_cast<double>(n)});
    }
  return out;
}

namespace {

double weighted_gm(const std::array<double, 3>& v, const std::array<double, 3>& w) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double r = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (w[i] == 0.0) continue;
    r *= std::pow(v[i], w[i]);
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
  }
  if (lo > hi) return 1.0;
  // The mean lies between its components; keep rounding from leaving them.
  return std::clamp(r, lo, hi);
}

struct Rows3 {
  std::vector<std::array<double, 3>> values;
  std::vector<double> human;
};

Rows3 complete_rows(const ScoreTable& t, std::span<const std::optional<double>> human,
                    const std::array<std::string, 3>& metrics, std::span<const std::size_t> rows) {
  std::array<std::size_t, 3> cols{};
  for (std::size_t k = 0; k < 3; ++k) cols[k] = t.column_index(metrics[k]);
  Rows3 r;
  for (auto i : rows) {
    if (!human[i]) continue;
    std::array<double, 3> v{};
    bool ok = true;
    for (std::size_t k = 0; k < 3 && ok; ++k) {
      const auto x = t.at(i, cols[k]);
      if (!x) ok = false;
      else v[k] = *x;
    }
    if (!ok) continue;
    r.values.push_back(v);
    r.human.push_back(*human[i]);
  }
  return r;
}

std::optional<double> pearson_of(const Rows3& r, const std::array<double, 3>& w) {
  std::vector<double> h(r.values.size());
  for (std::size_t i = 0; i < r.values.size(); ++i) h[i] = weighted_gm(r.values[i], w);
  return pearson(h, r.human).value;
}

}  // namespace

std::optional<double> hybrid_pearson(const ScoreTable& oriented, std::span<const std::optional<double>> human,
                                     const std::array<std::string, 3>& metrics, const std::array<double, 3>& weights,
                                     std::span<const std::size_t> rows) {
  return pearson_of(complete_rows(oriented, human, metrics, rows), weights);
}

HybridModel fit_hybrid_simulation(const ScoreTable& oriented, std::span<const std::optional<double>> human,
                                  Dimension dimension, const Registry& registry, std::span<const std::size_t> rows,
                                  const SimulationOptions& options) {
  if (human.size() != oriented.num_rows()) throw DataError("human ratings not aligned with the score table");
  struct Cand {
    std::string id;
    double abs_r;
  };
  std::vector<Cand> cands;
  for (const auto& id : component_metrics(oriented, registry, dimension)) {
    const auto col = oriented.column(id);
    std::vector<std::optional<double>> x, h;
    for (auto i : rows) {
      x.push_back(col[i]);
      h.push_back(human[i]);
    }
    const auto p = paired(x, h);
    const auto c = pearson(p.x, p.y);
    if (!c.value) {
      spdlog::info("simulation: skipping {} ({})", id, c.reason);
      continue;
    }
    cands.push_back({id, std::abs(*c.value)});
  }
  if (cands.size() < 3)
    throw DataError("hybrid simulation needs at least 3 usable " + std::string(to_string(dimension)) + " metrics, got " +
                    std::to_string(cands.size()));
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.abs_r != b.abs_r ? a.abs_r > b.abs_r : a.id < b.id;
  });

  HybridModel m;
  m.dimension = dimension;
  m.provenance = Provenance::simulation;
  for (std::size_t k = 0; k < 3; ++k) m.metrics[k] = cands[k].id;
  const auto data = complete_rows(oriented, human, m.metrics, rows);
  if (data.values.size() < options.min_tuning_rows)
    throw DataError("tuning split has " + std::to_string(data.values.size()) + " complete rows, need " +
                    std::to_string(options.min_tuning_rows));

  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& w : simplex_grid(options.grid_step)) {
    const auto r = pearson_of(data, w);
    if (!r) continue;
    if (*r > best) {
      best = *r;
      m.weights = w;
      found = true;
    }
  }
  if (!found) throw DataError("every grid point gives a degenerate hybrid");
  return m;
}

HybridModel fit_hybrid_learned(const ForestModel& forest, const std::vector<std::string>& feature_ids,
                               Dimension dimension) {
  if (feature_ids.size() != forest.importances.size()) throw Error("feature ids do not match the forest");
  if (feature_ids.size() < 3) throw DataError("hybrid learned needs at least 3 features");
  std::vector<std::size_t> order(feature_ids.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& imp = forest.importances;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return imp[a] != imp[b] ? imp[a] > imp[b] : feature_ids[a] < feature_ids[b];
  });
  for (std::size_t k = 0; k + 1 < order.size(); ++k)
    if (imp[order[k]] == imp[order[k + 1]] && k < 3)
      spdlog::info("learned: importance tie between {} and {} broken by metric id", feature_ids[order[k]],
                   feature_ids[order[k + 1]]);
  HybridModel m;
  m.dimension = dimension;
  m.provenance = Provenance::learned;
  double total = 0.0;
  for (std::size_t k = 0; k < 3; ++k) total += imp[order[k]];
  for (std::size_t k = 0; k < 3; ++k) {
    m.metrics[k] = feature_ids[order[k]];
    m.weights[k] = total > 0.0 ? imp[order[k]] / total : 1.0 / 3.0;
  }
  return m;
}

LearnedFit fit_learned_from_table(const ScoreTable& oriented, std::span<const std::optional<double>> human,
                                  Dimension dimension, const Registry& registry, std::span<const std::size_t> rows,
                                  const ForestOptions& options) {
  LearnedFit fit;
  fit.feature_ids = component_metrics(oriented, registry, dimension);
  if (fit.feature_ids.size() < 3) throw DataError("hybrid learned needs at least 3 features");
  std::vector<std::size_t> cols;
  for (const auto& id : fit.feature_ids) cols.push_back(oriented.column_index(id));
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  std::size_t dropped = 0;
  for (auto i : rows) {
    std::vector<double> row;
    bool ok = human[i].has_value();
    for (std::size_t c = 0; c < cols.size() && ok; ++c) {
      const auto v = oriented.at(i, cols[c]);
      if (!v) ok = false;
      else row.push_back(*v);
    }
    if (!ok) {
      ++dropped;
      continue;
    }
    x.push_back(std::move(row));
    y.push_back(*human[i]);
  }
  if (dropped) spdlog::info("learned: dropped {} rows with null features or ratings", dropped);
  if (x.size() < 20) throw DataError("random forest needs at least 20 complete rows, got " + std::to_string(x.size()));
  fit.rows_used = x.size();
  fit.forest = fit_random_forest(Matrix::from_rows(x), y, options);
  fit.model = fit_hybrid_learned(fit.forest, fit.feature_ids, dimension);
  return fit;
}

std::optional<double> apply_hybrid(const HybridModel& model, std::span<const std::optional<double>> values) {
  if (values.size() != 3) throw Error("hybrid needs 3 component values");
  std::array<double, 3> v{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!values[k]) return std::nullopt;
    v[k] = *values[k];
  }
  return weighted_gm(v, model.weights);
}

ScoreColumn apply_hybrid(const HybridModel& model, const ScoreTable& oriented) {
  std::array<std::size_t, 3> cols{};
  for (std::size_t k = 0; k < 3; ++k) cols[k] = oriented.column_index(model.metrics[k]);
  ScoreColumn out(oriented.num_rows());
  for (std::size_t i = 0; i < oriented.num_rows(); ++i) {
    const std::array<std::optional<double>, 3> v{oriented.at(i, cols[0]), oriented.at(i, cols[1]),
                                                 oriented.at(i, cols[2])};
    out[i] = apply_hybrid(model, v);
  }
  return out;
}

double overall_score(double style, double content, double fluency) {
  const double g = std::cbrt(style * content * fluency);
  // Never above the arithmetic mean, whatever the cube root rounds to.
  return std::min(g, (style + content + fluency) / 3.0);
}

void write_hybrid_model(std::ostream& out, const HybridModel& m) {
  out << "# tsteval hybrid model\n"
      << "dimension " << to_string(m.dimension) << "\nprovenance " << to_string(m.provenance) << "\nsplit "
      << m.split << '\n';
  for (std::size_t k = 0; k < 3; ++k) out << "metric " << m.metrics[k] << ' ' << format_double(m.weights[k]) << '\n';
}

HybridModel read_hybrid_model(std::istream& in) {
  HybridModel m;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_metrics = 0;
  bool has_dim = false;
  auto fail = [&](const std::string& msg) -> DataError {
    return DataError("hybrid model line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string key;
    ls >> key;
    if (key == "dimension") {
      std::string v;
      ls >> v;
      try {
        m.dimension = parse_dimension(v);
      } catch (const Error& e) {
        throw fail(e.what());
      }
      has_dim = true;
    } else if (key == "provenance") {
      std::string v;
      ls >> v;
      m.provenance = parse_provenance(v);
    } else if (key == "split") {
      ls >> m.split;
    } else if (key == "metric") {
      std::string id, w;
      ls >> id >> w;
      if (id.empty() || w.empty()) throw fail("expected 'metric <id> <weight>'");
      if (n_metrics == 3) throw fail("more than 3 metrics");
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw fail("bad weight '" + w + "'");
      }
      if (!(v >= 0.0) || !std::isfinite(v)) throw fail("weight must be finite and >= 0");
      m.metrics[n_metrics] = id;
      m.weights[n_metrics] = v;
      ++n_metrics;
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }
  if (!has_dim) throw DataError("hybrid model lacks a dimension");
  if (n_metrics != 3) throw DataError("hybrid model needs exactly 3 metrics, got " + std::to_string(n_metrics));
  const double sum = m.weights[0] + m.weights[1] + m.weights[2];
  if (!(sum > 0.0)) throw DataError("hybrid model weights sum to 0");
  if (std::abs(sum - 1.0) > 1e-9) {
    spdlog::warn("hybrid model weights sum to {}; renormalized", sum);
    for (auto& w : m.weights) w /= sum;
  }
  return m;
}

HybridModel load_hybrid_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_hybrid_model(in);
}

}  // namespace tsteval
