#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsteval/forest.hpp"
#include "tsteval/registry.hpp"
#include "tsteval/score_table.hpp"

namespace tsteval {

enum class Provenance { simulation, learned };
std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view s);

struct HybridModel {
  Dimension dimension = Dimension::content_preservation;
  std::array<std::string, 3> metrics;
  std::array<double, 3> weights{};
  Provenance provenance = Provenance::simulation;
  std::string split = "hash50";

  bool operator==(const HybridModel&) const = default;
};

/// Deterministic 50/50 split: rows ordered by FNV-1a of the instance id
/// (id as tie-break); the first ceil(n/2) form the tuning half.
struct TuningSplit {
  std::vector<std::size_t> tuning;
  std::vector<std::size_t> held_out;
};
TuningSplit hash_split(const std::vector<std::string>& row_ids);

/// Columns of `table` usable as components for `dimension`: registered for
/// that dimension and not themselves a hybrid or overall score.
std::vector<std::string> component_metrics(const ScoreTable& table, const Registry& registry, Dimension dimension);

/// Simplex points (i, j, N-i-j) / N for N = 1/step, in lexicographic order.
/// Throws ConfigError unless 1/step is a positive integer.
std::vector<std::array<double, 3>> simplex_grid(double step);

struct SimulationOptions {
  double grid_step = 0.05;
  std::size_t min_tuning_rows = 10;
};

/// `oriented` holds normalized values; `human` is aligned with its rows and
/// `rows` selects the tuning split. Throws DataError for fewer than 3 usable
/// metrics or fewer than min_tuning_rows complete tuning rows.
HybridModel fit_hybrid_simulation(const ScoreTable& oriented, std::span<const std::optional<double>> human,
                                  Dimension dimension, const Registry& registry, std::span<const std::size_t> rows,
                                  const SimulationOptions& options = {});

/// Pearson of the weighted geometric mean against `human` over complete
/// rows in `rows`. Null when degenerate.
std::optional<double> hybrid_pearson(const ScoreTable& oriented, std::span<const std::optional<double>> human,
                                     const std::array<std::string, 3>& metrics, const std::array<double, 3>& weights,
                                     std::span<const std::size_t> rows);

/// Top-3 features by importance; ties broken by metric id and logged.
HybridModel fit_hybrid_learned(const ForestModel& forest, const std::vector<std::string>& feature_ids,
                               Dimension dimension);

struct LearnedFit {
  ForestModel forest;
  std::vector<std::string> feature_ids;
  HybridModel model;
  std::size_t rows_used = 0;
};

/// Fits the forest on the complete rows among `rows` (rows with any null
/// feature or target are dropped and logged; at least 20 must remain).
LearnedFit fit_learned_from_table(const ScoreTable& oriented, std::span<const std::optional<double>> human,
                                  Dimension dimension, const Registry& registry, std::span<const std::size_t> rows,
                                  const ForestOptions& options);

/// Weighted geometric mean of the components; null if any is missing.
std::optional<double> apply_hybrid(const HybridModel& model, std::span<const std::optional<double>> values);
ScoreColumn apply_hybrid(const HybridModel& model, const ScoreTable& oriented);

/// (s * c * f)^(1/3).
double overall_score(double style, double content, double fluency);

/// Text form: "dimension <d>", "provenance <p>", "split <s>" and three
/// "metric <id> <weight>" lines; '#' starts a comment. Weights that do not
/// sum to 1 are renormalized with a warning.
void write_hybrid_model(std::ostream& out, const HybridModel& m);
HybridModel read_hybrid_model(std::istream& in);
HybridModel load_hybrid_model(const std::string& path);

struct OverallPreset {
  std::string name;
  std::string style;
  std::string content;
  std::string fluency;
};

/// Built-in overall presets "existing", "ours1", "ours2" for the
/// task/language pairs of the shipped tables.
OverallPreset overall_preset(std::string_view name, const Task& task, const Language& language);

}  // namespace tsteval
