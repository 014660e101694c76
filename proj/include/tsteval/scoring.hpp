#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsteval/corpus.hpp"
#include "tsteval/embedding.hpp"
#include "tsteval/overlap.hpp"
#include "tsteval/registry.hpp"
#include "tsteval/score_table.hpp"
#include "tsteval/semantic_graph.hpp"
#include "tsteval/style.hpp"

namespace tsteval {

struct ScoringInputs {
  const Dataset* dataset = nullptr;
  const SideArtifacts* artifacts = nullptr;
  const std::map<SentenceRef, DependencyTree>* parses = nullptr;
  const std::map<SentenceRef, SemanticGraph>* amr = nullptr;
  const StyleLexicon* lexicon = nullptr;
  const SynonymLexicon* synonyms = nullptr;
};

struct ScoringOptions {
  Mode mode = Mode::reference_free;
  std::vector<std::string> metrics;
  std::uint64_t seed = 0;
  int workers = 1;
  int smatch_restarts = 4;
  bool smatch_drop_punct = true;
  TedLabel ted_label = TedLabel::deprel_upos;
  std::size_t wmd_cell_cap = kWmdDefaultCellCap;
  KlDirection kl_direction = KlDirection::source_to_generated;
  int bleu_max_n = 4;
  int pinc_max_n = 4;
  bool english_stemming = true;  // Porter stage of METEOR for English rows
};

struct MetricDiagnostics {
  std::size_t nulls = 0;
  std::map<std::string, std::size_t> reasons;  // reason -> rows
  std::size_t approximate = 0;                 // relaxed WMD fallbacks
};

struct ScoringResult {
  ScoreTable table;
  std::map<std::string, MetricDiagnostics> diagnostics;
  bool has_nulls() const;
};

/// Checks every requested id before any work: unknown ids, ids produced by
/// other commands (hybrids, overall) and unsupported modes throw ConfigError.
void validate_metric_request(const std::vector<std::string>& metrics, const Registry& registry, Mode mode);

/// Scores every instance of the dataset. Missing inputs and per-row data
/// errors become nulls with a logged reason; the run never aborts on them.
ScoringResult score_dataset(const ScoringInputs& in, const ScoringOptions& opt, const Registry& registry);

}  // namespace tsteval
