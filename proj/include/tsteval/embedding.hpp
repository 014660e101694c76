#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsteval/score_table.hpp"
#include "tsteval/types.hpp"

namespace tsteval {

/// Token vectors of one sentence plus transport weights (uniform unless set).
struct EmbeddedSentence {
  std::vector<std::string> tokens;
  Matrix vectors;
  std::vector<double> weights;
  std::optional<std::vector<double>> idf;
  std::optional<std::vector<double>> sentence_vector;

  /// Uniform weights over the annotation's tokens. Throws DataError when the
  /// annotation carries no token embeddings.
  static EmbeddedSentence from_annotation(const TokenAnnotation& annotation);
  static EmbeddedSentence uniform(Matrix vectors);
  std::size_t size() const { return vectors.rows(); }
  std::size_t dim() const { return vectors.cols(); }
};

double sentence_cosine(std::span<const double> a, std::span<const double> b);

struct WmdResult {
  double value = 0.0;
  bool approximate = false;  // true when the relaxed bound replaced the exact solve
};

inline constexpr std::size_t kWmdDefaultCellCap = 4096;

/// Word mover's distance with Euclidean ground cost. Exact transport while
/// |a|*|b| <= cell_cap, otherwise the relaxed lower bound (flagged).
WmdResult wmd(const EmbeddedSentence& a, const EmbeddedSentence& b, std::size_t cell_cap = kWmdDefaultCellCap);
/// max(row-relaxed, column-relaxed) WMD: each side ships to its nearest neighbour.
double relaxed_wmd(const EmbeddedSentence& a, const EmbeddedSentence& b);

struct BertScoreResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Greedy cosine matching; IDF weights normalised per sentence when use_idf.
BertScoreResult bert_score(const EmbeddedSentence& candidate, const EmbeddedSentence& reference, bool use_idf);

}  // namespace tsteval
