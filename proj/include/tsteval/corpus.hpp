#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsteval/types.hpp"

namespace tsteval {

/// A loaded evaluation set. Immutable once built; safe to share across threads.
class Dataset {
 public:
  Dataset() = default;
  /// Throws DataError on duplicate ids or ratings outside their declared scale.
  Dataset(std::map<Dimension, RatingScale> scales, std::vector<EvaluationInstance> instances);

  const std::vector<EvaluationInstance>& instances() const { return instances_; }
  const std::map<Dimension, RatingScale>& rating_scales() const { return scales_; }
  const EvaluationInstance* find(std::string_view id) const;
  std::size_t size() const { return instances_.size(); }
  std::vector<std::string> ids() const;

  bool operator==(const Dataset& o) const { return scales_ == o.scales_ && instances_ == o.instances_; }

 private:
  std::map<Dimension, RatingScale> scales_;
  std::vector<EvaluationInstance> instances_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Reads `dataset.jsonl`: a header record {"rating_scales": {dim: {"min","max"}}}
/// followed by one instance per line. Errors name the line number and field.
Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::istream& in);
void write_dataset(std::ostream& out, const Dataset& dataset);

struct SideArtifactPaths {
  std::optional<std::filesystem::path> style_dists;
  std::optional<std::filesystem::path> tokens;
  std::optional<std::filesystem::path> external_scores;
};

struct SideArtifacts {
  std::map<SentenceRef, StyleDistribution> distributions;
  std::map<SentenceRef, TokenAnnotation> tokens;
  std::vector<ExternalScore> external_scores;

  const StyleDistribution* distribution(const std::string& id, Slot slot) const;
  const TokenAnnotation* annotation(const std::string& id, Slot slot) const;
};

/// Loads and validates every supplied artifact file against the dataset:
/// dangling instance ids, probability sums, embedding shapes and class-order
/// consistency are all rejected with DataError.
SideArtifacts load_side_artifacts(const Dataset& dataset, const SideArtifactPaths& paths);

// Stream-level parsers used by load_side_artifacts; exposed for tests.
std::vector<StyleDistribution> parse_style_dists(std::istream& in);
std::vector<TokenAnnotation> parse_tokens(std::istream& in);
std::vector<ExternalScore> parse_external_scores(std::istream& in);
void validate_side_artifacts(const Dataset& dataset, SideArtifacts& artifacts);

void write_style_dists(std::ostream& out, const std::vector<StyleDistribution>& dists);
void write_tokens(std::ostream& out, const std::vector<TokenAnnotation>& tokens);
void write_external_scores(std::ostream& out, const std::vector<ExternalScore>& scores);

}  // namespace tsteval
