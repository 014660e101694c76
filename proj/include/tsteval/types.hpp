#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsteval {

enum class Dimension { style_accuracy, content_preservation, fluency, overall };
enum class Orientation { higher_better, lower_better };
enum class Mode { reference_free, reference_based };

inline constexpr Dimension kAllDimensions[] = {Dimension::style_accuracy, Dimension::content_preservation,
                                               Dimension::fluency, Dimension::overall};

std::string_view to_string(Dimension d);
std::string_view to_string(Orientation o);
std::string_view to_string(Mode m);
// Parsers throw ConfigError on unknown names. Modes accept both
// "reference_free" and the CLI spelling "reference-free".
Dimension parse_dimension(std::string_view s);
Orientation parse_orientation(std::string_view s);
Mode parse_mode(std::string_view s);

/// Which sentence of an instance an artifact belongs to. Masked slots carry
/// adapter-computed embeddings of style-masked sentences.
enum class Slot { source, generated, reference, source_masked, generated_masked, reference_masked };

std::string_view to_string(Slot s);
Slot parse_slot(std::string_view s);  // throws DataError

struct Language {
  enum class Kind { en, hi, bn, other };
  Kind kind = Kind::en;
  std::string tag = "en";

  static Language parse(std::string_view code);
  /// Display name used in prompts ("English", "Hindi", "Bengali", else the tag).
  std::string display_name() const;
  bool operator==(const Language& o) const { return tag == o.tag; }
};

struct Task {
  enum class Kind { sentiment_transfer, detoxification, other };
  Kind kind = Kind::sentiment_transfer;
  std::string tag = "sentiment_transfer";

  static Task parse(std::string_view name);
  bool operator==(const Task& o) const { return tag == o.tag; }
};

struct RatingScale {
  double min = 1.0;
  double max = 5.0;
  bool contains(double v) const { return v >= min && v <= max; }
  bool operator==(const RatingScale&) const = default;
};

struct EvaluationInstance {
  std::string instance_id;
  Language language;
  Task task;
  std::string direction;
  std::string system_id;
  std::string source_text;
  std::string generated_text;
  std::optional<std::string> reference_text;
  int target_style_label = 0;
  std::map<Dimension, double> human_ratings;

  bool operator==(const EvaluationInstance&) const = default;
};

struct SentenceRef {
  std::string instance_id;
  Slot slot = Slot::source;
  auto operator<=>(const SentenceRef&) const = default;
};

struct StyleDistribution {
  SentenceRef ref;
  std::vector<std::string> class_labels;
  std::vector<double> probs;
};

/// Dense row-major matrix of reals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct TokenAnnotation {
  SentenceRef ref;
  std::vector<std::string> tokens;
  std::optional<Matrix> embeddings;
  std::optional<std::vector<double>> sentence_embedding;
  std::optional<std::vector<double>> idf;
  std::optional<std::vector<bool>> mask_flags;
};

struct ExternalScore {
  std::string instance_id;
  std::string metric_id;
  double value = 0.0;
};

}  // namespace tsteval
