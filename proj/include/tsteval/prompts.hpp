#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsteval/types.hpp"

namespace tsteval {

enum class TemplateId { style_likert, style_binary, content_likert, fluency_likert, overall_likert };
enum class RatingKind { likert_1_5, binary_0_1 };

inline constexpr TemplateId kAllTemplates[] = {TemplateId::style_likert, TemplateId::style_binary,
                                               TemplateId::content_likert, TemplateId::fluency_likert,
                                               TemplateId::overall_likert};

std::string_view to_string(TemplateId t);
TemplateId parse_template_id(std::string_view s);  // throws ConfigError
RatingKind rating_kind(TemplateId t);
Dimension template_dimension(TemplateId t);
/// Registry id of the judged column, e.g. "llm_style_likert".
std::string template_metric_id(TemplateId t);

/// "pos→neg" / "pos->neg" to ("positive", "negative"); unknown style names
/// pass through unchanged. Throws DataError when no arrow is present.
std::pair<std::string, std::string> direction_words(std::string_view direction);

/// Evaluation prompt for one instance: paragraphs separated by a blank line,
/// S1 and S2 on their own lines. Throws DataError for tasks without wording
/// or missing texts.
std::string render_prompt(TemplateId t, const EvaluationInstance& instance);

/// Last standalone number in `raw` if it is a valid rating for `kind`
/// (Likert: 1..5 in steps of 0.5, binary: 0 or 1).
std::optional<double> parse_rating(std::string_view raw, RatingKind kind);

/// (x - 1) / 4 for Likert ratings; binary ones pass through.
double normalize_rating(double x, RatingKind kind);

}  // namespace tsteval
