#include "tsteval/prompts.hpp"

#include <cctype>
#include <cmath>
#include <map>

#include "tsteval/error.hpp"
#include "tsteval/text.hpp"

namespace tsteval {

std::string_view to_string(TemplateId t) {
  switch (t) {
    case TemplateId::style_likert: return "style_likert";
    case TemplateId::style_binary: return "style_binary";
    case TemplateId::content_likert: return "content_likert";
    case TemplateId::fluency_likert: return "fluency_likert";
    case TemplateId::overall_likert: return "overall_likert";
  }
  return "?";
}

TemplateId parse_template_id(std::string_view s) {
  for (auto t : kAllTemplates)
    if (to_string(t) == s) return t;
  throw ConfigError("unknown template '" + std::string(s) + "'");
}

RatingKind rating_kind(TemplateId t) {
  return t == TemplateId::style_binary ? RatingKind::binary_0_1 : RatingKind::likert_1_5;
}

Dimension template_dimension(TemplateId t) {
  switch (t) {
    case TemplateId::style_likert:
    case TemplateId::style_binary: return Dimension::style_accuracy;
    case TemplateId::content_likert: return Dimension::content_preservation;
    case TemplateId::fluency_likert: return Dimension::fluency;
    case TemplateId::overall_likert: return Dimension::overall;
  }
  return Dimension::overall;
}

std::string template_metric_id(TemplateId t) { return "llm_" + std::string(to_string(t)); }

std::pair<std::string, std::string> direction_words(std::string_view direction) {
  static const std::map<std::string, std::string, std::less<>> names = {
      {"pos", "positive"},  {"positive", "positive"}, {"neg", "negative"},     {"negative", "negative"},
      {"toxic", "toxic"},   {"clean", "non-toxic"},   {"non-toxic", "non-toxic"}, {"nontoxic", "non-toxic"},
      {"neutral", "non-toxic"}, {"detox", "non-toxic"},
  };
  std::size_t at = direction.find("\xE2\x86\x92");  // →
  std::size_t len = 3;
  if (at == std::string_view::npos) {
    at = direction.find("->");
    len = 2;
  }
  if (at == std::string_view::npos) throw DataError("direction '" + std::string(direction) + "' has no arrow");
  auto word = [&](std::string_view w) {
    const auto key = ascii_lower(trim(w));
    auto it = names.find(key);
    return it == names.end() ? key : it->second;
  };
  auto from = word(direction.substr(0, at));
  auto to = word(direction.substr(at + len));
  if (from.empty() || to.empty()) throw DataError("direction '" + std::string(direction) + "' lacks a style name");
  return {from, to};
}

namespace {

struct Wording {
  std::string task_definition;
  std::string style_likert;
  std::string style_binary;
  std::string content_likert;
  std::string transferred;   // what S2 is called
  std::string style_answer;  // answer line prefix for style prompts
};

// {D} = "<from> to <to>", {L} = language name.
const Wording& wording(const Task& task) {
  static const Wording sentiment{
      "Sentiment transfer task: transfer the sentiment of a sentence (from positive to negative or negative to "
      "positive) while keeping the rest of the sentiment-independent content unchanged.",
      "Please rate the sentiment transfer accuracy of the {D} sentiment transfer task between the following {L} "
      "source sentence S1 and the sentiment-transferred sentence S2. Use a scale of 1 to 5, where 1 indicates that "
      "the sentiment in S1 is completely identical to the sentiment in S2, and 5 indicates that the sentiment has "
      "been completely transferred to the target sentiment in S2.",
      "Please act as a binary classifier to evaluate the sentiment transfer accuracy of the {D} sentiment transfer "
      "task in {L}. Determine whether the target sentiment has been successfully transferred to the generated "
      "sentence (S2) from the source sentence (S1). If the target sentiment has been successfully transferred to "
      "S2, output '1'. If the target sentiment has not been successfully transferred to S2, output '0'.",
      "Please rate the content preservation between the following {L} source sentence S1 and the "
      "sentiment-transferred sentence S2 for the {D} sentiment transfer task on a scale of 1 to 5, where 1 "
      "indicates very low content preservation and 5 indicates very high content preservation. To determine the "
      "content preservation between these two sentences, consider only the information conveyed by the sentences "
      "and ignore any differences in sentiment due to the {D} sentiment transfer.",
      "sentiment-transferred sentence",
      "Sentiment transfer accuracy",
  };
  static const Wording detox{
      "Detoxification task: transfer the style of a sentence from toxic to non-toxic while keeping the rest of the "
      "style-independent content unchanged.",
      "Please rate the style transfer accuracy of the {D} detoxification task between the following {L} source "
      "sentence S1 and the detoxified sentence S2. Use a scale of 1 to 5, where 1 indicates that the toxicity in S1 "
      "is completely identical to the toxicity in S2, and 5 indicates that the toxicity has been completely "
      "removed in S2.",
      "Please act as a binary classifier to evaluate the style transfer accuracy of the {D} detoxification task in "
      "{L}. Determine whether the toxicity has been successfully removed in the generated sentence (S2) compared "
      "to the source sentence (S1). If the toxicity has been successfully removed in S2, output '1'. If the "
      "toxicity has not been successfully removed in S2, output '0'.",
      "Please rate the content preservation between the following {L} source sentence S1 and the detoxified "
      "sentence S2 for the {D} detoxification task on a scale of 1 to 5, where 1 indicates very low content "
      "preservation and 5 indicates very high content preservation. To determine the content preservation "
      "between these two sentences, consider only the information conveyed by the sentences and ignore any "
      "differences in toxicity due to the {D} detoxification.",
      "detoxified sentence",
      "Style transfer accuracy",
  };
  switch (task.kind) {
    case Task::Kind::sentiment_transfer: return sentiment;
    case Task::Kind::detoxification: return detox;
    case Task::Kind::other: break;
  }
  throw DataError("no prompt wording for task '" + task.tag + "'");
}

std::string fill(std::string text, const std::string& direction, const std::string& language) {
  for (auto [key, value] : {std::pair<std::string, const std::string*>{"{D}", &direction}, {"{L}", &language}}) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
      text.replace(pos, key.size(), *value);
      pos += value->size();
    }
  }
  return text;
}

std::string task_noun(const Task& task) {
  return task.kind == Task::Kind::detoxification ? "detoxification" : "sentiment transfer";
}

}  // namespace

std::string render_prompt(TemplateId t, const EvaluationInstance& inst) {
  const auto language = inst.language.display_name();
  if (inst.generated_text.empty()) throw DataError("instance '" + inst.instance_id + "' has no generated text");
  if (t == TemplateId::fluency_likert) {
    return "Please rate the fluency of the following " + language +
           " sentence S on a scale of 1 to 5, where 1 represents poor fluency, and 5 represents excellent "
           "fluency.\n\nS: " +
           inst.generated_text + "\n\nFluency rating (on a scale of 1 to 5) =";
  }
  const auto& w = wording(inst.task);
  if (inst.source_text.empty()) throw DataError("instance '" + inst.instance_id + "' has no source text");
  const auto [from, to] = direction_words(inst.direction);
  const std::string direction = from + " to " + to;
  const std::string input = "S1: " + inst.source_text + "\nS2: " + inst.generated_text;

  std::string instruction;
  std::string answer;
  std::string definition = w.task_definition;
  switch (t) {
    case TemplateId::style_likert:
      instruction = w.style_likert;
      answer = w.style_answer + " rating (on a scale of 1 to 5) =";
      break;
    case TemplateId::style_binary:
      instruction = w.style_binary;
      answer = w.style_answer + " classification (0 or 1) =";
      break;
    case TemplateId::content_likert:
      // The content prompt words the task definition without the style
      // qualifier on "content".
      if (inst.task.kind == Task::Kind::sentiment_transfer) {
        const std::string q = "sentiment-independent ";
        definition.erase(definition.find(q), q.size());
      }
      instruction = w.content_likert;
      answer = "Content Preservation rating (on a scale of 1 to 5) =";
      break;
    case TemplateId::overall_likert:
      instruction = "Please rate the overall quality of the {D} " + task_noun(inst.task) +
                    " task between the following {L} source sentence S1 and the " + w.transferred +
                    " S2 on a scale of 1 to 5, considering " +
                    (inst.task.kind == Task::Kind::detoxification ? "style transfer accuracy"
                                                                  : "sentiment transfer accuracy") +
                    ", content preservation, and fluency together, where 1 indicates very poor overall quality and "
                    "5 indicates excellent overall quality.";
      answer = "Overall quality rating (on a scale of 1 to 5) =";
      break;
    case TemplateId::fluency_likert: break;
  }
  return definition + "\n\n" + fill(instruction, direction, language) + "\n\n" + input + "\n\n" + answer;
}

std::optional<double> parse_rating(std::string_view raw, RatingKind kind) {
  auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; };
  std::optional<double> last;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (!std::isdigit(static_cast<unsigned char>(raw[i])) ||
        (i > 0 && (alnum(raw[i - 1]) || raw[i - 1] == '.'))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i]))) ++i;
    if (i + 1 < raw.size() && raw[i] == '.' && std::isdigit(static_cast<unsigned char>(raw[i + 1]))) {
      ++i;
      while (i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i]))) ++i;
    }
    if (i < raw.size() && alnum(raw[i])) {
      while (i < raw.size() && alnum(raw[i])) ++i;
      continue;
    }
    double v = std::stod(std::string(raw.substr(start, i - start)));
    if (start > 0 && raw[start - 1] == '-' && (start < 2 || !alnum(raw[start - 2]))) v = -v;
    last = v;
  }
  if (!last) return std::nullopt;
  const double v = *last;
  if (kind == RatingKind::binary_0_1) {
    if (v == 0.0 || v == 1.0) return v;
    return std::nullopt;
  }
  if (v < 1.0 || v > 5.0 || std::floor(v * 2.0) != v * 2.0) return std::nullopt;
  return v;
}

double normalize_rating(double x, RatingKind kind) { return kind == RatingKind::likert_1_5 ? (x - 1.0) / 4.0 : x; }

}  // namespace tsteval
