#include "tsteval/types.hpp"

#include "tsteval/error.hpp"

namespace tsteval {

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::style_accuracy: return "style_accuracy";
    case Dimension::content_preservation: return "content_preservation";
    case Dimension::fluency: return "fluency";
    case Dimension::overall: return "overall";
  }
  return "?";
}

std::string_view to_string(Orientation o) {
  return o == Orientation::higher_better ? "higher_better" : "lower_better";
}

std::string_view to_string(Mode m) { return m == Mode::reference_free ? "reference_free" : "reference_based"; }

Dimension parse_dimension(std::string_view s) {
  for (auto d : kAllDimensions)
    if (to_string(d) == s) return d;
  throw ConfigError("unknown dimension '" + std::string(s) + "'");
}

Orientation parse_orientation(std::string_view s) {
  if (s == "higher_better") return Orientation::higher_better;
  if (s == "lower_better") return Orientation::lower_better;
  throw ConfigError("unknown orientation '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
  if (s == "reference_free" || s == "reference-free") return Mode::reference_free;
  if (s == "reference_based" || s == "reference-based") return Mode::reference_based;
  throw ConfigError("unknown mode '" + std::string(s) + "'");
}

std::string_view to_string(Slot s) {
  switch (s) {
    case Slot::source: return "source";
    case Slot::generated: return "generated";
    case Slot::reference: return "reference";
    case Slot::source_masked: return "source_masked";
    case Slot::generated_masked: return "generated_masked";
    case Slot::reference_masked: return "reference_masked";
  }
  return "?";
}

Slot parse_slot(std::string_view s) {
  for (auto slot : {Slot::source, Slot::generated, Slot::reference, Slot::source_masked, Slot::generated_masked,
                    Slot::reference_masked})
    if (to_string(slot) == s) return slot;
  throw DataError("unknown slot '" + std::string(s) + "'");
}

Language Language::parse(std::string_view code) {
  Language l;
  l.tag = std::string(code);
  if (code == "en") l.kind = Kind::en;
  else if (code == "hi") l.kind = Kind::hi;
  else if (code == "bn") l.kind = Kind::bn;
  else if (code.empty()) throw DataError("empty language tag");
  else l.kind = Kind::other;
  return l;
}

std::string Language::display_name() const {
  switch (kind) {
    case Kind::en: return "English";
    case Kind::hi: return "Hindi";
    case Kind::bn: return "Bengali";
    case Kind::other: break;
  }
  return tag;
}

Task Task::parse(std::string_view name) {
  Task t;
  t.tag = std::string(name);
  if (name == "sentiment_transfer") t.kind = Kind::sentiment_transfer;
  else if (name == "detoxification") t.kind = Kind::detoxification;
  else if (name.empty()) throw DataError("empty task name");
  else t.kind = Kind::other;
  return t;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw DataError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace tsteval
