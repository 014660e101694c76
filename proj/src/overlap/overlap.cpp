#include <algorithm>
#include <cmath>
#include <fstream>

#include "tsteval/error.hpp"
#include "tsteval/overlap.hpp"

namespace tsteval {
namespace {

void require_non_empty(TokenSpan s) {
  if (s.empty()) throw DataError("empty sequence");
}

double f1(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

double bleu(TokenSpan candidate, TokenSpan reference, int max_n) {
  require_non_empty(candidate);
  require_non_empty(reference);
  if (max_n < 1) throw ConfigError("bleu max_n must be >= 1");
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto c = NgramProfile::build(candidate, n);
    const auto r = NgramProfile::build(reference, n);
    const int matches = c.clipped_overlap(r);
    if (n == 1) {
      if (matches == 0) return 0.0;
      log_sum += std::log(static_cast<double>(matches) / c.total);
    } else {
      log_sum += std::log((matches + 1.0) / (c.total + 1.0));
    }
  }
  const double cand_len = static_cast<double>(candidate.size());
  const double ref_len = static_cast<double>(reference.size());
  const double log_bp = std::min(0.0, 1.0 - ref_len / cand_len);
  return std::exp(log_sum / max_n + log_bp);
}

StyleLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open style lexicon " + path);
  StyleLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    auto w = trim(line);
    if (!w.empty() && w[0] != '#') lex.insert(ascii_lower(w));
  }
  return lex;
}

Tokens mask_tokens(TokenSpan sentence, const StyleLexicon& lexicon, const std::optional<std::vector<bool>>& flags) {
  if (flags && flags->size() != sentence.size()) throw DataError("mask flags length differs from token count");
  Tokens out(sentence.begin(), sentence.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool flagged = flags && (*flags)[i];
    if (flagged || (!lexicon.empty() && lexicon.count(ascii_lower(out[i])) > 0)) out[i] = std::string(kMaskToken);
  }
  return out;
}

double masked_bleu(TokenSpan candidate, TokenSpan reference, const StyleLexicon& lexicon,
                   const std::optional<std::vector<bool>>& cand_flags,
                   const std::optional<std::vector<bool>>& ref_flags, int max_n) {
  const auto c = mask_tokens(candidate, lexicon, cand_flags);
  const auto r = mask_tokens(reference, lexicon, ref_flags);
  return bleu(c, r, max_n);
}

double rouge_2(TokenSpan candidate, TokenSpan reference) {
  require_non_empty(candidate);
  require_non_empty(reference);
  const auto c = NgramProfile::build(candidate, 2);
  const auto r = NgramProfile::build(reference, 2);
  if (c.total == 0 || r.total == 0) return 0.0;
  const double m = c.clipped_overlap(r);
  return f1(m / c.total, m / r.total);
}

std::size_t lcs_length(TokenSpan a, TokenSpan b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(TokenSpan candidate, TokenSpan reference) {
  require_non_empty(candidate);
  require_non_empty(reference);
  const double lcs = static_cast<double>(lcs_length(candidate, reference));
  return f1(lcs / candidate.size(), lcs / reference.size());
}

double pinc(TokenSpan source, TokenSpan candidate, int max_n) {
  require_non_empty(candidate);
  double sum = 0.0;
  int levels = 0;
  for (int n = 1; n <= max_n; ++n) {
    const auto c = NgramProfile::build(candidate, n);
    if (c.counts.empty()) continue;
    const auto s = NgramProfile::build(source, n);
    std::size_t shared = 0;
    for (const auto& [k, cnt] : c.counts) shared += s.counts.count(k);
    sum += 1.0 - static_cast<double>(shared) / static_cast<double>(c.counts.size());
    ++levels;
  }
  return levels == 0 ? 0.0 : sum / levels;
}

}  // namespace tsteval
