#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsteval/text.hpp"

namespace tsteval {

using TokenSpan = std::span<const std::string>;

/// Multiset of n-grams of one arity.
struct NgramProfile {
  int n = 1;
  std::unordered_map<std::string, int> counts;  // key: tokens joined by U+001F
  int total = 0;                                // number of n-gram occurrences

  static NgramProfile build(TokenSpan tokens, int n);
  int count(const std::string& key) const;
  /// Sum over n-grams of min(this count, other count).
  int clipped_overlap(const NgramProfile& other) const;
};

/// Sentence BLEU. Uniform weights over 1..max_n, add-one smoothing for n >= 2,
/// zero when no unigram matches, brevity penalty exp(min(0, 1 - |ref|/|cand|)).
double bleu(TokenSpan candidate, TokenSpan reference, int max_n = 4);

inline constexpr std::string_view kMaskToken = "\xE2\x9F\xA8MASK\xE2\x9F\xA9";  // "⟨MASK⟩"

/// Style lexicon: lowercase surface forms, one per line in the file form.
using StyleLexicon = std::set<std::string, std::less<>>;
StyleLexicon load_lexicon(const std::string& path);

/// Replaces lexicon hits (ASCII case-folded) and flagged tokens by kMaskToken.
Tokens mask_tokens(TokenSpan sentence, const StyleLexicon& lexicon,
                   const std::optional<std::vector<bool>>& flags = std::nullopt);

/// BLEU over masked copies of both sentences.
double masked_bleu(TokenSpan candidate, TokenSpan reference, const StyleLexicon& lexicon,
                   const std::optional<std::vector<bool>>& cand_flags = std::nullopt,
                   const std::optional<std::vector<bool>>& ref_flags = std::nullopt, int max_n = 4);

/// Bigram-overlap F1.
double rouge_2(TokenSpan candidate, TokenSpan reference);
/// Longest-common-subsequence F1.
double rouge_l(TokenSpan candidate, TokenSpan reference);
std::size_t lcs_length(TokenSpan a, TokenSpan b);

using Stemmer = std::function<std::string(std::string_view)>;

/// Word -> synonym-set ids. Two words match in the synonym stage when their
/// smallest set ids coincide.
struct SynonymLexicon {
  std::map<std::string, std::vector<int>, std::less<>> synsets;
  std::optional<int> canonical(std::string_view word) const;
};

struct MeteorOptions {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
  Stemmer stemmer;                          // stage 2 runs only when set
  const SynonymLexicon* synonyms = nullptr;  // stage 3 runs only when set
};

struct MeteorAlignment {
  std::vector<std::pair<int, int>> matches;  // (candidate index, reference index), sorted by candidate
  int chunks = 0;
  int crossings = 0;
};

MeteorAlignment meteor_align(TokenSpan candidate, TokenSpan reference, const MeteorOptions& options = {});
double meteor(TokenSpan candidate, TokenSpan reference, const MeteorOptions& options = {});

/// Porter (1980) suffix stripper for English.
std::string porter_stem(std::string_view word);

struct TerOptions {
  bool enable_shifts = true;
  int max_shift_size = 10;
};

struct TerResult {
  double score = 0.0;
  int edits = 0;   // shifts + remaining word edits
  int shifts = 0;
};

TerResult ter_detailed(TokenSpan candidate, TokenSpan reference, const TerOptions& options = {});
double ter(TokenSpan candidate, TokenSpan reference, bool enable_shifts = true);
/// Word-level Levenshtein distance (unit costs).
int word_edit_distance(std::span<const int> a, std::span<const int> b);

/// Mean n-gram novelty of the candidate relative to the source over 1..max_n,
/// skipping levels where the candidate has no n-grams.
double pinc(TokenSpan source, TokenSpan candidate, int max_n = 4);

}  // namespace tsteval
