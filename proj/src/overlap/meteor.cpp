#include <algorithm>
#include <cmath>

#include "tsteval/error.hpp"
#include "tsteval/overlap.hpp"

namespace tsteval {
namespace {

using Pair = std::pair<int, int>;

// Largest joint option space searched exhaustively per stage.
constexpr std::size_t kExhaustiveLimit = 4096;

int count_crossings(const std::vector<Pair>& pairs) {
  int n = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if ((pairs[i].first - pairs[j].first) * (pairs[i].second - pairs[j].second) < 0) ++n;
  return n;
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (r > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(r));
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return out;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Candidate and reference positions sharing one matching key. Every option
// aligns min(|cand|, |ref|) pairs order-preservingly.
struct Group {
  std::vector<int> cand;
  std::vector<int> ref;

  std::size_t option_count(std::size_t cap) const {
    const auto k = std::min(cand.size(), ref.size());
    return binomial_capped(std::max(cand.size(), ref.size()), k, cap);
  }

  std::vector<std::vector<Pair>> options() const {
    std::vector<std::vector<Pair>> out;
    const bool cand_smaller = cand.size() <= ref.size();
    const auto& small = cand_smaller ? cand : ref;
    const auto& large = cand_smaller ? ref : cand;
    for (const auto& subset : combinations(static_cast<int>(large.size()), static_cast<int>(small.size()))) {
      std::vector<Pair> pairs;
      for (std::size_t t = 0; t < small.size(); ++t) {
        const int a = small[t];
        const int b = large[subset[t]];
        pairs.emplace_back(cand_smaller ? a : b, cand_smaller ? b : a);
      }
      out.push_back(std::move(pairs));
    }
    return out;
  }

  std::vector<Pair> leftmost() const {
    std::vector<Pair> pairs;
    for (std::size_t t = 0; t < std::min(cand.size(), ref.size()); ++t) pairs.emplace_back(cand[t], ref[t]);
    return pairs;
  }
};

template <class KeyFn>
void run_stage(TokenSpan candidate, TokenSpan reference, std::vector<char>& cand_used, std::vector<char>& ref_used,
               std::vector<Pair>& matches, KeyFn&& key_of) {
  std::map<std::string, Group> by_key;
  for (std::size_t i = 0; i < candidate.size(); ++i)
    if (!cand_used[i])
      if (auto k = key_of(candidate[i])) by_key[*k].cand.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < reference.size(); ++j)
    if (!ref_used[j])
      if (auto k = key_of(reference[j])) by_key[*k].ref.push_back(static_cast<int>(j));

  std::vector<Group> groups;
  for (auto& [k, g] : by_key)
    if (!g.cand.empty() && !g.ref.empty()) groups.push_back(std::move(g));
  if (groups.empty()) return;

  std::size_t total = 1;
  for (const auto& g : groups) {
    total *= g.option_count(kExhaustiveLimit);
    if (total > kExhaustiveLimit) break;
  }

  std::vector<Pair> chosen;
  if (total <= kExhaustiveLimit) {
    std::vector<std::vector<std::vector<Pair>>> opts;
    for (const auto& g : groups) opts.push_back(g.options());
    std::vector<std::size_t> odometer(groups.size(), 0);
    int best = -1;
    for (;;) {
      std::vector<Pair> trial = matches;
      for (std::size_t g = 0; g < groups.size(); ++g)
        trial.insert(trial.end(), opts[g][odometer[g]].begin(), opts[g][odometer[g]].end());
      const int c = count_crossings(trial);
      if (best < 0 || c < best) {
        best = c;
        chosen.assign(trial.begin() + static_cast<std::ptrdiff_t>(matches.size()), trial.end());
      }
      std::size_t g = 0;
      while (g < groups.size() && ++odometer[g] == opts[g].size()) odometer[g++] = 0;
      if (g == groups.size()) break;
    }
  } else {
    // Too many joint options: decide groups one at a time against what is
    // already aligned.
    std::vector<Pair> acc = matches;
    for (const auto& g : groups) {
      std::vector<Pair> pick;
      if (g.option_count(kExhaustiveLimit) <= kExhaustiveLimit) {
        int best = -1;
        for (auto& o : g.options()) {
          auto trial = acc;
          trial.insert(trial.end(), o.begin(), o.end());
          const int c = count_crossings(trial);
          if (best < 0 || c < best) {
            best = c;
            pick = o;
          }
        }
      } else {
        pick = g.leftmost();
      }
      acc.insert(acc.end(), pick.begin(), pick.end());
    }
    chosen.assign(acc.begin() + static_cast<std::ptrdiff_t>(matches.size()), acc.end());
  }
  for (const auto& [c, r] : chosen) {
    cand_used[c] = 1;
    ref_used[r] = 1;
    matches.emplace_back(c, r);
  }
}

}  // namespace

std::optional<int> SynonymLexicon::canonical(std::string_view word) const {
  auto it = synsets.find(word);
  if (it == synsets.end() || it->second.empty()) return std::nullopt;
  return *std::min_element(it->second.begin(), it->second.end());
}

MeteorAlignment meteor_align(TokenSpan candidate, TokenSpan reference, const MeteorOptions& options) {
  std::vector<char> cu(candidate.size(), 0);
  std::vector<char> ru(reference.size(), 0);
  std::vector<Pair> matches;
  run_stage(candidate, reference, cu, ru, matches, [](const std::string& t) { return std::optional<std::string>(t); });
  if (options.stemmer)
    run_stage(candidate, reference, cu, ru, matches,
              [&](const std::string& t) { return std::optional<std::string>(options.stemmer(t)); });
  if (options.synonyms)
    run_stage(candidate, reference, cu, ru, matches, [&](const std::string& t) -> std::optional<std::string> {
      if (auto id = options.synonyms->canonical(t)) return std::to_string(*id);
      return std::nullopt;
    });

  std::sort(matches.begin(), matches.end());
  MeteorAlignment a;
  a.crossings = count_crossings(matches);
  a.matches = std::move(matches);
  if (!a.matches.empty()) {
    a.chunks = 1;
    for (std::size_t i = 1; i < a.matches.size(); ++i) {
      const bool adjacent = a.matches[i].first == a.matches[i - 1].first + 1 &&
                            a.matches[i].second == a.matches[i - 1].second + 1;
      if (!adjacent) ++a.chunks;
    }
  }
  return a;
}

double meteor(TokenSpan candidate, TokenSpan reference, const MeteorOptions& options) {
  if (candidate.empty() || reference.empty()) throw DataError("empty sequence");
  const auto a = meteor_align(candidate, reference, options);
  const double m = static_cast<double>(a.matches.size());
  if (m == 0.0) return 0.0;
  const double p = m / candidate.size();
  const double r = m / reference.size();
  const double fmean = p * r / (options.alpha * p + (1.0 - options.alpha) * r);
  const double penalty = options.gamma * std::pow(a.chunks / m, options.beta);
  return fmean * (1.0 - penalty);
}

}  // namespace tsteval
