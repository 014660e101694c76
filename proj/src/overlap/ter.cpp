#include <algorithm>
#include <unordered_map>

#include "tsteval/error.hpp"
#include "tsteval/overlap.hpp"

namespace tsteval {

int word_edit_distance(std::span<const int> a, std::span<const int> b) {
  std::vector<int> prev(b.size() + 1);
  std::vector<int> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

// Moves hyp[start, start+len) so that it begins at `target` in the sequence
// that remains after removing it.
std::vector<int> apply_shift(const std::vector<int>& hyp, int start, int len, int target) {
  std::vector<int> rest;
  rest.reserve(hyp.size());
  rest.insert(rest.end(), hyp.begin(), hyp.begin() + start);
  rest.insert(rest.end(), hyp.begin() + start + len, hyp.end());
  std::vector<int> out;
  out.reserve(hyp.size());
  out.insert(out.end(), rest.begin(), rest.begin() + target);
  out.insert(out.end(), hyp.begin() + start, hyp.begin() + start + len);
  out.insert(out.end(), rest.begin() + target, rest.end());
  return out;
}

}  // namespace

TerResult ter_detailed(TokenSpan candidate, TokenSpan reference, const TerOptions& options) {
  if (reference.empty()) throw DataError("empty sequence");
  std::unordered_map<std::string, int> vocab;
  auto id = [&](const std::string& w) { return vocab.emplace(w, static_cast<int>(vocab.size())).first->second; };
  std::vector<int> hyp;
  std::vector<int> ref;
  for (const auto& w : candidate) hyp.push_back(id(w));
  for (const auto& w : reference) ref.push_back(id(w));

  int distance = word_edit_distance(hyp, ref);
  int shifts = 0;
  if (options.enable_shifts) {
    const int n = static_cast<int>(hyp.size());
    for (;;) {
      // A shift costs one edit, so it must lower the distance by at least two.
      int best_distance = distance - 1;
      std::vector<int> best;
      for (int start = 0; start < n; ++start) {
        for (int len = 1; len <= std::min(options.max_shift_size, n - start); ++len) {
          for (int target = 0; target <= n - len; ++target) {
            if (target == start) continue;
            auto shifted = apply_shift(hyp, start, len, target);
            const int d = word_edit_distance(shifted, ref);
            if (d < best_distance) {
              best_distance = d;
              best = std::move(shifted);
            }
          }
        }
      }
      if (best.empty()) break;
      hyp = std::move(best);
      distance = best_distance;
      ++shifts;
    }
  }
  TerResult r;
  r.shifts = shifts;
  r.edits = shifts + distance;
  r.score = static_cast<double>(r.edits) / static_cast<double>(reference.size());
  return r;
}

double ter(TokenSpan candidate, TokenSpan reference, bool enable_shifts) {
  TerOptions o;
  o.enable_shifts = enable_shifts;
  return ter_detailed(candidate, reference, o).score;
}

}  // namespace tsteval
