#include <algorithm>

#include "tsteval/overlap.hpp"

namespace tsteval {

NgramProfile NgramProfile::build(TokenSpan tokens, int n) {
  NgramProfile p;
  p.n = n;
  if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) return p;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++p.counts[key];
    ++p.total;
  }
  return p;
}

int NgramProfile::count(const std::string& key) const {
  auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

int NgramProfile::clipped_overlap(const NgramProfile& other) const {
  int m = 0;
  for (const auto& [k, c] : counts) m += std::min(c, other.count(k));
  return m;
}

}  // namespace tsteval
