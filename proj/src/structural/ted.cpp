#include <algorithm>
#include <functional>

#include "tsteval/error.hpp"
#include "tsteval/semantic_graph.hpp"

namespace tsteval {

TedLabel parse_ted_label(std::string_view s) {
  if (s == "deprel_upos") return TedLabel::deprel_upos;
  if (s == "lemma") return TedLabel::lemma;
  throw ConfigError("unknown ted label '" + std::string(s) + "'");
}

OrderedTree ordered_tree(const DependencyTree& t, TedLabel label) {
  OrderedTree out;
  std::vector<std::vector<int>> kids(t.size() + 1);
  for (const auto& nd : t.nodes()) kids[static_cast<std::size_t>(nd.head)].push_back(nd.index);
  std::function<int(int)> visit = [&](int v) {
    int first = -1;
    for (int c : kids[static_cast<std::size_t>(v)]) {
      const int l = visit(c);
      if (first < 0) first = l;
    }
    const auto& nd = t.node(v);
    out.labels.push_back(label == TedLabel::lemma ? (nd.lemma.empty() ? nd.form : nd.lemma)
                                                  : nd.upos + "|" + nd.deprel);
    const int self = static_cast<int>(out.labels.size()) - 1;
    out.leftmost.push_back(first < 0 ? self : first);
    return out.leftmost.back();
  };
  visit(t.root());
  return out;
}

int zhang_shasha(const OrderedTree& a, const OrderedTree& b) {
  const int n = static_cast<int>(a.labels.size());
  const int m = static_cast<int>(b.labels.size());
  if (n == 0 || m == 0) return n + m;

  auto keyroots = [](const OrderedTree& t) {
    const int size = static_cast<int>(t.leftmost.size());
    std::vector<int> kr;
    for (int i = 0; i < size; ++i) {
      bool highest = true;
      for (int j = i + 1; j < size; ++j)
        if (t.leftmost[j] == t.leftmost[i]) {
          highest = false;
          break;
        }
      if (highest) kr.push_back(i);
    }
    return kr;
  };
  const auto kr1 = keyroots(a);
  const auto kr2 = keyroots(b);

  std::vector<int> td(static_cast<std::size_t>(n * m), 0);
  std::vector<int> fd(static_cast<std::size_t>((n + 1) * (m + 1)), 0);
  for (int i : kr1) {
    for (int j : kr2) {
      const int li = a.leftmost[i];
      const int lj = b.leftmost[j];
      const int rows = i - li + 2;
      const int cols = j - lj + 2;
      auto F = [&](int x, int y) -> int& { return fd[static_cast<std::size_t>(x * cols + y)]; };
      F(0, 0) = 0;
      for (int x = 1; x < rows; ++x) F(x, 0) = F(x - 1, 0) + 1;
      for (int y = 1; y < cols; ++y) F(0, y) = F(0, y - 1) + 1;
      for (int x = 1; x < rows; ++x) {
        const int ni = li + x - 1;
        for (int y = 1; y < cols; ++y) {
          const int nj = lj + y - 1;
          if (a.leftmost[ni] == li && b.leftmost[nj] == lj) {
            const int rename = a.labels[ni] == b.labels[nj] ? 0 : 1;
            F(x, y) = std::min({F(x - 1, y) + 1, F(x, y - 1) + 1, F(x - 1, y - 1) + rename});
            td[static_cast<std::size_t>(ni * m + nj)] = F(x, y);
          } else {
            const int px = a.leftmost[ni] - li;
            const int py = b.leftmost[nj] - lj;
            F(x, y) = std::min({F(x - 1, y) + 1, F(x, y - 1) + 1,
                                F(px, py) + td[static_cast<std::size_t>(ni * m + nj)]});
          }
        }
      }
    }
  }
  return td[static_cast<std::size_t>((n - 1) * m + (m - 1))];
}

TedResult ted(const DependencyTree& t1, const DependencyTree& t2, TedLabel label) {
  if (t1.size() == 0 || t2.size() == 0) throw DataError("empty dependency tree");
  TedResult r;
  r.raw = zhang_shasha(ordered_tree(t1, label), ordered_tree(t2, label));
  r.normalized = static_cast<double>(r.raw) / static_cast<double>(std::max(t1.size(), t2.size()));
  return r;
}

}  // namespace tsteval
