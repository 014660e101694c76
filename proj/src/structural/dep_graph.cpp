#include "tsteval/semantic_graph.hpp"
#include "tsteval/text.hpp"

namespace tsteval {

SemanticGraph dep_to_amr_style(const DependencyTree& tree, bool drop_punct) {
  const int n = static_cast<int>(tree.size());
  std::vector<char> keep(static_cast<std::size_t>(n) + 1, 1);
  if (drop_punct)
    for (const auto& nd : tree.nodes())
      if (nd.deprel == "punct" && nd.index != tree.root()) keep[static_cast<std::size_t>(nd.index)] = 0;

  auto var = [](int i) { return "v" + std::to_string(i); };
  SemanticGraph g;
  for (const auto& nd : tree.nodes()) {
    if (!keep[static_cast<std::size_t>(nd.index)]) continue;
    g.add_instance(var(nd.index), ascii_lower(nd.lemma.empty() ? nd.form : nd.lemma));
  }
  for (const auto& nd : tree.nodes()) {
    if (!keep[static_cast<std::size_t>(nd.index)] || nd.head == 0) continue;
    int h = nd.head;
    while (h != 0 && !keep[static_cast<std::size_t>(h)]) h = tree.node(h).head;
    g.add_relation({nd.deprel, var(h), var(nd.index)});
  }
  g.set_top(var(tree.root()));
  return g;
}

}  // namespace tsteval
