#include <gtest/gtest.h>

#include "oracles.hpp"
#include "trials.hpp"
#include "tsteval/semantic_graph.hpp"

namespace tsteval {
namespace {

using testing::for_trials;

TEST(StructuralProps, SmatchRenamingInvariant) {
  for_trials(501, [](Rng& rng, int) {
    const auto g1 = oracle::random_graph(rng, 6);
    const auto g2 = oracle::random_graph(rng, 6);
    const std::uint64_t seed = rng();
    const auto base = smatch(g1, g2, 4, seed);
    const auto left = smatch(oracle::rename_variables(g1, rng), g2, 4, seed);
    const auto right = smatch(g1, oracle::rename_variables(g2, rng), 4, seed);
    EXPECT_EQ(left.matched, base.matched);
    EXPECT_EQ(right.matched, base.matched);
    EXPECT_EQ(left.f1, base.f1);
    EXPECT_EQ(right.f1, base.f1);
  });
}

TEST(StructuralProps, SmatchSelfIsOne) {
  for_trials(502, [](Rng& rng, int) {
    const auto g = oracle::random_graph(rng, 8);
    const auto r = smatch(g, g, 4, rng());
    EXPECT_EQ(r.f1, 1.0);
    EXPECT_EQ(r.precision, 1.0);
    EXPECT_EQ(r.recall, 1.0);
  });
}

TEST(StructuralProps, SmatchBounds) {
  for_trials(503, [](Rng& rng, int) {
    const auto g1 = oracle::random_graph(rng, 8);
    const auto g2 = oracle::random_graph(rng, 8);
    const auto r = smatch(g1, g2, 1 + static_cast<int>(uniform_index(rng, 5)), rng());
    for (double v : {r.precision, r.recall, r.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  });
}

TEST(StructuralProps, SmatchMoreRestartsNeverWorse) {
  for_trials(504, [](Rng& rng, int) {
    const auto g1 = oracle::random_graph(rng, 8);
    const auto g2 = oracle::random_graph(rng, 8);
    const std::uint64_t seed = rng();
    double prev = -1.0;
    for (int r = 1; r <= 6; ++r) {
      const double f = smatch(g1, g2, r, seed).f1;
      EXPECT_GE(f, prev);
      prev = f;
    }
  });
}

TEST(StructuralProps, TedMetricAxioms) {
  for_trials(505, [](Rng& rng, int t) {
    const auto label = t % 2 ? TedLabel::lemma : TedLabel::deprel_upos;
    const auto a = oracle::random_tree(rng, 1 + static_cast<int>(uniform_index(rng, 6)), 3);
    const auto b = oracle::random_tree(rng, 1 + static_cast<int>(uniform_index(rng, 6)), 3);
    const auto c = oracle::random_tree(rng, 1 + static_cast<int>(uniform_index(rng, 6)), 3);
    const int ab = ted(a, b, label).raw;
    const int ba = ted(b, a, label).raw;
    const int bc = ted(b, c, label).raw;
    const int ac = ted(a, c, label).raw;
    EXPECT_EQ(ab, ba);
    EXPECT_EQ(ted(a, a, label).raw, 0);
    EXPECT_LE(ac, ab + bc);
    EXPECT_EQ(ab, oracle::ted_exhaustive(oracle::plain_tree(a, label), oracle::plain_tree(b, label)));
    if (ab == 0) {
      EXPECT_EQ(oracle::plain_tree(a, label).labels, oracle::plain_tree(b, label).labels);
    }
  });
}

TEST(StructuralProps, DependencyConversionTripleCounts) {
  for_trials(506, [](Rng& rng, int) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 10));
    auto nodes = oracle::random_tree(rng, n, 4).nodes();
    for (auto& nd : nodes)
      if (nd.head != 0 && uniform_index(rng, 4) == 0) nd.deprel = "punct";
    const DependencyTree tree(nodes);
    std::size_t retained = 0;
    for (const auto& nd : nodes)
      if (nd.deprel != "punct") ++retained;
    const auto g = dep_to_amr_style(tree, true);
    EXPECT_EQ(g.variables().size(), retained);
    EXPECT_EQ(g.relations().size(), retained - 1);
    EXPECT_TRUE(g.attributes().empty());
    const auto all = dep_to_amr_style(tree, false);
    EXPECT_EQ(all.variables().size(), nodes.size());
    EXPECT_EQ(all.relations().size(), nodes.size() - 1);
  });
}

TEST(StructuralProps, PenmanRoundTrip) {
  for_trials(507, [](Rng& rng, int) {
    const auto g = oracle::random_graph(rng, 8);
    const auto back = parse_penman(serialize_penman(g));
    EXPECT_TRUE(back.same_triples(g));
    EXPECT_EQ(serialize_penman(back), serialize_penman(g));
  });
}

}  // namespace
}  // namespace tsteval
