#include <gtest/gtest.h>

#include <sstream>

#include "tsteval/conllu.hpp"
#include "tsteval/error.hpp"
#include "tsteval/semantic_graph.hpp"

namespace tsteval {
namespace {

std::string row(int id, const char* form, const char* lemma, const char* upos, int head, const char* rel) {
  return std::to_string(id) + "\t" + form + "\t" + lemma + "\t" + upos + "\t_\t_\t" + std::to_string(head) + "\t" +
         rel + "\t_\t_\n";
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(Conllu, TwoTokenBlock) {
  const auto t = parse_conllu("# text = cats sleep\n" + row(1, "cats", "cat", "NOUN", 2, "nsubj") +
                              row(2, "sleep", "sleep", "VERB", 0, "root"));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.root(), 2);
  EXPECT_EQ(t.children(2), std::vector<int>{1});
  EXPECT_EQ(t.node(1).lemma, "cat");
  EXPECT_EQ(parse_conllu(write_conllu(t)), t);
}

TEST(Conllu, SkipsRangesAndEmptyNodes) {
  const auto t = parse_conllu("1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n" + row(1, "de", "de", "ADP", 2, "case") +
                              row(2, "el", "el", "DET", 0, "root") + "2.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n");
  EXPECT_EQ(t.size(), 2u);
}

TEST(Conllu, DanglingHeadRejected) {
  const auto msg = error_of([] { parse_conllu(row(1, "a", "a", "X", 0, "root") + row(2, "b", "b", "X", 7, "dep")); });
  EXPECT_NE(msg.find("nonexistent"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(Conllu, MultipleRootsRejected) {
  const auto msg = error_of([] { parse_conllu(row(1, "a", "a", "X", 0, "root") + row(2, "b", "b", "X", 0, "root")); });
  EXPECT_NE(msg.find("multiple roots"), std::string::npos) << msg;
}

TEST(Conllu, CycleAndColumnCount) {
  EXPECT_THROW(parse_conllu(row(1, "a", "a", "X", 2, "dep") + row(2, "b", "b", "X", 1, "dep") +
                            row(3, "c", "c", "X", 0, "root")),
               DataError);
  EXPECT_THROW(parse_conllu("1\ta\ta\tX\t0\troot\n"), DataError);
}

TEST(Conllu, KeyedBlocks) {
  std::istringstream in("# instance_id = x\n# slot = generated\n" + row(1, "a", "a", "X", 0, "root") +
                        "\n# instance_id = y\n# slot = source\n" + row(1, "b", "b", "X", 0, "root"));
  const auto blocks = read_keyed_blocks(in, "parses");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].instance_id, "x");
  EXPECT_EQ(blocks[0].slot, Slot::generated);
  EXPECT_EQ(blocks[1].slot, Slot::source);
}

TEST(Penman, StandardExample) {
  const auto g = parse_penman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01 :ARG0 b))");
  EXPECT_EQ(g.variables().size(), 3u);
  EXPECT_EQ(g.relations().size(), 3u);
  EXPECT_TRUE(g.attributes().empty());
  EXPECT_EQ(g.top(), "w");
  EXPECT_EQ(g.concept_of("g"), "go-01");
  SemanticGraph want;
  want.add_instance("w", "want-01");
  want.add_instance("b", "boy");
  want.add_instance("g", "go-01");
  want.add_relation({"ARG0", "w", "b"});
  want.add_relation({"ARG1", "w", "g"});
  want.add_relation({"ARG0", "g", "b"});
  want.set_top("w");
  EXPECT_TRUE(g.same_triples(want));
  EXPECT_EQ(g.triple_count(), 7u);
}

TEST(Penman, SingleInstance) {
  const auto g = parse_penman("(a / amr-empty)");
  EXPECT_EQ(g.variables().size(), 1u);
  EXPECT_TRUE(g.relations().empty());
}

TEST(Penman, UndefinedVariableRejected) {
  const auto msg = error_of([] { parse_penman("(a / x :p b)"); });
  EXPECT_NE(msg.find("'b'"), std::string::npos) << msg;
}

TEST(Penman, InverseRoles) {
  const auto g = parse_penman("(b / boy :ARG0-of (w / want-01) :consist-of (s / sand))");
  ASSERT_EQ(g.relations().size(), 2u);
  EXPECT_TRUE(std::count(g.relations().begin(), g.relations().end(), Relation{"ARG0", "w", "b"}));
  EXPECT_TRUE(std::count(g.relations().begin(), g.relations().end(), Relation{"consist-of", "b", "s"}));
}

TEST(Penman, ConstantsBecomeAttributes) {
  const auto g = parse_penman(R"((p / person :name (n / name :op1 "Ann") :polarity - :quant 3))");
  EXPECT_EQ(g.attributes().size(), 3u);
  EXPECT_EQ(g.relations().size(), 1u);
}

TEST(Penman, SyntaxErrors) {
  EXPECT_THROW(parse_penman("(a / x"), DataError);
  EXPECT_THROW(parse_penman("(a x)"), DataError);
  EXPECT_THROW(parse_penman("(a / x :p (a / y))"), DataError);
  EXPECT_THROW(parse_penman("(a / x) (b / y)"), DataError);
}

TEST(Penman, SerializeRoundTrip) {
  const auto g = parse_penman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01 :ARG0 b :polarity -))");
  EXPECT_TRUE(parse_penman(serialize_penman(g)).same_triples(g));
}

DependencyTree tree(std::vector<DependencyNode> v) { return DependencyTree(std::move(v)); }

TEST(DepToAmr, SingleToken) {
  const auto g = dep_to_amr_style(tree({{1, "run", "run", "VERB", "root", 0}}));
  EXPECT_EQ(g.variables(), std::vector<std::string>{"v1"});
  EXPECT_EQ(g.concept_of("v1"), "run");
  EXPECT_TRUE(g.relations().empty());
  EXPECT_EQ(g.top(), "v1");
}

TEST(DepToAmr, TwoTokens) {
  const auto g = dep_to_amr_style(tree({{1, "Cats", "cat", "NOUN", "nsubj", 2}, {2, "sleep", "sleep", "VERB", "root", 0}}));
  EXPECT_EQ(g.concept_of("v1"), "cat");
  EXPECT_EQ(g.concept_of("v2"), "sleep");
  ASSERT_EQ(g.relations().size(), 1u);
  EXPECT_EQ(g.relations()[0], (Relation{"nsubj", "v2", "v1"}));
  EXPECT_EQ(g.top(), "v2");
}

TEST(DepToAmr, PunctDropped) {
  const auto t = tree({{1, "Cats", "cat", "NOUN", "nsubj", 2},
                       {2, "sleep", "sleep", "VERB", "root", 0},
                       {3, ".", ".", "PUNCT", "punct", 2}});
  const auto g = dep_to_amr_style(t);
  EXPECT_FALSE(g.has_variable("v3"));
  EXPECT_EQ(g.relations().size(), 1u);
  EXPECT_TRUE(dep_to_amr_style(t, false).has_variable("v3"));
}

TEST(DepToAmr, EmptyLemmaUsesLowercasedForm) {
  const auto g = dep_to_amr_style(tree({{1, "Run", "", "VERB", "root", 0}}));
  EXPECT_EQ(g.concept_of("v1"), "run");
}

TEST(Smatch, RenamedCopyAndDisjoint) {
  const auto a = parse_penman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01 :ARG0 b))");
  const auto b = parse_penman("(x / want-01 :ARG1 (y / go-01 :ARG0 (z / boy)) :ARG0 z)");
  const auto r = smatch(a, b, 4, 1);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_EQ(r.matched, 7);
  const auto c = parse_penman("(q / eat-01 :mod (p / pie))");
  const auto d = smatch(a, c, 4, 1);
  EXPECT_EQ(d.f1, 0.0);
}

TEST(Smatch, PartialOverlapByHand) {
  // Matching instance b and the shared ARG0 edge; want-01 vs like-01 differ.
  const auto a = parse_penman("(w / want-01 :ARG0 (b / boy))");
  const auto b = parse_penman("(l / like-01 :ARG0 (g / boy))");
  const auto r = smatch(a, b, 4, 3);
  // boy instance, ARG0 relation, TOP is on differing concepts: 2 of 4.
  EXPECT_EQ(r.matched, 2);
  EXPECT_DOUBLE_EQ(r.f1, 0.5);
}

TEST(Ted, IdentityAndRelabel) {
  const auto t = tree({{1, "a", "a", "NOUN", "nsubj", 2}, {2, "b", "b", "VERB", "root", 0}});
  EXPECT_EQ(ted(t, t).raw, 0);
  EXPECT_EQ(ted(t, t).normalized, 0.0);
  const auto x = ted(tree({{1, "x", "x", "NOUN", "root", 0}}), tree({{1, "y", "y", "VERB", "root", 0}}));
  EXPECT_EQ(x.raw, 1);
  EXPECT_EQ(x.normalized, 1.0);
  EXPECT_EQ(ted(tree({{1, "x", "x", "NOUN", "root", 0}}), tree({{1, "y", "y", "NOUN", "root", 0}})).raw, 0);
  EXPECT_EQ(
      ted(tree({{1, "x", "x", "NOUN", "root", 0}}), tree({{1, "y", "y", "NOUN", "root", 0}}), TedLabel::lemma).raw, 1);
  EXPECT_THROW(parse_ted_label("surface"), ConfigError);
}

}  // namespace
}  // namespace tsteval
