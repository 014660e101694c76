#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tsteval/embedding.hpp"
#include "tsteval/error.hpp"

namespace tsteval {
namespace {

using V = std::vector<double>;

EmbeddedSentence sent(std::vector<std::vector<double>> rows) { return EmbeddedSentence::uniform(Matrix::from_rows(rows)); }

TEST(SentenceCosine, Analytic) {
  EXPECT_DOUBLE_EQ(sentence_cosine(V{0.3, -2, 5}, V{0.3, -2, 5}), 1.0);
  EXPECT_EQ(sentence_cosine(V{1, 0}, V{0, 1}), 0.0);
  EXPECT_NEAR(sentence_cosine(V{1, 0}, V{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}), std::sqrt(0.5), 1e-15);
}

TEST(SentenceCosine, ShapeErrors) {
  EXPECT_THROW(sentence_cosine(V{1, 0}, V{1, 0, 0}), DataError);
  EXPECT_THROW(sentence_cosine(V{0, 0}, V{1, 0}), DataError);
}

TEST(Wmd, IdentityAndSingleTokens) {
  const auto a = sent({{1, 2}, {3, -1}, {0, 0.5}});
  EXPECT_NEAR(wmd(a, a).value, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(wmd(sent({{0, 0, 0}}), sent({{1, 2, 2}})).value, 3.0);
}

TEST(Wmd, UniformSquareIsBestMatching) {
  // Crossed pairs are far apart, so the straight matching wins.
  const auto a = sent({{0, 0}, {10, 0}});
  const auto b = sent({{0, 1}, {10, 2}});
  EXPECT_NEAR(wmd(a, b).value, 1.5, 1e-12);

  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + uniform_index(rng, 5);
    std::vector<std::vector<double>> ra(n, V(3)), rb(n, V(3));
    for (auto* r : {&ra, &rb})
      for (auto& row : *r)
        for (auto& x : row) x = uniform_real(rng, -1, 1);
    const auto x = sent(ra), y = sent(rb);
    Matrix cost(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += (ra[i][k] - rb[j][k]) * (ra[i][k] - rb[j][k]);
        cost(i, j) = std::sqrt(s);
      }
    EXPECT_NEAR(wmd(x, y).value, oracle::assignment_permutations(cost), 1e-9) << t;
  }
}

TEST(Wmd, CellCapFallsBackToRelaxedBound) {
  const auto a = sent({{0, 0}, {10, 0}});
  const auto b = sent({{0, 1}, {10, 2}});
  const auto r = wmd(a, b, 2);
  EXPECT_TRUE(r.approximate);
  EXPECT_EQ(r.value, relaxed_wmd(a, b));
  EXPECT_LE(r.value, wmd(a, b).value + 1e-12);
  EXPECT_FALSE(wmd(a, b).approximate);
}

TEST(BertScore, IdenticalAndOrthogonal) {
  const auto a = sent({{1, 0, 0}, {0, 2, 0}});
  const auto r = bert_score(a, a, false);
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_DOUBLE_EQ(r.f1, 1.0);
  const auto z = bert_score(a, sent({{0, 0, 3}}), false);
  EXPECT_EQ(z.precision, 0.0);
  EXPECT_EQ(z.recall, 0.0);
  EXPECT_EQ(z.f1, 0.0);
}

TEST(BertScore, FabricatedCosines) {
  // Candidate tokens sit at cosine 0.5 and 0.9 from the single reference token.
  const auto cand = sent({{0.5, std::sqrt(0.75)}, {0.9, std::sqrt(0.19)}});
  const auto ref = sent({{1, 0}});
  const auto r = bert_score(cand, ref, false);
  EXPECT_NEAR(r.recall, 0.9, 1e-12);
  EXPECT_NEAR(r.precision, 0.7, 1e-12);
  EXPECT_NEAR(r.f1, 0.7875, 1e-12);
}

TEST(BertScore, IdfWeightsPrecision) {
  auto cand = sent({{0.5, std::sqrt(0.75)}, {0.9, std::sqrt(0.19)}});
  cand.idf = V{1, 3};
  auto ref = sent({{1, 0}});
  ref.idf = V{2};
  const auto r = bert_score(cand, ref, true);
  EXPECT_NEAR(r.precision, (0.5 * 1 + 0.9 * 3) / 4, 1e-12);
  EXPECT_NEAR(r.recall, 0.9, 1e-12);
}

TEST(EmbeddedSentence, AnnotationWithoutVectorsRejected) {
  TokenAnnotation a;
  a.ref = {"x", Slot::generated};
  a.tokens = {"w"};
  EXPECT_THROW(EmbeddedSentence::from_annotation(a), DataError);
  a.embeddings = Matrix::from_rows({{1, 2}});
  const auto s = EmbeddedSentence::from_annotation(a);
  EXPECT_EQ(s.weights, V{1.0});
  EXPECT_EQ(s.dim(), 2u);
}

}  // namespace
}  // namespace tsteval
