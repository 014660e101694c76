#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "trials.hpp"
#include "tsteval/embedding.hpp"

namespace tsteval {
namespace {

using testing::for_trials;

Matrix vectors(Rng& rng, std::size_t n, std::size_t dim) {
  Matrix m(n, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < dim; ++d) m(i, d) = uniform_real(rng, -1.0, 1.0);
  return m;
}

EmbeddedSentence sentence(Rng& rng, std::size_t max_len, std::size_t dim) {
  return EmbeddedSentence::uniform(vectors(rng, 1 + uniform_index(rng, max_len), dim));
}

Matrix euclid(const EmbeddedSentence& a, const EmbeddedSentence& b) {
  Matrix c(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      double s = 0;
      for (std::size_t d = 0; d < a.dim(); ++d) s += std::pow(a.vectors(i, d) - b.vectors(j, d), 2);
      c(i, j) = std::sqrt(s);
    }
  return c;
}

double oracle_wmd(const EmbeddedSentence& a, const EmbeddedSentence& b) {
  const auto c = euclid(a, b);
  if (a.size() == b.size()) return oracle::assignment_permutations(c);
  return oracle::transport_vertex_enumeration(a.weights, b.weights, c);
}

TEST(EmbeddingProps, WmdIdentityAndSymmetry) {
  for_trials(401, [](Rng& rng, int) {
    const auto a = sentence(rng, 6, 4);
    const auto b = sentence(rng, 6, 4);
    EXPECT_NEAR(wmd(a, a).value, 0.0, 1e-12);
    EXPECT_NEAR(wmd(a, b).value, wmd(b, a).value, 1e-12);
  });
}

TEST(EmbeddingProps, WmdTriangleInequality) {
  for_trials(402, [](Rng& rng, int) {
    const auto a = sentence(rng, 4, 3);
    const auto b = sentence(rng, 4, 3);
    const auto c = sentence(rng, 4, 3);
    const double ab = wmd(a, b).value;
    const double bc = wmd(b, c).value;
    const double ac = wmd(a, c).value;
    EXPECT_NEAR(ab, oracle_wmd(a, b), 1e-9);
    EXPECT_NEAR(bc, oracle_wmd(b, c), 1e-9);
    EXPECT_NEAR(ac, oracle_wmd(a, c), 1e-9);
    EXPECT_LE(ac, ab + bc + 1e-12);
  });
}

TEST(EmbeddingProps, BertScoreFSymmetric) {
  for_trials(403, [](Rng& rng, int) {
    const auto a = sentence(rng, 7, 5);
    const auto b = sentence(rng, 7, 5);
    const auto ab = bert_score(a, b, false);
    const auto ba = bert_score(b, a, false);
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
    EXPECT_NEAR(ab.f1, ba.f1, 1e-15);
  });
}

TEST(EmbeddingProps, CosineScaleInvariant) {
  for_trials(404, [](Rng& rng, int) {
    const std::size_t dim = 1 + uniform_index(rng, 8);
    const auto m = vectors(rng, 2, dim);
    std::vector<double> a(m.row(0).begin(), m.row(0).end());
    std::vector<double> b(m.row(1).begin(), m.row(1).end());
    const double k = std::exp(uniform_real(rng, -5, 5));
    std::vector<double> ka = a;
    for (auto& x : ka) x *= k;
    EXPECT_NEAR(sentence_cosine(ka, b), sentence_cosine(a, b), 1e-12);
    EXPECT_NEAR(sentence_cosine(a, ka), 1.0, 1e-12);
  });
}

TEST(EmbeddingProps, ExactWmdAtLeastRelaxed) {
  for_trials(405, [](Rng& rng, int) {
    const auto a = sentence(rng, 8, 4);
    const auto b = sentence(rng, 8, 4);
    const auto exact = wmd(a, b);
    ASSERT_FALSE(exact.approximate);
    EXPECT_GE(exact.value + 1e-12, relaxed_wmd(a, b));
  });
}

}  // namespace
}  // namespace tsteval
