#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "trials.hpp"
#include "tsteval/style.hpp"

namespace tsteval {
namespace {

using testing::for_trials;

std::size_t width(Rng& rng) { return 2 + uniform_index(rng, 4); }  // K in 2..5

TEST(StyleProps, EmdIsAMetric) {
  for_trials(301, [](Rng& rng, int) {
    const auto k = width(rng);
    const auto p = oracle::random_distribution(rng, k);
    const auto q = oracle::random_distribution(rng, k);
    const auto r = oracle::random_distribution(rng, k);
    EXPECT_GE(emd(p, q), 0.0);
    EXPECT_EQ(emd(p, p), 0.0);
    EXPECT_EQ(emd(p, q), emd(q, p));
    EXPECT_LE(emd(p, r), emd(p, q) + emd(q, r) + 1e-12);
    // The same axioms on the transport oracle.
    const double pq = oracle::emd_by_lp(p, q);
    EXPECT_LE(oracle::emd_by_lp(p, r), pq + oracle::emd_by_lp(q, r) + 1e-9);
  });
}

TEST(StyleProps, EmdMatchesTransportLp) {
  for_trials(302, [](Rng& rng, int) {
    const auto k = width(rng);
    const auto p = oracle::random_distribution(rng, k);
    const auto q = oracle::random_distribution(rng, k);
    EXPECT_NEAR(emd(p, q), oracle::emd_by_lp(p, q), 1e-9);
  });
}

TEST(StyleProps, JsSymmetricBoundedZeroIffEqual) {
  for_trials(303, [](Rng& rng, int) {
    const auto k = width(rng);
    const auto p = oracle::random_distribution(rng, k);
    auto q = oracle::random_distribution(rng, k);
    EXPECT_EQ(js_divergence(p, q), js_divergence(q, p));
    EXPECT_GE(js_divergence(p, q), 0.0);
    EXPECT_LE(js_divergence(p, q), std::numbers::ln2);
    EXPECT_LE(js_divergence_normalized(p, q), 1.0);
    EXPECT_NEAR(js_divergence(p, p), 0.0, 1e-12);
    if (p != q) {
      EXPECT_GT(js_divergence(p, q), 0.0);
    }
  });
  // Disjoint supports reach the bound.
  const std::vector<double> a = {1.0, 0.0};
  const std::vector<double> b = {0.0, 1.0};
  EXPECT_NEAR(js_divergence(a, b), std::numbers::ln2, 1e-12);
}

TEST(StyleProps, KlNonNegativeAndZeroOnSelf) {
  for_trials(304, [](Rng& rng, int) {
    const auto k = width(rng);
    const auto p = oracle::random_distribution(rng, k);
    const auto q = oracle::random_distribution(rng, k);
    EXPECT_GE(kl_divergence(p, q), 0.0);
    EXPECT_EQ(kl_divergence(p, p), 0.0);
  });
}

TEST(StyleProps, SentenceAccuracyAgreesWithConfidence) {
  for_trials(305, [](Rng& rng, int t) {
    const auto k = width(rng);
    // Every other trial forces a tie on the maximum.
    auto q = oracle::random_distribution(rng, k);
    if (t % 2) {
      const auto hi = std::max_element(q.begin(), q.end()) - q.begin();
      const auto other = (static_cast<std::size_t>(hi) + 1 + uniform_index(rng, k - 1)) % k;
      const double m = (q[static_cast<std::size_t>(hi)] + q[other]) / 2;
      q[static_cast<std::size_t>(hi)] = m;
      q[other] = m;
    }
    const std::size_t target = uniform_index(rng, k);
    double other_max = -1.0;
    bool tied = false;
    for (std::size_t c = 0; c < k; ++c)
      if (c != target) other_max = std::max(other_max, q[c]);
    tied = other_max == q[target];
    const int acc = sentence_accuracy(q, target);
    EXPECT_EQ(classifier_confidence(q, target), q[target]);
    if (!tied) {
      EXPECT_EQ(acc, classifier_confidence(q, target) > other_max ? 1 : 0);
    } else {
      // Ties go to the lowest index holding the maximum.
      std::size_t first = 0;
      while (q[first] != q[target]) ++first;
      EXPECT_EQ(acc, first == target ? 1 : 0);
    }
  });
}

}  // namespace
}  // namespace tsteval
