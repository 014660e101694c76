#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "trials.hpp"
#include "tsteval/correlation.hpp"
#include "tsteval/ensemble.hpp"
#include "tsteval/forest.hpp"
#include "tsteval/registry.hpp"

namespace tsteval {
namespace {

using testing::for_trials;

const char* kContent[] = {"bleu", "rouge_l", "meteor", "cosine", "rouge_2"};

std::array<double, 3> simplex_point(Rng& rng) {
  std::array<double, 3> w{};
  double s = 0;
  for (auto& x : w) {
    x = uniform_index(rng, 5) == 0 ? 0.0 : uniform_unit(rng);
    s += x;
  }
  if (s == 0) return {1.0, 0.0, 0.0};
  for (auto& x : w) x /= s;
  return w;
}

double component(Rng& rng) { return uniform_index(rng, 6) == 0 ? kNormEpsilon : uniform_real(rng, kNormEpsilon, 1.0); }

struct Synthetic {
  ScoreTable oriented;
  ScoreColumn human;
  TuningSplit split;
};

// p content metrics on n rows; column `signal` drives human through
// `link` and the rest are independent noise.
template <class Link>
Synthetic synthetic(Rng& rng, std::size_t n, std::size_t p, std::size_t signal, Link link) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("r" + std::to_string(rng() % 100000) + "-" + std::to_string(i));
  ScoreTable raw(ids);
  Synthetic s;
  s.human.resize(n);
  for (std::size_t k = 0; k < p; ++k) {
    ScoreColumn c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = uniform_unit(rng);
    if (k == signal)
      for (std::size_t i = 0; i < n; ++i) s.human[i] = link(*c[i], rng);
    raw.add_column({kContent[k], Dimension::content_preservation, Orientation::higher_better, Mode::reference_free}, c);
  }
  s.oriented = orient_and_normalize(raw, Registry::builtin());
  s.split = hash_split(ids);
  return s;
}

TEST(EnsembleProps, HybridBetweenComponents) {
  for_trials(601, [](Rng& rng, int) {
    HybridModel m;
    m.weights = simplex_point(rng);
    const std::array<std::optional<double>, 3> v{component(rng), component(rng), component(rng)};
    const double h = *apply_hybrid(m, v);
    const double lo = std::min({*v[0], *v[1], *v[2]});
    const double hi = std::max({*v[0], *v[1], *v[2]});
    EXPECT_GE(h, lo);
    EXPECT_LE(h, hi);
  });
}

TEST(EnsembleProps, OverallAtMostArithmeticMean) {
  for_trials(602, [](Rng& rng, int t) {
    const double s = component(rng);
    const double c = t % 3 == 0 ? s : component(rng);
    const double f = t % 3 == 0 ? s : component(rng);
    EXPECT_LE(overall_score(s, c, f), (s + c + f) / 3.0);
    EXPECT_GE(overall_score(s, c, f), 0.0);
  });
}

TEST(EnsembleProps, SimulationIsGridOptimal) {
  for_trials(603, [](Rng& rng, int) {
    const std::size_t p = 3 + uniform_index(rng, 2);
    const double a = uniform_real(rng, 0.2, 0.9);
    auto s = synthetic(rng, 24 + uniform_index(rng, 16), p, 0,
                       [a](double x, Rng& r) { return a * x + (1 - a) * uniform_unit(r); });
    const auto model = fit_hybrid_simulation(s.oriented, s.human, Dimension::content_preservation,
                                             Registry::builtin(), s.split.tuning);
    const auto best = hybrid_pearson(s.oriented, s.human, model.metrics, model.weights, s.split.tuning);
    ASSERT_TRUE(best.has_value());
    for (const auto& w : simplex_grid(0.05)) {
      const auto v = hybrid_pearson(s.oriented, s.human, model.metrics, w, s.split.tuning);
      if (v) EXPECT_LE(*v, *best);
    }
  });
}

TEST(EnsembleProps, ForestReproducibleAndNormalized) {
  for_trials(604, [](Rng& rng, int) {
    const std::size_t n = 20 + uniform_index(rng, 20);
    const std::size_t p = 2 + uniform_index(rng, 4);
    Matrix x(n, p);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < p; ++k) x(i, k) = uniform_unit(rng);
      y[i] = x(i, 0) + 0.3 * uniform_unit(rng);
    }
    ForestOptions o;
    o.seed = rng();
    o.n_trees = 50;
    const auto a = fit_random_forest(x, y, o);
    const auto b = fit_random_forest(x, y, o);
    EXPECT_EQ(a.importances, b.importances);
    ASSERT_EQ(a.trees.size(), b.trees.size());
    for (std::size_t t = 0; t < a.trees.size(); ++t) {
      ASSERT_EQ(a.trees[t].nodes.size(), b.trees[t].nodes.size());
      for (std::size_t k = 0; k < a.trees[t].nodes.size(); ++k) {
        const auto& u = a.trees[t].nodes[k];
        const auto& v = b.trees[t].nodes[k];
        EXPECT_TRUE(u.feature == v.feature && u.threshold == v.threshold && u.left == v.left &&
                    u.right == v.right && u.value == v.value);
      }
    }
    double sum = 0;
    for (double v : a.importances) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  });
}

// human = strictly increasing transform of one metric.
Synthetic monotone_case(Rng& rng, std::size_t& signal) {
  const std::size_t p = 3 + uniform_index(rng, 3);
  signal = uniform_index(rng, p);
  const int shape = static_cast<int>(uniform_index(rng, 3));
  return synthetic(rng, 40 + uniform_index(rng, 30), p, signal, [shape](double x, Rng&) {
    return shape == 0 ? x : shape == 1 ? std::exp(3 * x) : x * x * x;
  });
}

TEST(EnsembleProps, LearnedTopImportanceOnMonotoneMetric) {
  for_trials(605, [](Rng& rng, int) {
    std::size_t signal = 0;
    const auto s = monotone_case(rng, signal);
    ForestOptions o;
    o.seed = rng();
    const auto fit = fit_learned_from_table(s.oriented, s.human, Dimension::content_preservation,
                                            Registry::builtin(), s.split.tuning, o);
    EXPECT_EQ(fit.model.metrics[0], kContent[signal]);
  });
}

TEST(EnsembleProps, LearnedHybridSpearmanOneOnTraining) {
  for_trials(606, [](Rng& rng, int) {
    std::size_t signal = 0;
    const auto s = monotone_case(rng, signal);
    ForestOptions o;
    o.seed = rng();
    const auto fit = fit_learned_from_table(s.oriented, s.human, Dimension::content_preservation,
                                            Registry::builtin(), s.split.tuning, o);
    const auto h = apply_hybrid(fit.model, s.oriented);
    std::vector<double> hx, hy;
    for (auto r : s.split.tuning) {
      hx.push_back(*h[r]);
      hy.push_back(*s.human[r]);
    }
    EXPECT_EQ(spearman(hx, hy).value, 1.0) << "weights " << fit.model.weights[0] << " " << fit.model.weights[1]
                                            << " " << fit.model.weights[2];
  });
}

}  // namespace
}  // namespace tsteval
