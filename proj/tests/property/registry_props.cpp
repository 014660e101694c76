#include <gtest/gtest.h>

#include "trials.hpp"
#include "tsteval/correlation.hpp"
#include "tsteval/registry.hpp"

namespace tsteval {
namespace {

using testing::for_trials;

ScoreColumn with_nulls(Rng& rng, const std::vector<double>& v) {
  ScoreColumn c(v.begin(), v.end());
  for (auto& x : c)
    if (uniform_index(rng, 8) == 0) x.reset();
  return c;
}

TEST(RegistryProps, NormalizationKeepsRankCorrelations) {
  for_trials(901, [](Rng& rng, int t) {
    const std::size_t n = 4 + uniform_index(rng, 40);
    // Integer grid in [-3, 7] so ties are common and nothing leaves the fixed bounds.
    std::vector<double> raw_v(n);
    for (auto& x : raw_v) x = -3.0 + static_cast<double>(uniform_index(rng, 11));
    raw_v[0] = -3;
    raw_v[1] = 7;
    const auto raw = with_nulls(rng, raw_v);
    ScoreColumn human(n);
    for (auto& h : human) h = 1 + static_cast<double>(uniform_index(rng, 5));

    MetricDescriptor d;
    d.metric_id = "m";
    d.normalization = t % 2 ? Normalization::minmax() : Normalization::fixed(-3.5, 7.5);
    const auto norm = normalize_column(raw, d);

    const auto before = paired(raw, human);
    const auto after = paired(norm, human);
    ASSERT_EQ(before.x.size(), after.x.size());
    const auto s0 = spearman(before.x, before.y);
    const auto s1 = spearman(after.x, after.y);
    const auto k0 = kendall_tau_b(before.x, before.y);
    const auto k1 = kendall_tau_b(after.x, after.y);
    EXPECT_EQ(s0.value, s1.value);
    EXPECT_EQ(k0.value, k1.value);
  });
}

TEST(RegistryProps, OrientationFlipNegatesPearson) {
  for_trials(902, [](Rng& rng, int) {
    const std::size_t n = 3 + uniform_index(rng, 40);
    std::vector<double> x(n), y(n), flipped(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = uniform_real(rng, -5, 5);
      y[i] = uniform_real(rng, -5, 5);
    }
    // The orientation step of a lower-better column before any scaling.
    MetricDescriptor d;
    d.metric_id = "m";
    d.orientation = Orientation::lower_better;
    for (std::size_t i = 0; i < n; ++i) flipped[i] = -x[i];
    const auto r = pearson(x, y);
    const auto f = pearson(flipped, y);
    ASSERT_TRUE(r.value && f.value);
    EXPECT_EQ(*f.value, -*r.value);

    // Through the registry the flipped column is also rescaled and floored
    // at eps (on the opposite end), so the sign flips up to ~eps.
    ScoreColumn col(x.begin(), x.end());
    const auto lb = normalize_column(col, d);
    d.orientation = Orientation::higher_better;
    const auto hb = normalize_column(col, d);
    const auto plb = paired(lb, ScoreColumn(y.begin(), y.end()));
    const auto phb = paired(hb, ScoreColumn(y.begin(), y.end()));
    const auto rl = pearson(plb.x, plb.y);
    const auto rh = pearson(phb.x, phb.y);
    if (rl.value && rh.value) EXPECT_NEAR(*rl.value, -*rh.value, 1e-5);
  });
}

}  // namespace
}  // namespace tsteval
