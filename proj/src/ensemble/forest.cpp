#include "tsteval/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "tsteval/error.hpp"
#include "tsteval/rng.hpp"

namespace tsteval {

double RegressionTree::predict(std::span<const double> x) const {
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(i)].value;
}

double ForestModel::predict(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& t : trees) s += t.predict(x);
  return s / static_cast<double>(trees.size());
}

namespace {

struct TreeBuilder {
  const Matrix& X;
  std::span<const double> y;
  const ForestOptions& opt;
  int max_features;
  Rng rng;
  RegressionTree tree;
  std::vector<double> gain;  // per-feature squared-error reduction

  TreeBuilder(const Matrix& x, std::span<const double> t, const ForestOptions& o, int mf, std::uint64_t seed)
      : X(x), y(t), opt(o), max_features(mf), rng(seed), gain(x.cols(), 0.0) {}

  static double sse(const std::vector<std::size_t>& rows, std::span<const double> y, double& mean) {
    double s = 0.0;
    for (auto r : rows) s += y[r];
    mean = s / static_cast<double>(rows.size());
    double e = 0.0;
    for (auto r : rows) e += (y[r] - mean) * (y[r] - mean);
    return e;
  }

  int build(std::vector<std::size_t> rows) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    double mean = 0.0;
    const double node_sse = sse(rows, y, mean);
    tree.nodes[static_cast<std::size_t>(id)].value = mean;
    if (static_cast<int>(rows.size()) < opt.min_samples_split || node_sse <= 0.0) return id;

    const int p = static_cast<int>(X.cols());
    std::vector<int> feats(static_cast<std::size_t>(p));
    std::iota(feats.begin(), feats.end(), 0);
    shuffle_range(feats.begin(), feats.end(), rng);
    feats.resize(static_cast<std::size_t>(max_features));
    std::sort(feats.begin(), feats.end());

    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> order = rows;
    for (int f : feats) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = X(a, static_cast<std::size_t>(f));
        const double vb = X(b, static_cast<std::size_t>(f));
        return va != vb ? va < vb : a < b;
      });
      // Prefix sums give each split's SSE as sum(y^2) - sum(y)^2 / n per side.
      double total = 0.0, total_sq = 0.0;
      for (auto r : order) {
        total += y[r];
        total_sq += y[r] * y[r];
      }
      double left = 0.0, left_sq = 0.0;
      const std::size_t n = order.size();
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left += y[order[k]];
        left_sq += y[order[k]] * y[order[k]];
        const double xv = X(order[k], static_cast<std::size_t>(f));
        const double xn = X(order[k + 1], static_cast<std::size_t>(f));
        if (xv == xn) continue;
        const double nl = static_cast<double>(k + 1);
        const double nr = static_cast<double>(n - k - 1);
        const double right = total - left;
        const double right_sq = total_sq - left_sq;
        const double child = (left_sq - left * left / nl) + (right_sq - right * right / nr);
        const double g = node_sse - child;
        if (g > best_gain + 1e-12 * node_sse) {
          best_gain = g;
          best_feature = f;
          best_threshold = xv + (xn - xv) / 2.0;
          if (best_threshold >= xn) best_threshold = xv;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> lrows, rrows;
    for (auto r : rows)
      (X(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? lrows : rrows).push_back(r);
    double lm = 0.0, rm = 0.0;
    const double exact_gain = node_sse - sse(lrows, y, lm) - sse(rrows, y, rm);
    gain[static_cast<std::size_t>(best_feature)] += std::max(0.0, exact_gain);
    const int l = build(std::move(lrows));
    const int r = build(std::move(rrows));
    auto& node = tree.nodes[static_cast<std::size_t>(id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = r;
    return id;
  }
};

}  // namespace

ForestModel fit_random_forest(const Matrix& features, std::span<const double> target, const ForestOptions& options) {
  const std::size_t n = features.rows();
  const std::size_t p = features.cols();
  if (n != target.size()) throw DataError("feature rows and targets differ in count");
  if (n < 2) throw DataError("random forest needs at least 2 rows");
  if (p == 0) throw DataError("random forest needs at least one feature");
  if (options.n_trees < 1) throw ConfigError("n_trees must be >= 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(target[i])) throw DataError("non-finite target");
    for (double v : features.row(i))
      if (!std::isfinite(v)) throw DataError("non-finite feature value");
  }
  if (std::all_of(target.begin(), target.end(), [&](double v) { return v == target[0]; }))
    throw DataError("degenerate target");

  // Canonical row order: lexicographic on (features, target).
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = features.row(a);
    const auto rb = features.row(b);
    for (std::size_t j = 0; j < p; ++j)
      if (ra[j] != rb[j]) return ra[j] < rb[j];
    return target[a] < target[b];
  });
  Matrix X(n, p);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = features.row(order[i]);
    std::copy(src.begin(), src.end(), X.row(i).begin());
    y[i] = target[order[i]];
  }

  int mf = options.max_features > 0 ? options.max_features : static_cast<int>((p + 2) / 3);
  mf = std::clamp(mf, 1, static_cast<int>(p));

  ForestModel model;
  model.options = options;
  model.n_features = p;
  model.trees.resize(static_cast<std::size_t>(options.n_trees));
  std::vector<std::vector<double>> gains(static_cast<std::size_t>(options.n_trees));

  auto fit_one = [&](int t) {
    TreeBuilder b(X, y, options, mf, mix_seed(options.seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> rows(n);
    if (options.bootstrap) {
      for (auto& r : rows) r = uniform_index(b.rng, n);
      std::sort(rows.begin(), rows.end());
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    b.build(std::move(rows));
    model.trees[static_cast<std::size_t>(t)] = std::move(b.tree);
    gains[static_cast<std::size_t>(t)] = std::move(b.gain);
  };
  const int workers = std::clamp(options.workers, 1, options.n_trees);
  if (workers == 1) {
    for (int t = 0; t < options.n_trees; ++t) fit_one(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int t = w; t < options.n_trees; t += workers) fit_one(t);
      });
    for (auto& th : pool) th.join();
  }

  model.importances.assign(p, 0.0);
  for (const auto& g : gains)
    for (std::size_t j = 0; j < p; ++j) model.importances[j] += g[j];
  double total = 0.0;
  for (auto& v : model.importances) {
    v /= static_cast<double>(options.n_trees);
    total += v;
  }
  if (!(total > 0.0)) throw DataError("degenerate target");
  for (auto& v : model.importances) v /= total;
  return model;
}

}  // namespace tsteval
