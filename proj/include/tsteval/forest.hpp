#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsteval/types.hpp"

namespace tsteval {

struct ForestOptions {
  int n_trees = 200;
  std::uint64_t seed = 0;
  int max_features = 0;        // 0: ceil(p / 3)
  int min_samples_split = 2;
  bool bootstrap = true;
  int workers = 1;
};

struct TreeNode {
  int feature = -1;            // -1 for leaves
  double threshold = 0.0;      // go left when x[feature] <= threshold
  int left = -1;
  int right = -1;
  double value = 0.0;          // mean target of the node
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  double predict(std::span<const double> x) const;
};

struct ForestModel {
  std::vector<RegressionTree> trees;
  ForestOptions options;
  std::size_t n_features = 0;
  std::vector<double> importances;  // sum to 1

  double predict(std::span<const double> x) const;
};

/// Bagged CART regression trees. Rows are put in a canonical content order
/// first, so the fitted model does not depend on the input row order.
/// Throws DataError for fewer than 2 rows, ragged rows or a constant target.
ForestModel fit_random_forest(const Matrix& features, std::span<const double> target, const ForestOptions& options);

}  // namespace tsteval
