#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsteval {

struct Correlation {
  std::optional<double> value;  // null when the input is degenerate
  std::string reason;            // why value is null
  std::size_t n_used = 0;
};

struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;
};

/// Pairwise null deletion.
PairedSample paired(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y);

Correlation pearson(std::span<const double> x, std::span<const double> y);
Correlation spearman(std::span<const double> x, std::span<const double> y);
/// Tau-b through Knight's O(n log n) counting.
Correlation kendall_tau_b(std::span<const double> x, std::span<const double> y);
/// Tau-b by scanning all pairs.
Correlation kendall_tau_b_quadratic(std::span<const double> x, std::span<const double> y);

/// 1-based ranks, ties get their mean rank.
std::vector<double> average_ranks(std::span<const double> v);

}  // namespace tsteval
