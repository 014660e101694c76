#include "tsteval/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "tsteval/error.hpp"

namespace tsteval {
namespace {

constexpr std::size_t kMinPairs = 3;

Correlation degenerate(std::size_t n, std::string why) {
  Correlation c;
  c.n_used = n;
  c.reason = std::move(why);
  return c;
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v[0]; });
}

std::optional<Correlation> check(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("correlation inputs differ in length");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw DataError("non-finite value in correlation input");
  if (x.size() < kMinPairs) return degenerate(x.size(), "fewer than 3 pairs");
  if (constant(x) || constant(y)) return degenerate(x.size(), "constant input");
  return std::nullopt;
}

std::int64_t pairs_of(std::int64_t k) { return k * (k - 1) / 2; }

// Pairs tied within runs of equal keys of a sorted sequence.
template <class Eq>
std::int64_t tied_pairs(std::size_t n, Eq eq) {
  std::int64_t t = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && eq(i, j)) ++j;
    t += pairs_of(static_cast<std::int64_t>(j - i));
    i = j;
  }
  return t;
}

Correlation tau_from_counts(std::size_t n, std::int64_t s, std::int64_t n1, std::int64_t n2) {
  const std::int64_t n0 = pairs_of(static_cast<std::int64_t>(n));
  Correlation c;
  c.n_used = n;
  const double denom = std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  c.value = std::clamp(static_cast<double>(s) / denom, -1.0, 1.0);
  return c;
}

// Merge sort counting inversions (strict order) of v.
std::int64_t count_swaps(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t s = count_swaps(v, buf, lo, mid) + count_swaps(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      s += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return s;
}

}  // namespace

PairedSample paired(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y) {
  if (x.size() != y.size()) throw Error("paired inputs differ in length");
  PairedSample p;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] && y[i]) {
      p.x.push_back(*x[i]);
      p.y.push_back(*y[i]);
    }
  return p;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (auto bad = check(x, y)) return *bad;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return degenerate(x.size(), "constant input");
  Correlation c;
  c.n_used = x.size();
  c.value = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return c;
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double mean = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) r[order[k]] = mean;
    i = j;
  }
  return r;
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  if (auto bad = check(x, y)) return *bad;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

Correlation kendall_tau_b_quadratic(std::span<const double> x, std::span<const double> y) {
  if (auto bad = check(x, y)) return *bad;
  std::int64_t s = 0, n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool tx = x[i] == x[j];
      const bool ty = y[i] == y[j];
      if (tx) ++n1;
      if (ty) ++n2;
      if (tx || ty) continue;
      s += ((x[i] < x[j]) == (y[i] < y[j])) ? 1 : -1;
    }
  return tau_from_counts(x.size(), s, n1, n2);
}

Correlation kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (auto bad = check(x, y)) return *bad;
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  const auto n1 = tied_pairs(n, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]]; });
  const auto n3 = tied_pairs(n, [&](std::size_t i, std::size_t j) {
    return x[order[i]] == x[order[j]] && y[order[i]] == y[order[j]];
  });
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  std::vector<double> buf(n);
  const auto swaps = count_swaps(ys, buf, 0, n);
  const auto n2 = tied_pairs(n, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });
  const std::int64_t n0 = pairs_of(static_cast<std::int64_t>(n));
  const std::int64_t s = n0 - n1 - n2 + n3 - 2 * swaps;
  return tau_from_counts(n, s, n1, n2);
}

}  // namespace tsteval
