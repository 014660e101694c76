#include "tsteval/transport.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tsteval/error.hpp"

namespace tsteval {
namespace {

constexpr double kMassTolerance = 1e-14;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

// Nodes: sources 0..m-1, sinks m..m+n-1, a super source S and a super sink T.
// Dijkstra runs on reduced costs c(u,v) + pi(u) - pi(v), which stay
// non-negative on every residual arc after each potential update.
TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand, const Matrix& cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  if (cost.rows() != m || cost.cols() != n) throw DataError("transport cost matrix shape mismatch");
  for (double s : supply)
    if (!(s >= 0.0)) throw DataError("negative supply");
  for (double d : demand)
    if (!(d >= 0.0)) throw DataError("negative demand");

  TransportPlan plan;
  plan.flow = Matrix(m, n, 0.0);
  if (m == 0 || n == 0) return plan;

  std::vector<double> left(supply.begin(), supply.end());
  std::vector<double> need(demand.begin(), demand.end());
  const std::size_t src = m + n;
  const std::size_t dst = m + n + 1;
  const std::size_t nodes = m + n + 2;
  std::vector<double> potential(nodes, 0.0);
  double min_cost = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) min_cost = std::min(min_cost, cost(i, j));
  for (std::size_t j = 0; j < n; ++j) potential[m + j] = min_cost;
  potential[dst] = min_cost;

  std::vector<double> dist(nodes);
  std::vector<std::size_t> parent(nodes);
  std::vector<char> done(nodes);

  auto relax = [&](std::size_t u, std::size_t v, double arc_cost) {
    if (done[v]) return;
    const double rc = std::max(0.0, arc_cost + potential[u] - potential[v]);
    if (dist[u] + rc < dist[v]) {
      dist[v] = dist[u] + rc;
      parent[v] = u;
    }
  };

  for (;;) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), nodes);
    std::fill(done.begin(), done.end(), 0);
    dist[src] = 0.0;
    for (;;) {
      std::size_t u = nodes;
      for (std::size_t v = 0; v < nodes; ++v)
        if (!done[v] && dist[v] < kInf && (u == nodes || dist[v] < dist[u])) u = v;
      if (u == nodes || u == dst) break;
      done[u] = 1;
      if (u == src) {
        for (std::size_t i = 0; i < m; ++i)
          if (left[i] > kMassTolerance) relax(u, i, 0.0);
      } else if (u < m) {
        for (std::size_t j = 0; j < n; ++j) relax(u, m + j, cost(u, j));
      } else {
        const std::size_t j = u - m;
        if (need[j] > kMassTolerance) relax(u, dst, 0.0);
        for (std::size_t i = 0; i < m; ++i)
          if (plan.flow(i, j) > kMassTolerance) relax(u, i, -cost(i, j));
      }
    }
    if (dist[dst] == kInf) break;
    for (std::size_t v = 0; v < nodes; ++v) potential[v] += std::min(dist[v], dist[dst]);

    // Path is S -> i -> j (-> i' -> j' ...) -> T.
    const std::size_t last_sink = parent[dst];
    double amount = need[last_sink - m];
    std::size_t v = last_sink;
    while (parent[v] != src) {
      const std::size_t u = parent[v];
      if (u >= m) amount = std::min(amount, plan.flow(v, u - m));
      v = u;
    }
    const std::size_t origin = v;
    amount = std::min(amount, left[origin]);
    v = last_sink;
    while (v != origin) {
      const std::size_t u = parent[v];
      if (u < m) plan.flow(u, v - m) += amount;
      else plan.flow(v, u - m) -= amount;
      v = u;
    }
    left[origin] -= amount;
    need[last_sink - m] -= amount;
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (plan.flow(i, j) < 0.0) plan.flow(i, j) = 0.0;
      plan.cost += plan.flow(i, j) * cost(i, j);
    }
  return plan;
}

}  // namespace tsteval
