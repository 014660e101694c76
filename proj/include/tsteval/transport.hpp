#pragma once

#include <span>
#include <vector>

#include "tsteval/types.hpp"

namespace tsteval {

struct TransportPlan {
  double cost = 0.0;
  Matrix flow;  // supply x demand
};

/// Exact minimum-cost transportation problem: rows ship `supply`, columns
/// receive `demand`, cost(i, j) per unit. Both marginals must be
/// non-negative with (nearly) equal totals; the smaller total is shipped.
/// Solved by successive shortest augmenting paths with node potentials.
TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand, const Matrix& cost);

}  // namespace tsteval
