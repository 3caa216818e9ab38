#pragma once

#include <cstdint>
#include <span>

#include "graphdist/matrix.hpp"

namespace graphdist {

// Minimises <cost, X> over nonnegative X with row sums `supply` and column
// sums `demand` (equal totals) by the transportation simplex: northwest-corner
// start, MODI potentials, Bland's rule. Returns X / total, an extreme point.
// A zero cost matrix returns the northwest-corner vertex.
Matrix transport_lmo(const Matrix& cost, std::span<const std::int64_t> supply, std::span<const std::int64_t> demand);

// Uniform marginals: row sums 1/m and column sums 1/n.
Matrix transport_lmo(const Matrix& cost);

// <a, b> = sum_ij a_ij b_ij.
double frobenius_inner(const Matrix& a, const Matrix& b);

}  // namespace graphdist
