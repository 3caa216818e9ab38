#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graphdist {

// Result of a distance computation. `value` is the raw metric; the
// normalised value divides by n^2 (edit and cut kinds) or n (local kind).
struct MetricReport {
    std::string metric;
    double value = 0.0;
    double normalized_value = 0.0;
    // Bijection V_G -> V_H realising `value`, when the metric has one.
    std::optional<std::vector<int>> witness;
    // Correspondence realising a Gromov-Hausdorff value.
    std::optional<std::vector<std::pair<int, int>>> correspondence;
    // False when `value` is only an upper bound (iterative solvers).
    bool exact = true;
    // A distance matrix used the disconnected-pair sentinel.
    bool sentinel_used = false;
    std::string solver;
    std::optional<double> lower;
    std::optional<double> upper;
};

}  // namespace graphdist
