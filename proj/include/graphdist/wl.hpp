#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "graphdist/graph.hpp"

namespace graphdist::wl {

// A colour is identified by its iteration and an interned integer. The
// interned integer is the rank of the colour's canonical code (the sorted
// multiset of neighbour colours from the previous iteration) among all codes
// occurring at that iteration, so ids depend only on the colour trees present.
struct ColorId {
    int iteration = 0;
    int id = 0;
    friend auto operator<=>(const ColorId&, const ColorId&) = default;
};

// histogram[i][c] = number of vertices with colour id c at iteration i.
// Ids are shared by all graphs refined together.
struct ColorHistogram {
    std::vector<std::vector<std::int64_t>> per_iteration;

    std::size_t iterations() const { return per_iteration.size(); }
};

struct Refinement {
    // colors[i][v]: interned colour of vertex v after i iterations.
    std::vector<std::vector<int>> colors;
    // Least i whose partition equals the partition of iteration i+1. The
    // partition never changes afterwards. Always <= max(order-1, 0).
    int stable_iteration = 0;

    int class_count(std::size_t iteration) const;
};

// Refines one graph. With a cap, at most `max_iterations` rounds are run.
Refinement refine(const Graph& g, std::optional<int> max_iterations = std::nullopt);

// Refines the disjoint union of all graphs so colours are comparable. The
// joint stable iteration is that of the union.
struct JointRefinement {
    std::vector<Refinement> per_graph;  // colours restricted to each graph
    std::vector<ColorHistogram> histograms;
    int stable_iteration = 0;
    std::vector<int> colors_at_iteration;  // number of distinct union colours per iteration
};

JointRefinement refine_jointly(std::span<const Graph> graphs, std::optional<int> max_iterations = std::nullopt);

// Least iteration at which the colour histograms of g and h differ, or
// nullopt if the stable colourings agree.
std::optional<int> distinguishes(const Graph& g, const Graph& h);

enum class KernelMode { Geometric, Truncated };

struct KernelOptions {
    KernelMode mode = KernelMode::Geometric;
    int iterations = 5;  // truncated mode only; iterations 0..iterations are summed
};

// Geometric mode: sum over i >= 0 of 2^-i <wl_g^i, wl_h^i>, with the constant
// tail after joint stabilisation summed in closed form.
double kernel(const Graph& g, const Graph& h, const KernelOptions& opts = {});
double metric(const Graph& g, const Graph& h, const KernelOptions& opts = {});

// Gram matrix K(g_i, g_j) over a collection.
std::vector<std::vector<double>> gram_matrix(std::span<const Graph> graphs, const KernelOptions& opts = {});

// 0 when WL does not distinguish g and h, otherwise 1/k for the least
// distinguishing iteration k (an order mismatch, k = 0, counts as k = 1).
double depth_metric(const Graph& g, const Graph& h);

}  // namespace graphdist::wl
