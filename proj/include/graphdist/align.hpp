#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphdist/graph.hpp"
#include "graphdist/report.hpp"

namespace graphdist {

enum class AlignTag {
    EditEntrywise1,       // ||A_G^pi - A_H||_(1) = 2 * edit distance
    EntrywiseP,           // ||A_G^pi - A_H||_(p)
    LocalOperator,        // ||A_G^pi - A_H||_infinity (= operator 1 by symmetry)
    CutDistance,          // ||A_G^pi - A_H||_cut
    Distortion,           // ||D_G^pi - D_H||_(infinity) on distance matrices
    IsomorphismDistance,  // 0 if isomorphic, else 1
};

struct AlignmentMetricKind {
    AlignTag tag = AlignTag::EditEntrywise1;
    double p = 1.0;  // EntrywiseP only

    static AlignmentMetricKind edit() { return {AlignTag::EditEntrywise1}; }
    static AlignmentMetricKind entrywise(double p) { return {AlignTag::EntrywiseP, p}; }
    static AlignmentMetricKind local() { return {AlignTag::LocalOperator}; }
    static AlignmentMetricKind cut() { return {AlignTag::CutDistance}; }
    static AlignmentMetricKind distortion() { return {AlignTag::Distortion}; }
    static AlignmentMetricKind isomorphism() { return {AlignTag::IsomorphismDistance}; }
};

std::string to_string(const AlignmentMetricKind& kind);

struct AlignOptions {
    // Exhaustive n! enumeration without bounds or symmetry breaking.
    bool exhaustive = false;
    int max_order = 9;
    std::uint64_t node_budget = 50'000'000;
};

// ||M_G^pi - M_H|| for the kind's matrices and norm, where
// M_G^pi(pi v, pi v') = M_G(v, v').
double alignment_cost(const Graph& g, const Graph& h, const AlignmentMetricKind& kind, std::span<const int> pi);

// Exact minimum over bijections with the lexicographically smallest optimal
// witness. Throws OrderMismatch for different orders and BudgetExceeded when
// the order or node budget is exceeded.
MetricReport align_metric(const Graph& g, const Graph& h, const AlignmentMetricKind& kind,
                          const AlignOptions& opts = {});

// Minimum number of edge insertions and deletions; half the entrywise-1 value.
MetricReport edit_distance(const Graph& g, const Graph& h, const AlignOptions& opts = {});
// Edit set D = E(G^pi) xor E(H) for a bijection pi, as pairs of H-vertices.
std::vector<Edge> edit_set(const Graph& g, const Graph& h, std::span<const int> pi);

// Operator-infinity alignment distance: the least possible maximum number of
// edits at one vertex.
MetricReport local_edit_distance(const Graph& g, const Graph& h, const AlignOptions& opts = {});

// min_pi max_{X,X'} |e_G(X,X') - e_H(pi X, pi X')| evaluated with edge
// counts on vertex subsets (order <= 7).
MetricReport cut_distance_graph_form(const Graph& g, const Graph& h);

// alpha * k + beta * (metric after padding the smaller graph with k isolated
// vertices), k = ||G| - |H||.
MetricReport padded_metric(const Graph& g, const Graph& h, const AlignmentMetricKind& kind, double alpha = 0.0,
                           double beta = 1.0, const AlignOptions& opts = {});

struct GromovHausdorffOptions {
    bool exhaustive = false;  // forced when |G| * |H| <= 20 and not disabled below
    std::uint64_t node_budget = 20'000'000;
};

// min over correspondences R of max |D_G(v,v') - D_H(w,w')| over (v,w),(v',w') in R.
// Un-halved: half of this is the Hausdorff-embedding distance.
MetricReport gromov_hausdorff(const Graph& g, const Graph& h, const GromovHausdorffOptions& opts = {});

}  // namespace graphdist
