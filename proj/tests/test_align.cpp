#include <random>

#include "doctest.h"
#include "graphdist/align.hpp"
#include "graphdist/error.hpp"
#include "graphdist/norms.hpp"
#include "oracles.hpp"

using namespace graphdist;

namespace {

// min over relations R covering both sides of the largest distortion.
double brute_gromov_hausdorff(const Graph& g, const Graph& h) {
    const Matrix dg = distance_matrix(g), dh = distance_matrix(h);
    const int m = g.order(), n = h.order();
    double best = INFINITY;
    for (std::uint32_t rel = 1; rel < (1U << (m * n)); ++rel) {
        std::uint32_t rows = 0, cols = 0;
        for (int i = 0; i < m * n; ++i)
            if (rel >> i & 1U) {
                rows |= 1U << (i / n);
                cols |= 1U << (i % n);
            }
        if (rows != (1U << m) - 1 || cols != (1U << n) - 1) continue;
        double worst = 0.0;
        for (int i = 0; i < m * n; ++i)
            for (int j = 0; j < m * n; ++j)
                if ((rel >> i & 1U) && (rel >> j & 1U))
                    worst = std::max(worst, std::abs(dg(i / n, j / n) - dh(i % n, j % n)));
        best = std::min(best, worst);
    }
    return best;
}

bool hamiltonian(const Graph& g) {
    for (const auto& p : oracle::all_permutations(g.order())) {
        if (p[0] != 0) break;
        bool ok = true;
        for (int i = 0; i < g.order() && ok; ++i) ok = g.adjacent(p[i], p[(i + 1) % g.order()]);
        if (ok) return true;
    }
    return false;
}

const std::vector<AlignmentMetricKind> kKinds = {
    AlignmentMetricKind::edit(),        AlignmentMetricKind::entrywise(2.0),
    AlignmentMetricKind::entrywise(kInfinity), AlignmentMetricKind::local(),
    AlignmentMetricKind::cut(),         AlignmentMetricKind::distortion(),
    AlignmentMetricKind::isomorphism()};

const Graph kExampleG(4, {{0, 1}, {0, 2}, {1, 2}});
const Graph kExampleH(4, {{0, 1}, {2, 3}});

}  // namespace

TEST_CASE("branch and bound equals exhaustive enumeration") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 + t % 5;
        const Graph g = erdos_renyi(n, 0.5, rng());
        const Graph h = erdos_renyi(n, 0.5, rng());
        for (const auto& kind : kKinds) {
            AlignOptions ex;
            ex.exhaustive = true;
            const auto fast = align_metric(g, h, kind);
            const auto slow = align_metric(g, h, kind, ex);
            CHECK(fast.value == slow.value);
            CHECK(*fast.witness == *slow.witness);
            CHECK(alignment_cost(g, h, kind, *fast.witness) == fast.value);
        }
    }
}

TEST_CASE("alignment values against direct minimisation") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 15; ++t) {
        const int n = 2 + t % 5;
        const Graph g = erdos_renyi(n, 0.5, rng());
        const Graph h = erdos_renyi(n, 0.5, rng());
        const Matrix a = adjacency(g), b = adjacency(h);
        const double l1 = oracle::align(a, b, [](const Matrix& d) { return entrywise_norm(d, 1); });
        const double frob2 = oracle::align(a, b, [](const Matrix& d) {
            const double f = entrywise_norm(d, 2);
            return f * f;
        });
        const double op1 = oracle::align(a, b, [](const Matrix& d) { return operator_norm(d, OperatorP::One); });
        const double cut = oracle::align(a, b, oracle::cut_norm);
        CHECK(align_metric(g, h, AlignmentMetricKind::edit()).value == l1);
        CHECK(std::round(frob2) == l1);
        CHECK(edit_distance(g, h).value * 2 == l1);
        CHECK(local_edit_distance(g, h).value == op1);
        CHECK(align_metric(g, h, AlignmentMetricKind::cut()).value == cut);
        CHECK(cut <= l1);
    }
}

TEST_CASE("local edit distance is the least maximum edit degree") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 3;
        const Graph g = erdos_renyi(n, 0.5, rng());
        const Graph h = erdos_renyi(n, 0.5, rng());
        CHECK(local_edit_distance(g, h).value == oracle::min_edit_degree(g, h));
    }
    const Graph g = erdos_renyi(6, 0.5, 1);
    CHECK(local_edit_distance(g, g).value == 0.0);
}

TEST_CASE("worked examples") {
    const auto ed = edit_distance(kExampleG, kExampleH);
    CHECK(ed.value == 3.0);
    const auto l1 = align_metric(kExampleG, kExampleH, AlignmentMetricKind::edit());
    CHECK(l1.value == 6.0);
    CHECK(l1.normalized_value == 6.0 / 16.0);
    CHECK(edit_set(kExampleG, kExampleH, *ed.witness).size() == 3);

    const Graph g = erdos_renyi(7, 0.5, 4);
    for (const auto& kind : kKinds) {
        const auto r = align_metric(g, g, kind);
        CHECK(r.value == 0.0);
        CHECK(*r.witness == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
    }
    CHECK(align_metric(complete(4), complete_bipartite(2, 2), AlignmentMetricKind::edit()).value == 4.0);
    CHECK(edit_distance(complete(6), complete_bipartite(3, 3)).value == 6.0);
    const Graph c6 = cycle(6), tt = disjoint_union(complete(3), complete(3));
    CHECK(align_metric(c6, tt, AlignmentMetricKind::cut()).value > 0.0);
    CHECK(align_metric(c6, tt, AlignmentMetricKind::isomorphism()).value == 1.0);
    CHECK(align_metric(c6, c6.relabeled(std::vector<int>{3, 1, 5, 0, 2, 4}), AlignmentMetricKind::isomorphism())
              .value == 0.0);
    CHECK(align_metric(c6, tt, AlignmentMetricKind::distortion()).sentinel_used);
    CHECK_THROWS_AS(align_metric(c6, path(5), AlignmentMetricKind::edit()), OrderMismatch);
    AlignOptions small;
    small.max_order = 5;
    CHECK_THROWS_AS(align_metric(c6, tt, AlignmentMetricKind::edit(), small), BudgetExceeded);
    small.max_order = 9;
    small.node_budget = 3;
    CHECK_THROWS_AS(align_metric(c6, tt, AlignmentMetricKind::edit(), small), BudgetExceeded);
}

TEST_CASE("Hamiltonian cycles through edit distance to a cycle") {
    std::mt19937_64 rng(34);
    int checked = 0;
    for (int t = 0; checked < 12; ++t) {
        const int n = 4 + t % 4;
        const Graph g = erdos_renyi(n, 0.55, rng());
        if (static_cast<int>(g.edge_count()) < n) continue;
        ++checked;
        const double m = static_cast<double>(g.edge_count());
        CHECK((edit_distance(g, cycle(n)).value <= m - n) == hamiltonian(g));
    }
}

TEST_CASE("metric properties") {
    std::mt19937_64 rng(35);
    for (int t = 0; t < 8; ++t) {
        const Graph f = erdos_renyi(5, 0.5, rng());
        const Graph g = erdos_renyi(5, 0.5, rng());
        const Graph h = erdos_renyi(5, 0.5, rng());
        for (const auto& kind : kKinds) {
            const double fg = align_metric(f, g, kind).value;
            CHECK(fg == align_metric(g, f, kind).value);
            CHECK(align_metric(f, h, kind).value <= fg + align_metric(g, h, kind).value + 1e-12);
        }
        const double inf = align_metric(f, g, AlignmentMetricKind::entrywise(kInfinity)).value;
        CHECK(inf == (isomorphic(f, g) ? 0.0 : 1.0));
    }
}

TEST_CASE("blow-ups never increase normalised distances") {
    std::mt19937_64 rng(36);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + t % 3;
        const Graph g = erdos_renyi(n, 0.5, rng());
        const Graph h = erdos_renyi(n, 0.5, rng());
        for (const auto& kind : {AlignmentMetricKind::edit(), AlignmentMetricKind::local(), AlignmentMetricKind::cut()}) {
            const double base = align_metric(g, h, kind).normalized_value;
            const double doubled = align_metric(blow_up(g, 2), blow_up(h, 2), kind).normalized_value;
            CHECK(doubled <= base + 1e-12);
        }
    }
}

TEST_CASE("graph form of the cut distance") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 12; ++t) {
        const int n = 1 + t % 5;
        const Graph g = erdos_renyi(n, 0.5, rng());
        const Graph h = erdos_renyi(n, 0.5, rng());
        CHECK(cut_distance_graph_form(g, h).value == align_metric(g, h, AlignmentMetricKind::cut()).value);
    }
    CHECK(cut_distance_graph_form(complete(2), edgeless(2)).value == 2.0);
    CHECK(cut_distance_graph_form(cycle(5), cycle(5)).value == 0.0);
}

TEST_CASE("padding") {
    const auto r = padded_metric(complete(3), pad(complete(3), 2), AlignmentMetricKind::edit());
    CHECK(r.value == 0.0);
    CHECK(padded_metric(complete(3), pad(complete(3), 2), AlignmentMetricKind::edit(), 1.0, 1.0).value == 2.0);
    CHECK(padded_metric(cycle(4), path(4), AlignmentMetricKind::edit(), 0.0, 3.0).value ==
          3.0 * align_metric(cycle(4), path(4), AlignmentMetricKind::edit()).value);
}

TEST_CASE("Gromov-Hausdorff") {
    CHECK(gromov_hausdorff(path(2), path(3)).value == 1.0);
    CHECK(brute_gromov_hausdorff(path(2), path(3)) == 1.0);
    std::mt19937_64 rng(38);
    for (int t = 0; t < 10; ++t) {
        const int m = 1 + t % 3, n = 1 + (t / 3) % 4;
        const Graph g = erdos_renyi(m, 0.6, rng());
        const Graph h = erdos_renyi(n, 0.6, rng());
        const auto r = gromov_hausdorff(g, h);
        CHECK(r.value == brute_gromov_hausdorff(g, h));
        GromovHausdorffOptions bb;
        bb.exhaustive = false;
        CHECK(r.value == gromov_hausdorff(g, h, bb).value);
    }
    for (int t = 0; t < 6; ++t) {
        const Graph g = erdos_renyi(5, 0.6, rng());
        const Graph h = erdos_renyi(5, 0.6, rng());
        CHECK(gromov_hausdorff(g, h).value <= align_metric(g, h, AlignmentMetricKind::distortion()).value);
        CHECK(gromov_hausdorff(g, g.relabeled(std::vector<int>{4, 2, 0, 1, 3})).value == 0.0);
    }
}
