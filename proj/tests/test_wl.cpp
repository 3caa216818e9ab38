#include <chrono>
#include <random>

#include "doctest.h"
#include "graphdist/graph.hpp"
#include "graphdist/wl.hpp"
#include "oracles.hpp"

using namespace graphdist;

namespace {

std::vector<std::int64_t> sorted_counts(const Graph& g, std::size_t iteration) {
    const auto r = wl::refine(g);
    const auto& colors = r.colors.at(std::min(iteration, r.colors.size() - 1));
    std::vector<std::int64_t> counts(r.class_count(std::min(iteration, r.colors.size() - 1)), 0);
    for (int c : colors) ++counts[c];
    std::sort(counts.begin(), counts.end());
    return counts;
}

bool refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
    std::map<int, int> parent;
    for (std::size_t v = 0; v < fine.size(); ++v) {
        auto [it, fresh] = parent.emplace(fine[v], coarse[v]);
        if (!fresh && it->second != coarse[v]) return false;
    }
    return true;
}

const Graph kC6 = cycle(6);
const Graph kTwoTriangles = disjoint_union(complete(3), complete(3));

}  // namespace

TEST_CASE("refinement examples") {
    for (std::size_t i = 0; i < 4; ++i) CHECK(sorted_counts(complete(3), i) == std::vector<std::int64_t>{3});
    CHECK(sorted_counts(path(3), 1) == std::vector<std::int64_t>{1, 2});
    // a=0, b=1, c=2, d=3 with edges ab, ac, ad, cd: the rooted trees of depth
    // two at c and d coincide, so three classes remain.
    const Graph fig4(4, {{0, 1}, {0, 2}, {0, 3}, {2, 3}});
    CHECK(sorted_counts(fig4, 2) == std::vector<std::int64_t>{1, 1, 2});
}

TEST_CASE("refinement structure") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 40; ++t) {
        const int n = 1 + t % 10;
        const Graph g = erdos_renyi(n, 0.3, rng());
        const auto r = wl::refine(g);
        CHECK(r.stable_iteration <= std::max(n - 1, 0));
        for (std::size_t i = 0; i + 1 < r.colors.size(); ++i) CHECK(refines(r.colors[i + 1], r.colors[i]));
        const auto capped = wl::refine(g, 1);
        CHECK(capped.colors.size() <= 2);
    }
}

TEST_CASE("distinguishing iteration") {
    CHECK_FALSE(wl::distinguishes(kC6, kTwoTriangles).has_value());
    CHECK(wl::distinguishes(path(3), complete(3)) == 1);
    const Graph g = erdos_renyi(7, 0.5, 1);
    CHECK_FALSE(wl::distinguishes(g, g).has_value());
    CHECK(wl::depth_metric(path(3), complete(3)) == 1.0);
    CHECK(wl::depth_metric(kC6, kTwoTriangles) == 0.0);
    CHECK(wl::depth_metric(path(3), path(4)) == 1.0);

    std::mt19937_64 rng(9);
    std::vector<Graph> pool;
    for (int t = 0; t < 12; ++t) pool.push_back(erdos_renyi(4 + t % 3, 0.5, rng()));
    pool.push_back(kC6);
    pool.push_back(kTwoTriangles);
    for (const auto& f : pool)
        for (const auto& g : pool)
            for (const auto& h : pool)
                CHECK(wl::depth_metric(f, h) <= std::max(wl::depth_metric(f, g), wl::depth_metric(g, h)));
}

TEST_CASE("kernel and metric") {
    CHECK(wl::kernel(complete(1), complete(1)) == 2.0);
    wl::KernelOptions trunc{wl::KernelMode::Truncated, 5};
    CHECK(wl::kernel(complete(1), complete(1), trunc) == 6.0);
    std::mt19937_64 rng(12);
    std::vector<Graph> graphs;
    for (int t = 0; t < 10; ++t) graphs.push_back(erdos_renyi(2 + t % 7, 0.5, rng()));
    for (const auto& mode : {wl::KernelOptions{}, trunc}) {
        const auto k = wl::gram_matrix(graphs, mode);
        const auto ev = oracle::eigenvalues(k);
        CHECK(*std::min_element(ev.begin(), ev.end()) >= -1e-8);
        for (std::size_t i = 0; i < graphs.size(); ++i)
            for (std::size_t j = 0; j < graphs.size(); ++j) {
                CHECK(k[i][j] == k[j][i]);
                CHECK(wl::kernel(graphs[i], graphs[j], mode) == k[i][j]);
            }
    }
    CHECK(wl::metric(kC6, kTwoTriangles) == 0.0);
    CHECK(wl::metric(path(3), complete(3)) > 0.0);
    CHECK(wl::metric(graphs[3], graphs[3]) == 0.0);
}

TEST_CASE("refinement cost grows near-linearly") {
    auto time_of = [](int n) {
        const Graph g = erdos_renyi(n, 8.0 / n, 17);
        const auto start = std::chrono::steady_clock::now();
        for (int rep = 0; rep < 3; ++rep) wl::refine(g);
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    const double small = std::max(time_of(200), 1e-4);
    const double large = time_of(2000);
    CHECK(large <= 30.0 * small);
}
