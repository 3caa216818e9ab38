#include <random>

#include "doctest.h"
#include "graphdist/error.hpp"
#include "graphdist/graph.hpp"
#include "graphdist/norms.hpp"
#include "oracles.hpp"

using namespace graphdist;

TEST_CASE("isomorphism agrees with exhaustive search") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 6;
        const Graph g = erdos_renyi(n, 0.5, rng());
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        const Graph h = trial % 2 ? g.relabeled(p) : erdos_renyi(n, 0.5, rng());
        const bool expected = oracle::isomorphic(g, h);
        const auto w = find_isomorphism(g, h);
        CHECK(w.has_value() == expected);
        if (w) CHECK(oracle::is_isomorphism(g, h, *w));
    }
    CHECK_FALSE(isomorphic(cycle(6), disjoint_union(complete(3), complete(3))));
    CHECK(isomorphic(complete_bipartite(2, 2), cycle(4)));
}

TEST_CASE("edge-list parsing") {
    const Graph k3 = from_edge_list("3 3\n0 1\n1 2\n2 0");
    CHECK(k3 == complete(3));
    CHECK(from_edge_list("4 0") == edgeless(4));
    CHECK_THROWS_AS(from_edge_list("2 1\n0 0"), ParseError);
    try {
        from_edge_list("3 2\n0 1\n1 7\n");
        FAIL("accepted out-of-range vertex");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(from_edge_list("3 2\n0 1\nx y\n"), ParseError);
    CHECK(from_edge_list("3 2\n0 1\n1 0\n").edge_count() == 1);
}

TEST_CASE("formats round-trip exactly") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Graph g = erdos_renyi(7, 0.4, s);
        CHECK(from_edge_list(to_edge_list(g)) == g);
        CHECK(from_json_text(to_json_text(g)) == g);
        CHECK(to_json_text(from_json_text(to_json_text(g))) == to_json_text(g));
        CHECK(from_adjacency(adjacency(g)) == g);
    }
}

TEST_CASE("blow-up") {
    // Four vertices, five edges: K4 minus an edge.
    const Graph fig2(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}});
    const Graph b = blow_up(fig2, 6);
    CHECK(b.order() == 24);
    CHECK(b.edge_count() == 180);
    CHECK(isomorphic(blow_up(fig2, 1), fig2));
    CHECK(oracle::isomorphic(blow_up(complete(2), 2), cycle(4)));
    CHECK_THROWS_AS(blow_up(fig2, 0), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 12; ++t) {
        const Graph g = erdos_renyi(1 + t % 4, 0.5, rng());
        for (int k = 1; k <= 3; ++k) {
            CHECK(blow_up(g, k).edge_count() == static_cast<std::size_t>(k * k) * g.edge_count());
            CHECK(adjacency(blow_up(g, k)) == tensor_blow_up(adjacency(g), k));
            for (int l = 1; l <= 3; ++l) CHECK(isomorphic(blow_up(blow_up(g, k), l), blow_up(g, k * l)));
        }
    }
}

TEST_CASE("padding") {
    const Graph p = pad(complete(3), 2);
    CHECK(p.order() == 5);
    CHECK(p.edge_count() == 3);
    CHECK(pad(cycle(5), 0) == cycle(5));
    const Matrix a = adjacency(p);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(a(i, j) == (i < 3 && j < 3 && i != j ? 1.0 : 0.0));
}

TEST_CASE("distance matrix") {
    CHECK(distance_matrix(path(3))(0, 2) == 2.0);
    const Matrix k4 = distance_matrix(complete(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(k4(i, j) == (i == j ? 0.0 : 1.0));
    const Matrix two = distance_matrix(Graph(4, {{0, 1}, {2, 3}}));
    CHECK(two(0, 2) == 8.0);
    CHECK(two(1, 3) == 8.0);
    CHECK(two(0, 1) == 1.0);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const Graph g = erdos_renyi(8, 0.45, s);
        if (!is_connected(g)) continue;
        const Matrix d = distance_matrix(g);
        CHECK(d.is_symmetric());
        for (int u = 0; u < 8; ++u)
            for (int v = 0; v < 8; ++v)
                for (int w = 0; w < 8; ++w) CHECK(d(u, w) <= d(u, v) + d(v, w));
    }
}

TEST_CASE("generators") {
    CHECK(complete(4).edge_count() == 6);
    CHECK_THROWS_AS(cycle(2), std::invalid_argument);
    CHECK(erdos_renyi(10, 0.5, 99) == erdos_renyi(10, 0.5, 99));
    CHECK(erdos_renyi(10, 0.0, 1).edge_count() == 0);
    CHECK(erdos_renyi(10, 1.0, 1).edge_count() == 45);
    const Matrix a = adjacency(star(3));
    CHECK(a.is_symmetric());
    CHECK(a(0, 1) + a(0, 2) + a(0, 3) == 3.0);
}
