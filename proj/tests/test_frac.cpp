#include <random>

#include "doctest.h"
#include "graphdist/align.hpp"
#include "graphdist/error.hpp"
#include "graphdist/frac.hpp"
#include "graphdist/transport.hpp"
#include "graphdist/wl.hpp"
#include "oracles.hpp"

using namespace graphdist;

namespace {

Matrix random_cost(std::size_t m, std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix c(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = u(rng);
    return c;
}

// Convex combination of a few random extreme points.
Matrix random_coupling(std::size_t m, std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    Matrix q(m, n);
    double total = 0.0;
    std::vector<std::pair<double, Matrix>> parts;
    for (int k = 0; k < 4; ++k) {
        const double w = e(rng);
        total += w;
        parts.emplace_back(w, transport_lmo(random_cost(m, n, rng)));
    }
    for (auto& [w, v] : parts) q += v * (w / total);
    return q;
}

const Graph kC6 = cycle(6);
const Graph kTwoTriangles = disjoint_union(complete(3), complete(3));

}  // namespace

TEST_CASE("transportation LMO against vertex enumeration") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        const int n = 1 + t % 4;
        const Matrix c = random_cost(n, n, rng);
        double best = INFINITY;
        for (const auto& p : oracle::all_permutations(n)) best = std::min(best, frobenius_inner(c, permutation_coupling(p)));
        const Matrix q = transport_lmo(c);
        CHECK(is_coupling(q));
        CHECK(frobenius_inner(c, q) == doctest::Approx(best).epsilon(1e-12));
    }
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = 1 + t % 5, n = 1 + (t / 5) % 6;
        const Matrix c = random_cost(m, n, rng);
        const Matrix q = transport_lmo(c);
        CHECK(is_coupling(q));
        const double v = frobenius_inner(c, q);
        for (int k = 0; k < 20; ++k) CHECK(v <= frobenius_inner(c, random_coupling(m, n, rng)) + 1e-12);
    }
    // A unique cheapest column per row gives the scaled permutation.
    const Matrix c{{5, 0, 5}, {5, 5, 0}, {0, 5, 5}};
    CHECK(transport_lmo(c) == permutation_coupling(std::vector<int>{1, 2, 0}));
    // Zero cost: the northwest-corner vertex.
    const Matrix nw = transport_lmo(Matrix(2, 3));
    CHECK(nw(0, 0) == doctest::Approx(1.0 / 3));
    CHECK(nw(0, 1) == doctest::Approx(1.0 / 6));
    CHECK(nw(1, 1) == doctest::Approx(1.0 / 6));
    CHECK(nw(1, 2) == doctest::Approx(1.0 / 3));
    CHECK(nw(0, 2) == 0.0);
    CHECK(nw(1, 0) == 0.0);
    const std::vector<std::int64_t> s{3, 1}, d{2, 2};
    const Matrix w = transport_lmo(Matrix{{0, 1}, {1, 0}}, s, d);
    CHECK(w(0, 0) == 0.5);
    CHECK(w(1, 1) == 0.25);
    CHECK_THROWS_AS(transport_lmo(Matrix(2, 2), std::vector<std::int64_t>{1, 1}, std::vector<std::int64_t>{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("fractional isomorphism matches colour refinement") {
    std::mt19937_64 rng(42);
    int positives = 0;
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 7;
        const Graph g = erdos_renyi(n, 0.5, rng());
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        const Graph h = t % 3 == 0 ? g.relabeled(p) : erdos_renyi(n, 0.5, rng());
        const auto fi = fractional_isomorphism(g, h);
        CHECK(fi.isomorphic == !wl::distinguishes(g, h).has_value());
        if (fi.isomorphic) {
            ++positives;
            REQUIRE(fi.witness);
            CHECK(is_coupling(*fi.witness));
            CHECK(intertwines(g, h, *fi.witness));
            CHECK(frac_metric(g, h, FracNorm::Entrywise1).report.value <= 1e-12);
        }
    }
    CHECK(positives >= 20);

    const auto ct = fractional_isomorphism(kC6, kTwoTriangles);
    REQUIRE(ct.isomorphic);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK((*ct.witness)(i, j) == Rational(1, 36));
    CHECK_FALSE(fractional_isomorphism(path(3), complete(3)).isomorphic);
    CHECK_THROWS_AS(fractional_isomorphism(path(3), path(4)), OrderMismatch);
}

TEST_CASE("relaxed distance") {
    const auto ct = frac_metric(kC6, kTwoTriangles, FracNorm::Entrywise1);
    CHECK(ct.report.value <= 1e-6);
    CHECK(ct.report.exact);
    const Graph g = erdos_renyi(6, 0.5, 3);
    const auto same = frac_metric(g, g, FracNorm::Entrywise1);
    CHECK(same.report.value == 0.0);

    std::mt19937_64 rng(43);
    for (int t = 0; t < 10; ++t) {
        const int n = 3 + t % 3;
        const Graph a = erdos_renyi(n, 0.5, rng());
        const Graph b = erdos_renyi(n, 0.5, rng());
        const auto exact = align_metric(a, b, AlignmentMetricKind::edit());
        FracOptions opts;
        opts.max_iterations = 3000;
        const auto r = frac_metric(a, b, FracNorm::Entrywise1, opts);
        CHECK(is_coupling(r.coupling));
        CHECK(r.report.value == doctest::Approx(frac_objective(a, b, FracNorm::Entrywise1, r.coupling)));
        CHECK(*r.report.lower <= r.report.value);
        // The permutation coupling is feasible, so the certified bound sits
        // below the exact distance and the value within tol of it.
        CHECK(*r.report.lower <= exact.normalized_value + 1e-12);
        if (r.report.exact) CHECK(r.report.value <= exact.normalized_value + opts.tol);
        opts.warm_starts = {permutation_coupling(*exact.witness)};
        CHECK(frac_metric(a, b, FracNorm::Entrywise1, opts).report.value <= exact.normalized_value + 1e-12);
        CHECK(frac_objective(a, b, FracNorm::Entrywise1, permutation_coupling(*exact.witness)) ==
              doctest::Approx(exact.normalized_value).epsilon(1e-12));
        for (std::size_t k = 1; k < r.trace.objective.size(); ++k)
            CHECK(r.trace.objective[k] <= r.trace.objective[k - 1]);
        // The certified lower bound holds at every coupling tried.
        for (int k = 0; k < 10; ++k)
            CHECK(*r.report.lower <= frac_objective(a, b, FracNorm::Entrywise1, random_coupling(n, n, rng)) + 1e-12);

        const auto cut = align_metric(a, b, AlignmentMetricKind::cut());
        opts.warm_starts = {permutation_coupling(*cut.witness)};
        opts.max_iterations = 200;
        const auto rc = frac_metric(a, b, FracNorm::Cut, opts);
        CHECK(rc.report.value <= cut.normalized_value + 1e-12);
        CHECK(*rc.report.lower <= rc.report.value);
    }
    // Different orders.
    const auto mixed = frac_metric(path(3), cycle(4), FracNorm::Entrywise1);
    CHECK(is_coupling(mixed.coupling));
    CHECK(frac_metric(complete(2), complete(4), FracNorm::Entrywise1).report.value >= 0.0);
    CHECK(frac_metric(cycle(3), blow_up(cycle(3), 2), FracNorm::Entrywise1).report.value <= 1e-12);
}

TEST_CASE("objective is convex") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const Graph g = erdos_renyi(4 + t % 3, 0.5, rng());
        const Graph h = erdos_renyi(3 + t % 4, 0.5, rng());
        const Matrix q1 = random_coupling(g.order(), h.order(), rng);
        const Matrix q2 = random_coupling(g.order(), h.order(), rng);
        const double l = lam(rng);
        for (auto norm : {FracNorm::Entrywise1, FracNorm::Cut}) {
            const double mix = frac_objective(g, h, norm, q1 * l + q2 * (1 - l));
            CHECK(mix <= l * frac_objective(g, h, norm, q1) + (1 - l) * frac_objective(g, h, norm, q2) + 1e-12);
        }
    }
}

TEST_CASE("rational repair") {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = 1 + t % 5, n = 1 + (t / 5) % 5;
        const Matrix q = random_coupling(m, n, rng);
        for (const Rational eps : {Rational(1, 1000), Rational(1, 1000000)}) {
            const RationalMatrix r = rational_repair(q, eps);
            CHECK(is_coupling(r));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(to_double(r(i, j)) - q(i, j)) <= to_double(eps));
        }
    }
    CHECK_THROWS_AS(rational_repair(flat_coupling(2, 2), Rational(0)), std::invalid_argument);
}
