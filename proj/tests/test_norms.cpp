#include <random>

#include "doctest.h"
#include "graphdist/error.hpp"
#include "graphdist/graph.hpp"
#include "graphdist/norms.hpp"
#include "oracles.hpp"

using namespace graphdist;

namespace {

std::vector<int> shuffled(std::size_t n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

const std::vector<NormKind> kAll = {Entrywise{1}, Entrywise{2}, Entrywise{3.5}, Entrywise{kInfinity},
                                    Operator{OperatorP::One}, Operator{OperatorP::Infinity}, Cut{}};

}  // namespace

TEST_CASE("cut norm matches the double enumeration") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = oracle::random_int_matrix(1 + t % 6, 1 + (t / 6) % 6, -1, 1, rng);
        const auto r = cut_norm_exact(a);
        CHECK(r.value == oracle::cut_norm(a));
        double s = 0.0;
        for (int i : r.rows)
            for (int j : r.cols) s += a(i, j);
        CHECK(r.sign * s == r.value);
        CHECK(entrywise_norm(a, 1) >= r.value);
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        Matrix a(5, 4);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = u(rng);
        CHECK(cut_norm_exact(a).value == doctest::Approx(oracle::cut_norm(a)).epsilon(1e-12));
    }
    CHECK(cut_norm_exact(Matrix{{1, 1}, {1, 1}}).value == 4.0);
    CHECK(cut_norm_exact(Matrix{{1, -1}, {-1, 1}}).value == 1.0);
    CHECK_THROWS_AS(cut_norm_exact(Matrix(25, 25, 1.0)), BudgetExceeded);
    CHECK(cut_norm_exact(Matrix(30, 3, 1.0)).value == 90.0);
}

TEST_CASE("entrywise and operator norms") {
    const Matrix k3 = adjacency(complete(3));
    CHECK(entrywise_norm(k3, 1) == 6.0);
    CHECK(entrywise_norm(Matrix(3, 3), 2.5) == 0.0);
    CHECK_THROWS_AS(entrywise_norm(k3, 0.5), std::invalid_argument);
    CHECK(operator_norm(adjacency(star(3)), OperatorP::Infinity) == 3.0);
    CHECK(operator_norm(Matrix::identity(4), OperatorP::One) == 1.0);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = oracle::random_int_matrix(5, 5, -1, 1, rng);
        const double e2 = entrywise_norm(a, 2);
        CHECK(entrywise_norm(a, 1) == doctest::Approx(e2 * e2).epsilon(1e-14));
        const Matrix s = a + a.transposed();
        CHECK(operator_norm(s, OperatorP::One) == operator_norm(s, OperatorP::Infinity));
    }
}

TEST_CASE("spectral norm") {
    for (int n : {3, 4, 6}) CHECK(spectral_norm(adjacency(complete(n))) == doctest::Approx(n - 1).epsilon(1e-8));
    CHECK(spectral_norm(adjacency(cycle(4))) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(spectral_norm(Matrix(4, 4)) == 0.0);
    // top eigenvector orthogonal to the all-ones vector
    CHECK(spectral_norm(Matrix{{1, -1}, {-1, 1}}) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(spectral_norm(Matrix{{0, 1, -1}, {1, 0, 0}, {-1, 0, 0}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    std::mt19937_64 rng(8);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Matrix a = adjacency(erdos_renyi(7, 0.5, s));
        std::vector<std::vector<double>> rows(7, std::vector<double>(7));
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) rows[i][j] = a(i, j);
        const auto ev = oracle::eigenvalues(rows);
        const double expected = std::max(std::abs(ev.front()), std::abs(ev.back()));
        CHECK(spectral_norm(a) == doctest::Approx(expected).epsilon(1e-7));
    }
    SpectralOptions tight{1e-300, 3};
    try {
        spectral_norm(adjacency(erdos_renyi(9, 0.5, 4)), tight);
        FAIL("expected non-convergence");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_estimate() > 0.0);
    }
}

TEST_CASE("blow-up identities") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 5;
        const Matrix b = oracle::random_int_matrix(n, n, -3, 3, rng);
        for (int l : {2, 3}) {
            const Matrix bl = tensor_blow_up(b, l);
            CHECK(entrywise_norm(bl, 1) == l * l * entrywise_norm(b, 1));
            CHECK(operator_norm(bl, OperatorP::One) == l * operator_norm(b, OperatorP::One));
            CHECK(operator_norm(bl, OperatorP::Infinity) == l * operator_norm(b, OperatorP::Infinity));
            CHECK(cut_norm_exact(bl).value == l * l * cut_norm_exact(b).value);
        }
    }
    const Matrix a = oracle::random_int_matrix(3, 3, -2, 2, rng);
    CHECK(tensor_blow_up(a, 1) == a);
}

TEST_CASE("norm axioms") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const std::size_t r = 2 + t % 5, c = 2 + (t / 5) % 5;
        const Matrix a = oracle::random_int_matrix(r, c, -3, 3, rng);
        const Matrix b = oracle::random_int_matrix(r, c, -3, 3, rng);
        const auto rp = shuffled(r, rng);
        const auto cp = shuffled(c, rng);
        for (const auto& kind : kAll) {
            const double na = norm(a, kind);
            CHECK(norm(permute(a, rp, cp), kind) == doctest::Approx(na).epsilon(1e-12));
            // Operator 1 and infinity swap under transposition; they agree on
            // the symmetric differences that alignment produces.
            if (!std::holds_alternative<Operator>(kind))
                CHECK(norm(a.transposed(), kind) == doctest::Approx(na).epsilon(1e-12));
            const Matrix s = a.rows() == a.cols() ? a + a.transposed() : Matrix{};
            if (!s.empty()) CHECK(norm(s.transposed(), kind) == doctest::Approx(norm(s, kind)).epsilon(1e-12));
            CHECK(norm(a + b, kind) <= na + norm(b, kind) + 1e-9);
            CHECK(norm(-2.5 * a, kind) == doctest::Approx(2.5 * na).epsilon(1e-12));
        }
    }
}
