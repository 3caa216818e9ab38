#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "graphdist/graph.hpp"
#include "graphdist/rational.hpp"
#include "graphdist/report.hpp"

namespace graphdist {

// ---- couplings -----------------------------------------------------------------
// A coupling of G and H is a nonnegative |G| x |H| matrix with row sums 1/|G|
// and column sums 1/|H|.

bool is_coupling(const Matrix& q, double tol = 1e-9);
bool is_coupling(const RationalMatrix& q);
Matrix flat_coupling(int m, int n);
// Q(v, pi[v]) = 1/n.
Matrix permutation_coupling(std::span<const int> pi);

// Rational coupling within `eps` of q in every entry. q is mixed towards the
// flat coupling, rounded down to a grid on all but the last row and column,
// and the last row and column are filled in to restore the marginals exactly.
// Throws InternalConsistencyError if the result fails its exact check.
RationalMatrix rational_repair(const Matrix& q, const Rational& eps);

// ---- relaxed distance ----------------------------------------------------------

enum class FracNorm { Entrywise1, Cut };

struct SolverTrace {
    int iterations = 0;
    std::vector<double> objective;  // value at the start of each iteration, non-increasing
    std::vector<double> gap;        // objective minus the best certified lower bound
    std::uint64_t seed = 0;
};

struct FracOptions {
    double tol = 1e-6;
    int max_iterations = 100'000;
    // Iterations without progress before giving up at the finest smoothing.
    int stall_iterations = 500;
    // Extra starting couplings; the best of these and the built-in ones is used.
    std::vector<Matrix> warm_starts;
    std::uint64_t seed = 0;
};

struct FracResult {
    MetricReport report;  // value = objective at `coupling`; lower = certified bound
    Matrix coupling;
    SolverTrace trace;
};

// || (1/m) A_G Q - (1/n) Q A_H || for the chosen norm.
double frac_objective(const Graph& g, const Graph& h, FracNorm norm, const Matrix& q);

// Conditional gradient over the couplings with the exact transportation LMO.
// The report is exact when the objective is within tol of a certified lower
// bound; otherwise value is an upper bound and `lower` a valid lower bound.
FracResult frac_metric(const Graph& g, const Graph& h, FracNorm norm, const FracOptions& opts = {});

// ---- fractional isomorphism ---------------------------------------------------

// Coupling that spreads each vertex uniformly over the vertices of H with the
// same stable colour. Exists when every colour class has the same share of
// vertices in both graphs.
std::optional<RationalMatrix> equitable_coupling(const Graph& g, const Graph& h);

// A_G Q = Q A_H, checked exactly.
bool intertwines(const Graph& g, const Graph& h, const RationalMatrix& q);

struct FractionalIsomorphism {
    bool isomorphic = false;
    std::optional<RationalMatrix> witness;  // coupling with A_G Q = Q A_H
};

FractionalIsomorphism fractional_isomorphism(const Graph& g, const Graph& h);

}  // namespace graphdist
