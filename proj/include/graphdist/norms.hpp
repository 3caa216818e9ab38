#pragma once

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include "graphdist/matrix.hpp"

namespace graphdist {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Entrywise p-norm, p in [1, inf]. Frobenius is Entrywise{2}.
struct Entrywise {
    double p = 1.0;
};
enum class OperatorP { One, Two, Infinity };
struct Operator {
    OperatorP p = OperatorP::Infinity;
};
struct Cut {};

using NormKind = std::variant<Entrywise, Operator, Cut>;

inline NormKind frobenius() { return Entrywise{2.0}; }

// (sum |a_ij|^p)^(1/p); max |a_ij| for p = inf. Integral matrices with p = 1
// are accumulated exactly in 64-bit integers.
double entrywise_norm(const Matrix& a, double p);

// p = One: max column absolute sum; p = Infinity: max row absolute sum.
// p = Two forwards to spectral_norm (symmetric input only).
double operator_norm(const Matrix& a, OperatorP p);

struct SpectralOptions {
    double tol = 1e-9;
    int max_iterations = 10'000;
};

// Largest absolute eigenvalue of a symmetric matrix by power iteration on
// A*A from the normalised all-ones vector. Throws ConvergenceError (with the
// best estimate) if the Rayleigh quotient has not settled within the cap.
double spectral_norm(const Matrix& a, const SpectralOptions& opts = {});

// Witness of the cut norm: sign * sum over rows x cols equals the value.
struct CutNormResult {
    double value = 0.0;
    std::vector<int> rows;
    std::vector<int> cols;
    int sign = 1;
};

inline constexpr std::size_t kCutNormMaxSide = 24;

// Exact cut norm max_{S,T} |sum_{S x T} a_ij|. Enumerates subsets of the
// smaller side (<= 24 lines) and picks the other side greedily for each sign.
// Ties resolve to the lexicographically smallest (S, T) in enumeration order.
CutNormResult cut_norm_exact(const Matrix& a);

// tensor_blow_up(a, l)((i,s),(j,t)) = a(i,j) with (i,s) at index i*l + s.
Matrix tensor_blow_up(const Matrix& a, int l);

double norm(const Matrix& a, const NormKind& kind);

}  // namespace graphdist
