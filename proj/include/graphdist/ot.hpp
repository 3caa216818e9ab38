#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphdist/align.hpp"
#include "graphdist/frac.hpp"
#include "graphdist/graph.hpp"
#include "graphdist/rational.hpp"
#include "graphdist/report.hpp"

namespace graphdist {

// Probability distribution on the vertices of a graph. Probabilities are kept
// as exact fractions; the transportation solver works on a common denominator,
// which therefore has to stay below 2^40.
class VertexWeights {
public:
    static VertexWeights uniform(int n);
    // p(v) = counts[v] / sum(counts). Counts must be nonnegative with a positive sum.
    static VertexWeights from_counts(std::span<const std::int64_t> counts);
    // Throws std::invalid_argument unless the entries are nonnegative and sum to 1.
    explicit VertexWeights(std::vector<Rational> p);

    std::size_t size() const { return p_.size(); }
    const Rational& operator[](std::size_t v) const { return p_[v]; }
    bool is_uniform() const;
    std::vector<double> to_doubles() const;

private:
    VertexWeights() = default;
    std::vector<Rational> p_;
};

// ---- optimal transport ---------------------------------------------------------

enum class OtKind {
    L1,   // sum |A_G(v,v') - A_H(w,w')| Q(v,w) Q(v',w')
    Cut,  // max over sets S, T of vertex pairs of |sum_{S x T} (A_G - A_H) Q Q|
    Gw,   // L1 on distance matrices (Gromov-Wasserstein)
};

std::string to_string(OtKind kind);

struct OtOptions {
    int restarts = 4;
    std::uint64_t seed = 0;
    int max_iterations = 2000;
    double tol = 1e-12;  // stop when a step improves the objective by less
    // Seeding restart 0 from an exact alignment of blow-ups of this order or less.
    int seed_align_order = 12;
};

struct OtResult {
    MetricReport report;  // value = best objective found, an upper bound on the infimum
    Matrix coupling;
    SolverTrace trace;    // of the winning restart
    bool converged = true;
};

// Objective of `kind` at a coupling q of (G, p_G) and (H, p_H).
double ot_objective(const Graph& g, const Graph& h, OtKind kind, const Matrix& q);

// Conditional gradient from several starts: restart 0 from the coupling of an
// exact blow-up alignment (uniform weights only), the rest from random mixtures
// of transportation vertices. OT-Cut needs |G||H| <= 16.
OtResult ot_metric(const Graph& g, const Graph& h, OtKind kind, const VertexWeights& pg, const VertexWeights& ph,
                   const OtOptions& opts = {});
OtResult ot_metric(const Graph& g, const Graph& h, OtKind kind, const OtOptions& opts = {});

// Coupling induced by a bijection between G^(L/m) and H^(L/n):
// Q(v,w) = #{copies of v sent to copies of w} / L.
Matrix blowup_coupling(int m, int n, std::span<const int> pi);

// ---- blow-up sequences ---------------------------------------------------------

enum class BlowupKind { L1, Local, Cut };

std::string to_string(BlowupKind kind);

struct BlowupSequence {
    int base = 0;                // L = lcm(|G|, |H|); entry l compares orders l * L
    std::vector<double> values;  // normalised exact alignment values, l = 1, 2, ...
    std::vector<std::vector<int>> witnesses;
    bool truncated = false;      // stopped early on the alignment budget
};

// Exact alignment of G^(lL/m) and H^(lL/n) for l = 1..lmax. Every value is an
// upper bound on the blow-up distance; l stops early (truncated) once the
// alignment solver runs out of budget.
BlowupSequence blowup_metric(const Graph& g, const Graph& h, BlowupKind kind, int lmax, AlignOptions opts = {});

// ---- bracket -------------------------------------------------------------------

struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
    std::string lower_method;
    std::string upper_method;
};

struct BracketOptions {
    OtOptions ot;
    int lmax = 2;
    AlignOptions align;
    FracOptions frac;
};

// Two-sided bound on the uniform OT distance (kind L1 or Cut). Upper: best of
// the OT solver and the blow-up sequence. Lower: the certified relaxed bound
// and, for L1 on equal orders, a third of the normalised edit-alignment value.
Bracket ot_bracket(const Graph& g, const Graph& h, OtKind kind, const BracketOptions& opts = {});

// exp(-c * delta).
double similarity(double delta, double c);

}  // namespace graphdist
