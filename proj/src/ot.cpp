#include "graphdist/ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "graphdist/error.hpp"
#include "graphdist/norms.hpp"
#include "graphdist/transport.hpp"
#include "detail/line_search.hpp"

namespace graphdist {

// ---- vertex weights ------------------------------------------------------------

VertexWeights::VertexWeights(std::vector<Rational> p) : p_(std::move(p)) {
    Rational total = 0;
    for (const auto& x : p_) {
        if (x < 0) throw std::invalid_argument("vertex weights must be nonnegative");
        total += x;
    }
    if (!p_.empty() && total != 1) throw std::invalid_argument("vertex weights must sum to 1");
}

VertexWeights VertexWeights::uniform(int n) {
    VertexWeights w;
    w.p_.assign(n, Rational(1, std::max(n, 1)));
    return w;
}

VertexWeights VertexWeights::from_counts(std::span<const std::int64_t> counts) {
    std::int64_t total = 0;
    for (auto c : counts) {
        if (c < 0) throw std::invalid_argument("vertex weight counts must be nonnegative");
        total += c;
    }
    if (total <= 0) throw std::invalid_argument("vertex weight counts must have a positive sum");
    std::vector<Rational> p;
    for (auto c : counts) p.emplace_back(c, total);
    return VertexWeights(std::move(p));
}

bool VertexWeights::is_uniform() const {
    return std::all_of(p_.begin(), p_.end(), [&](const Rational& x) { return x == p_.front(); });
}

std::vector<double> VertexWeights::to_doubles() const {
    std::vector<double> out;
    for (const auto& x : p_) out.push_back(to_double(x));
    return out;
}

std::string to_string(OtKind kind) {
    switch (kind) {
        case OtKind::L1: return "ot-l1";
        case OtKind::Cut: return "ot-cut";
        case OtKind::Gw: return "gw";
    }
    return "?";
}

std::string to_string(BlowupKind kind) {
    switch (kind) {
        case BlowupKind::L1: return "blowup-l1";
        case BlowupKind::Local: return "blowup-local";
        case BlowupKind::Cut: return "blowup-cut";
    }
    return "?";
}

// ---- objective -----------------------------------------------------------------

namespace {

// Couplings are flattened with index v * n + w.
struct OtProblem {
    std::size_t m;
    std::size_t n;
    OtKind kind;
    std::vector<double> c;  // c[i * mn + j]: |.| for L1 and GW, signed for Cut

    OtProblem(const Graph& g, const Graph& h, OtKind k) : m(g.order()), n(h.order()), kind(k) {
        const bool dist = kind == OtKind::Gw;
        const Matrix a = dist ? distance_matrix(g) : adjacency(g);
        const Matrix b = dist ? distance_matrix(h) : adjacency(h);
        const std::size_t mn = m * n;
        c.resize(mn * mn);
        for (std::size_t v = 0; v < m; ++v)
            for (std::size_t w = 0; w < n; ++w)
                for (std::size_t v2 = 0; v2 < m; ++v2)
                    for (std::size_t w2 = 0; w2 < n; ++w2) {
                        const double d = a(v, v2) - b(w, w2);
                        c[(v * n + w) * mn + v2 * n + w2] = kind == OtKind::Cut ? d : std::abs(d);
                    }
    }

    std::size_t size() const { return m * n; }

    // q^T C q
    double quadratic(std::span<const double> x, std::span<const double> y) const {
        const std::size_t mn = size();
        double s = 0.0;
        for (std::size_t i = 0; i < mn; ++i) {
            if (x[i] == 0.0) continue;
            double row = 0.0;
            for (std::size_t j = 0; j < mn; ++j) row += c[i * mn + j] * y[j];
            s += x[i] * row;
        }
        return s;
    }

    Matrix cut_matrix(const Matrix& q) const {
        const std::size_t mn = size();
        Matrix out(mn, mn);
        for (std::size_t i = 0; i < mn; ++i)
            for (std::size_t j = 0; j < mn; ++j) out(i, j) = q.values()[i] * q.values()[j] * c[i * mn + j];
        return out;
    }

    double value(const Matrix& q) const {
        if (kind == OtKind::Cut) return cut_norm_exact(cut_matrix(q)).value;
        return std::max(quadratic(q.values(), q.values()), 0.0);
    }

    // A (sub)gradient of the objective at q, as a coupling-shaped matrix.
    Matrix gradient(const Matrix& q) const {
        const std::size_t mn = size();
        Matrix g(m, n);
        if (kind != OtKind::Cut) {
            for (std::size_t i = 0; i < mn; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < mn; ++j) s += c[i * mn + j] * q.values()[j];
                g(i / n, i % n) = 2.0 * s;
            }
            return g;
        }
        const auto cut = cut_norm_exact(cut_matrix(q));
        for (int i : cut.rows)
            for (int j : cut.cols) {
                g(i / n, i % n) += cut.sign * c[i * mn + j] * q.values()[j];
                g(j / n, j % n) += cut.sign * c[i * mn + j] * q.values()[i];
            }
        return g;
    }
};

Matrix axpy(const Matrix& q, double t, const Matrix& d) {
    Matrix out = q;
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) out(i, j) += t * d(i, j);
    return out;
}

struct Marginals {
    std::vector<std::int64_t> supply;
    std::vector<std::int64_t> demand;
};

Marginals integer_marginals(const VertexWeights& pg, const VertexWeights& ph) {
    BigInt den = 1;
    for (std::size_t v = 0; v < pg.size(); ++v) den = lcm(den, denominator(pg[v]));
    for (std::size_t w = 0; w < ph.size(); ++w) den = lcm(den, denominator(ph[w]));
    if (den > (BigInt(1) << 40)) throw std::invalid_argument("vertex weights need a common denominator below 2^40");
    Marginals out;
    for (std::size_t v = 0; v < pg.size(); ++v)
        out.supply.push_back(static_cast<std::int64_t>(numerator(pg[v]) * (den / denominator(pg[v]))));
    for (std::size_t w = 0; w < ph.size(); ++w)
        out.demand.push_back(static_cast<std::int64_t>(numerator(ph[w]) * (den / denominator(ph[w]))));
    return out;
}

struct Run {
    Matrix q;
    double value = std::numeric_limits<double>::infinity();
    SolverTrace trace;
    bool converged = true;
};

// Fixing one factor of the quadratic makes it linear in the other; its
// minimiser over the couplings is the transportation vertex S. The step
// towards S is then chosen by line search, so the objective never increases
// (a full step is the plain alternating update).
Run descend(const OtProblem& p, const Marginals& marg, Matrix q, const OtOptions& opts) {
    Run run;
    double f = p.value(q);
    for (int it = 0; it < opts.max_iterations; ++it) {
        run.trace.iterations = it + 1;
        run.trace.objective.push_back(f);
        const Matrix grad = p.gradient(q);
        const Matrix s = transport_lmo(grad, marg.supply, marg.demand);
        const Matrix d = s - q;
        const double gap = frobenius_inner(grad, q - s);
        run.trace.gap.push_back(gap);
        if (gap <= opts.tol) break;

        double t = 0.0, next = f;
        if (p.kind == OtKind::Cut) {
            t = detail::golden_section([&](double x) { return p.value(axpy(q, x, d)); }, next, 24);
        } else {
            // f(q + t d) = f + t * lin + t^2 * quad
            const double lin = 2.0 * p.quadratic(d.values(), q.values());
            const double quad = p.quadratic(d.values(), d.values());
            if (quad > 0.0)
                t = std::clamp(-lin / (2.0 * quad), 0.0, 1.0);
            else
                t = lin + quad < 0.0 ? 1.0 : 0.0;
            if (t > 0.0) next = p.value(axpy(q, t, d));
        }
        if (!(t > 0.0) || next > f - opts.tol) {
            if (t > 0.0 && next < f) {
                q = axpy(q, t, d);
                f = next;
            }
            break;
        }
        q = axpy(q, t, d);
        f = next;
        if (it + 1 == opts.max_iterations) run.converged = false;
    }
    run.q = std::move(q);
    run.value = f;
    return run;
}

Matrix random_start(const Marginals& marg, std::size_t m, std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    const int vertices = static_cast<int>(std::min<std::size_t>(4, m * n));
    Matrix q(m, n);
    double total = 0.0;
    std::vector<double> w(vertices);
    for (auto& x : w) total += x = gamma(rng);
    for (int k = 0; k < vertices; ++k) {
        Matrix cost(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) cost(i, j) = unit(rng);
        q = axpy(q, w[k] / total, transport_lmo(cost, marg.supply, marg.demand));
    }
    return q;
}

// Permutation coupling from an exact alignment of the lcm blow-ups, when
// those are small enough.
std::optional<Matrix> aligned_start(const Graph& g, const Graph& h, int max_order) {
    const int m = g.order(), n = h.order();
    const int l = std::lcm(m, n);
    if (l > max_order) return std::nullopt;
    const Graph gb = blow_up(g, l / m), hb = blow_up(h, l / n);
    if (auto iso = find_isomorphism(gb, hb)) return blowup_coupling(m, n, *iso);
    AlignOptions ao;
    ao.max_order = max_order;
    ao.node_budget = 5'000'000;
    try {
        const auto r = align_metric(gb, hb, AlignmentMetricKind::edit(), ao);
        return blowup_coupling(m, n, *r.witness);
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    }
}

}  // namespace

Matrix blowup_coupling(int m, int n, std::span<const int> pi) {
    const int l = static_cast<int>(pi.size());
    if (m <= 0 || n <= 0 || l % m != 0 || l % n != 0) throw std::invalid_argument("bijection size is not a common multiple");
    const int km = l / m, kn = l / n;
    Matrix q(m, n);
    for (int x = 0; x < l; ++x) q(x / km, pi[x] / kn) += 1.0 / l;
    return q;
}

double ot_objective(const Graph& g, const Graph& h, OtKind kind, const Matrix& q) {
    const OtProblem p(g, h, kind);
    if (q.rows() != p.m || q.cols() != p.n) throw std::invalid_argument("coupling has the wrong shape");
    return p.value(q);
}

OtResult ot_metric(const Graph& g, const Graph& h, OtKind kind, const VertexWeights& pg, const VertexWeights& ph,
                   const OtOptions& opts) {
    if (opts.restarts < 1) throw std::invalid_argument("at least one restart is needed");
    if (pg.size() != static_cast<std::size_t>(g.order()) || ph.size() != static_cast<std::size_t>(h.order()))
        throw std::invalid_argument("vertex weights do not match the graphs");
    if (g.order() == 0 || h.order() == 0) throw std::invalid_argument("couplings need nonempty vertex sets");
    if (kind == OtKind::Cut && g.order() * h.order() > 16)
        throw BudgetExceeded("ot-cut enumerates subsets of vertex pairs; needs |G||H| <= 16");

    const OtProblem p(g, h, kind);
    const Marginals marg = integer_marginals(pg, ph);
    std::mt19937_64 rng(opts.seed);

    OtResult best;
    best.report.value = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        Matrix start;
        if (r == 0) {
            std::optional<Matrix> seeded;
            if (pg.is_uniform() && ph.is_uniform()) seeded = aligned_start(g, h, opts.seed_align_order);
            if (seeded) {
                start = *seeded;
            } else {
                // independent coupling p_G p_H^T
                const auto a = pg.to_doubles(), b = ph.to_doubles();
                start = Matrix(p.m, p.n);
                for (std::size_t v = 0; v < p.m; ++v)
                    for (std::size_t w = 0; w < p.n; ++w) start(v, w) = a[v] * b[w];
            }
        } else {
            start = random_start(marg, p.m, p.n, rng);
        }
        Run run = descend(p, marg, std::move(start), opts);
        if (run.value < best.report.value) {
            best.report.value = run.value;
            best.coupling = std::move(run.q);
            best.trace = std::move(run.trace);
            best.converged = run.converged;
        }
    }
    best.trace.seed = opts.seed;
    auto& rep = best.report;
    rep.metric = to_string(kind);
    rep.solver = "conditional-gradient";
    rep.normalized_value = rep.value;
    rep.upper = rep.value;
    rep.exact = false;
    rep.sentinel_used = kind == OtKind::Gw && (!is_connected(g) || !is_connected(h));
    return best;
}

OtResult ot_metric(const Graph& g, const Graph& h, OtKind kind, const OtOptions& opts) {
    return ot_metric(g, h, kind, VertexWeights::uniform(g.order()), VertexWeights::uniform(h.order()), opts);
}

// ---- blow-up sequences ---------------------------------------------------------

BlowupSequence blowup_metric(const Graph& g, const Graph& h, BlowupKind kind, int lmax, AlignOptions opts) {
    if (g.order() == 0 || h.order() == 0) throw std::invalid_argument("blow-ups need nonempty graphs");
    BlowupSequence out;
    out.base = std::lcm(g.order(), h.order());
    const auto align_kind = kind == BlowupKind::L1      ? AlignmentMetricKind::edit()
                            : kind == BlowupKind::Local ? AlignmentMetricKind::local()
                                                        : AlignmentMetricKind::cut();
    for (int l = 1; l <= lmax; ++l) {
        const int order = l * out.base;
        if (order > opts.max_order) {
            out.truncated = true;
            break;
        }
        const Graph gb = blow_up(g, order / g.order()), hb = blow_up(h, order / h.order());
        try {
            const auto r = align_metric(gb, hb, align_kind, opts);
            out.values.push_back(r.normalized_value);
            out.witnesses.push_back(*r.witness);
        } catch (const BudgetExceeded&) {
            out.truncated = true;
            break;
        }
    }
    return out;
}

// ---- bracket -------------------------------------------------------------------

Bracket ot_bracket(const Graph& g, const Graph& h, OtKind kind, const BracketOptions& opts) {
    if (kind == OtKind::Gw) throw std::invalid_argument("the bracket covers ot-l1 and ot-cut only");
    const int m = g.order(), n = h.order();
    Bracket b;

    const auto ot = ot_metric(g, h, kind, opts.ot);
    b.upper = ot.report.value;
    b.upper_method = "ot-conditional-gradient";
    FracOptions frac = opts.frac;
    frac.warm_starts.push_back(ot.coupling);

    const auto seq = blowup_metric(g, h, kind == OtKind::L1 ? BlowupKind::L1 : BlowupKind::Cut, opts.lmax, opts.align);
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        frac.warm_starts.push_back(blowup_coupling(m, n, seq.witnesses[i]));
        if (seq.values[i] < b.upper) {
            b.upper = seq.values[i];
            b.upper_method = "blowup-alignment(l=" + std::to_string(i + 1) + ")";
        }
    }

    // The relaxed distance never exceeds the OT objective of the same coupling.
    const auto fr = frac_metric(g, h, kind == OtKind::L1 ? FracNorm::Entrywise1 : FracNorm::Cut, frac);
    b.lower = std::max(*fr.report.lower, 0.0);
    b.lower_method = "relaxed-certificate";
    if (kind == OtKind::L1 && m == n) {
        try {
            const double third = align_metric(g, h, AlignmentMetricKind::edit(), opts.align).normalized_value / 3.0;
            if (third > b.lower) {
                b.lower = third;
                b.lower_method = "alignment/3";
            }
        } catch (const BudgetExceeded&) {
        }
    }
    if (b.lower > b.upper + 1e-9) throw InternalConsistencyError("bracket lower bound exceeds its upper bound");
    b.lower = std::min(b.lower, b.upper);
    return b;
}

double similarity(double delta, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("similarity scale must be positive");
    if (delta < 0.0) throw std::invalid_argument("distances are nonnegative");
    return std::exp(-c * delta);
}

}  // namespace graphdist
