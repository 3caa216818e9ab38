#include "graphdist/frac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "graphdist/error.hpp"
#include "graphdist/norms.hpp"
#include "graphdist/transport.hpp"
#include "graphdist/wl.hpp"
#include "detail/line_search.hpp"

namespace graphdist {

// ---- couplings -----------------------------------------------------------------

bool is_coupling(const Matrix& q, double tol) {
    const std::size_t m = q.rows(), n = q.cols();
    if (m == 0 || n == 0) return m == n;
    for (double x : q.values())
        if (x < -tol) return false;
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(compensated_sum(q.row(i)) - 1.0 / m) > tol) return false;
    std::vector<double> col(m);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) col[i] = q(i, j);
        if (std::abs(compensated_sum(col) - 1.0 / n) > tol) return false;
    }
    return true;
}

bool is_coupling(const RationalMatrix& q) {
    const std::size_t m = q.rows(), n = q.cols();
    if (m == 0 || n == 0) return m == n;
    const Rational row_sum(1, static_cast<long long>(m));
    const Rational col_sum(1, static_cast<long long>(n));
    for (std::size_t i = 0; i < m; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (q(i, j) < 0) return false;
            s += q(i, j);
        }
        if (s != row_sum) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) s += q(i, j);
        if (s != col_sum) return false;
    }
    return true;
}

Matrix flat_coupling(int m, int n) { return Matrix(m, n, 1.0 / (static_cast<double>(m) * n)); }

Matrix permutation_coupling(std::span<const int> pi) {
    const std::size_t n = pi.size();
    Matrix q(n, n);
    for (std::size_t v = 0; v < n; ++v) q(v, pi[v]) = 1.0 / static_cast<double>(n);
    return q;
}

RationalMatrix rational_repair(const Matrix& q, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("repair tolerance must be positive");
    const std::size_t m = q.rows(), n = q.cols();
    if (m == 0 || n == 0) throw std::invalid_argument("empty coupling");
    const Rational mn(static_cast<long long>(m * n));
    const Rational theta = eps / 2;
    // Every entry of the mixture is at least theta/(mn); rounding moves the
    // filled-in corner by at most (m-1)(n-1)/D, which D keeps below both
    // theta/(mn) and eps/2.
    const Rational need = Rational(static_cast<long long>((m - 1) * (n - 1))) * std::max<Rational>(mn / theta, 2 / eps);
    const BigInt grid = numerator(need) / denominator(need) + 2;
    const Rational row_sum(1, static_cast<long long>(m));
    const Rational col_sum(1, static_cast<long long>(n));

    RationalMatrix out(m, n);
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const Rational mixed = (1 - theta) * exact(std::max(q(i, j), 0.0)) + theta / mn;
            const Rational scaled = mixed * Rational(grid);
            out(i, j) = Rational(numerator(scaled) / denominator(scaled), grid);
        }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j + 1 < n; ++j) s += out(i, j);
        out(i, n - 1) = row_sum - s;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i + 1 < m; ++i) s += out(i, j);
        out(m - 1, j) = col_sum - s;
    }

    if (!is_coupling(out)) throw InternalConsistencyError("repaired coupling is not feasible");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational d = out(i, j) - exact(q(i, j));
            if (d > eps || -d > eps) throw InternalConsistencyError("repaired coupling moved too far");
        }
    return out;
}

// ---- objective -----------------------------------------------------------------

namespace {

struct Problem {
    Matrix a;  // A_G / m
    Matrix b;  // A_H / n
    std::size_t m;
    std::size_t n;
    FracNorm norm;

    Problem(const Graph& g, const Graph& h, FracNorm nm)
        : a(adjacency(g)), b(adjacency(h)), m(g.order()), n(h.order()), norm(nm) {
        a *= 1.0 / static_cast<double>(std::max<std::size_t>(m, 1));
        b *= 1.0 / static_cast<double>(std::max<std::size_t>(n, 1));
    }

    Matrix residual(const Matrix& q) const { return a * q - q * b; }

    double value(const Matrix& r) const {
        return norm == FracNorm::Entrywise1 ? entrywise_norm(r, 1.0) : cut_norm_exact(r).value;
    }

    // Gradient of Q -> <psi, residual(Q)>.
    Matrix pull_back(const Matrix& psi) const { return a * psi - psi * b; }
};

Matrix axpy(const Matrix& q, double t, const Matrix& d) {
    Matrix out = q;
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) out(i, j) += t * d(i, j);
    return out;
}

}  // namespace

double frac_objective(const Graph& g, const Graph& h, FracNorm norm, const Matrix& q) {
    const Problem p(g, h, norm);
    if (q.rows() != p.m || q.cols() != p.n) throw std::invalid_argument("coupling has the wrong shape");
    return p.value(p.residual(q));
}

namespace {

// Any psi with |psi_e| <= 1 gives f(Q) >= <psi, residual(Q)> = <pull_back(psi), Q>,
// so the minimum of that linear function over the couplings is a lower bound.
double dual_bound(const Problem& p, const Matrix& psi) {
    const Matrix grad = p.pull_back(psi);
    return frobenius_inner(grad, transport_lmo(grad));
}

struct Huber {
    Matrix psi;  // gradient with respect to the residual
    double value = 0.0;
};

Huber huber(const Matrix& r, double mu) {
    Huber h{Matrix(r.rows(), r.cols()), 0.0};
    for (std::size_t k = 0; k < r.values().size(); ++k) {
        const double x = r.values()[k];
        double& g = h.psi(k / r.cols(), k % r.cols());
        if (std::abs(x) <= mu) {
            g = x / mu;
            h.value += x * x / (2.0 * mu);
        } else {
            g = x > 0 ? 1.0 : -1.0;
            h.value += std::abs(x) - mu / 2.0;
        }
    }
    return h;
}

// argmin over t in [0, t_max] of the Huber surrogate along r + t d. The
// derivative is monotone, so bisection on its sign suffices.
double huber_line_search(const Matrix& r, const Matrix& d, double mu, double t_max) {
    auto slope = [&](double t) {
        double s = 0.0;
        for (std::size_t k = 0; k < r.values().size(); ++k) {
            const double x = r.values()[k] + t * d.values()[k];
            s += (std::abs(x) <= mu ? x / mu : (x > 0 ? 1.0 : -1.0)) * d.values()[k];
        }
        return s;
    };
    if (slope(0.0) >= 0.0) return 0.0;
    if (slope(t_max) <= 0.0) return t_max;
    double lo = 0.0, hi = t_max;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct Best {
    Matrix q;
    double f = std::numeric_limits<double>::infinity();
    double lower = 0.0;

    void offer(const Matrix& cand, double v) {
        if (v < f) {
            f = v;
            q = cand;
        }
    }
    double gap() const { return f - lower; }
};

// Pairwise conditional gradient on the Huber surrogate with a shrinking
// smoothing parameter. The iterate is kept as a convex combination of atoms
// so mass can be moved away from a bad vertex, not only towards a good one.
void minimise_l1(const Problem& p, const Matrix& start, const FracOptions& opts, Best& best, SolverTrace& trace) {
    const double mn = static_cast<double>(p.m * p.n);
    const double mu_min = opts.tol / mn;
    std::vector<Matrix> atoms{start};
    std::vector<double> weight{1.0};
    Matrix q = start;
    double mu = std::max(best.f / mn, mu_min);
    double last_gap = best.gap();
    int stall = 0;

    for (int it = 0; it < opts.max_iterations; ++it) {
        const Matrix r = p.residual(q);
        best.offer(q, entrywise_norm(r, 1.0));
        Matrix sign(p.m, p.n);
        for (std::size_t k = 0; k < r.values().size(); ++k) {
            const double x = r.values()[k];
            sign(k / p.n, k % p.n) = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
        }
        best.lower = std::max(best.lower, dual_bound(p, sign));

        const Huber hb = huber(r, mu);
        const Matrix grad = p.pull_back(hb.psi);
        const Matrix s = transport_lmo(grad);
        const double fw_gap = frobenius_inner(grad, q - s);
        best.lower = std::max(best.lower, frobenius_inner(grad, s));

        trace.iterations = it + 1;
        trace.objective.push_back(best.f);
        trace.gap.push_back(best.gap());
        if (best.gap() <= opts.tol) return;

        if (best.gap() < last_gap - 1e-12) {
            last_gap = best.gap();
            stall = 0;
        } else if (++stall >= opts.stall_iterations && mu == mu_min) {
            return;
        }
        // The smooth problem is solved to within its own bias: sharpen it.
        if (fw_gap <= mu * mn / 4.0 && mu > mu_min) {
            mu = std::max(mu / 2.0, mu_min);
            continue;
        }

        std::size_t away = 0;
        double away_score = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const double score = frobenius_inner(grad, atoms[k]);
            if (score > away_score) {
                away_score = score;
                away = k;
            }
        }
        const Matrix direction = s - atoms[away];
        const double t = huber_line_search(r, p.residual(direction), mu, weight[away]);
        if (t <= 0.0) {
            mu = std::max(mu / 2.0, mu_min);
            continue;
        }
        q = axpy(q, t, direction);
        weight[away] -= t;
        std::size_t k = 0;
        while (k < atoms.size() && !(atoms[k] == s)) ++k;
        if (k == atoms.size()) {
            atoms.push_back(s);
            weight.push_back(0.0);
        }
        weight[k] += t;
        for (std::size_t j = atoms.size(); j-- > 0;)
            if (weight[j] <= 1e-15) {
                atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
                weight.erase(weight.begin() + static_cast<std::ptrdiff_t>(j));
            }
        // Rebuild from the atoms now and then to stop drift in the marginals.
        if (it % 64 == 63) {
            q = Matrix(p.m, p.n);
            for (std::size_t j = 0; j < atoms.size(); ++j) q = axpy(q, weight[j], atoms[j]);
        }
    }
}

// Subgradient directions with a golden-section step; the cut norm has no
// cheap smoothing, so this path is slower and its bound weaker.
void minimise_cut(const Problem& p, const Matrix& start, const FracOptions& opts, Best& best, SolverTrace& trace) {
    Matrix q = start;
    double f = best.f;
    int stall = 0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const Matrix r = p.residual(q);
        const auto cut = cut_norm_exact(r);
        Matrix sub(p.m, p.n);
        for (int i : cut.rows)
            for (int j : cut.cols) sub(i, j) = cut.sign;
        const Matrix grad = p.pull_back(sub);
        const Matrix s = transport_lmo(grad);
        best.lower = std::max(best.lower, frobenius_inner(grad, s));

        trace.iterations = it + 1;
        trace.objective.push_back(best.f);
        trace.gap.push_back(best.gap());
        if (best.gap() <= opts.tol) return;

        const Matrix direction = s - q;
        double next = f;
        const double t = detail::golden_section([&](double x) { return p.value(p.residual(axpy(q, x, direction))); }, next);
        if (t > 0.0 && next < f) {
            q = axpy(q, t, direction);
            f = next;
            best.offer(q, f);
            stall = 0;
        } else if (++stall >= opts.stall_iterations) {
            return;
        }
    }
}

}  // namespace

FracResult frac_metric(const Graph& g, const Graph& h, FracNorm norm, const FracOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (g.order() == 0 || h.order() == 0) throw std::invalid_argument("couplings need nonempty vertex sets");
    const Problem p(g, h, norm);

    // Starting point: best of the flat coupling, the scaled identity, the
    // colour-class coupling and any caller-supplied couplings.
    std::vector<Matrix> starts{flat_coupling(g.order(), h.order())};
    if (p.m == p.n) starts.push_back(Matrix::identity(p.n) * (1.0 / static_cast<double>(p.n)));
    if (auto eq = equitable_coupling(g, h)) starts.push_back(eq->to_matrix());
    for (const auto& w : opts.warm_starts) {
        if (w.rows() != p.m || w.cols() != p.n || !is_coupling(w, 1e-9))
            throw std::invalid_argument("warm start is not a coupling of the two graphs");
        starts.push_back(w);
    }
    Best best;
    for (const auto& s : starts) best.offer(s, p.value(p.residual(s)));

    FracResult out;
    out.trace.seed = opts.seed;
    if (norm == FracNorm::Entrywise1)
        minimise_l1(p, best.q, opts, best, out.trace);
    else
        minimise_cut(p, best.q, opts, best, out.trace);

    out.coupling = best.q;
    auto& rep = out.report;
    rep.metric = norm == FracNorm::Entrywise1 ? "frac-l1" : "frac-cut";
    rep.solver = "conditional-gradient";
    rep.value = best.f;
    rep.normalized_value = best.f;
    rep.lower = std::min(best.lower, best.f);
    rep.upper = best.f;
    rep.exact = best.gap() <= opts.tol;
    return out;
}

// ---- fractional isomorphism ---------------------------------------------------

std::optional<RationalMatrix> equitable_coupling(const Graph& g, const Graph& h) {
    const Graph pair[] = {g, h};
    const auto joint = wl::refine_jointly(pair);
    const auto& cg = joint.per_graph[0].colors.back();
    const auto& ch = joint.per_graph[1].colors.back();
    const auto m = static_cast<long long>(g.order()), n = static_cast<long long>(h.order());
    if (m == 0 || n == 0) return std::nullopt;
    std::map<int, long long> size_g, size_h;
    for (int c : cg) ++size_g[c];
    for (int c : ch) ++size_h[c];
    for (const auto& [c, k] : size_g)
        if (!size_h.contains(c) || k * n != size_h[c] * m) return std::nullopt;
    for (const auto& [c, k] : size_h)
        if (!size_g.contains(c)) return std::nullopt;
    RationalMatrix q(m, n);
    for (long long v = 0; v < m; ++v)
        for (long long w = 0; w < n; ++w)
            if (cg[v] == ch[w]) q(v, w) = Rational(1, m * size_h[ch[w]]);
    return q;
}

bool intertwines(const Graph& g, const Graph& h, const RationalMatrix& q) {
    if (q.rows() != static_cast<std::size_t>(g.order()) || q.cols() != static_cast<std::size_t>(h.order()))
        throw std::invalid_argument("coupling has the wrong shape");
    const RationalMatrix a = RationalMatrix::from_integral(adjacency(g));
    const RationalMatrix b = RationalMatrix::from_integral(adjacency(h));
    RationalMatrix left = a * q, right = q * b;
    // (1/m) A_G Q = (1/n) Q A_H, cleared of denominators.
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) {
            left(i, j) *= static_cast<long long>(h.order());
            right(i, j) *= static_cast<long long>(g.order());
        }
    return left == right;
}

FractionalIsomorphism fractional_isomorphism(const Graph& g, const Graph& h) {
    if (g.order() != h.order()) throw OrderMismatch(g.order(), h.order());
    FractionalIsomorphism out;
    if (wl::distinguishes(g, h)) return out;
    out.witness = equitable_coupling(g, h);
    if (!out.witness || !is_coupling(*out.witness) || !intertwines(g, h, *out.witness))
        throw InternalConsistencyError("colour refinement agrees but the class coupling does not intertwine");
    out.isomorphic = true;
    return out;
}

}  // namespace graphdist
