#include "graphdist/align.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "graphdist/error.hpp"
#include "graphdist/norms.hpp"

namespace graphdist {

namespace {

using Score = std::int64_t;
constexpr Score kNoScore = std::numeric_limits<Score>::max();

enum class Objective { Sum, MaxEntry, RowMax, Cut };

Objective objective_of(const AlignmentMetricKind& kind) {
    switch (kind.tag) {
        case AlignTag::EditEntrywise1:
            return Objective::Sum;
        case AlignTag::EntrywiseP:
            return std::isinf(kind.p) ? Objective::MaxEntry : Objective::Sum;
        case AlignTag::LocalOperator:
            return Objective::RowMax;
        case AlignTag::CutDistance:
            return Objective::Cut;
        case AlignTag::Distortion:
        case AlignTag::IsomorphismDistance:
            return Objective::MaxEntry;
    }
    return Objective::Sum;
}

bool uses_distances(const AlignmentMetricKind& kind) { return kind.tag == AlignTag::Distortion; }

// Square integer matrix, flat row-major.
struct IntMatrix {
    int n = 0;
    std::vector<Score> v;
    Score operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

IntMatrix int_matrix(const Matrix& m) {
    IntMatrix out{static_cast<int>(m.rows()), {}};
    out.v.reserve(m.values().size());
    for (double x : m.values()) out.v.push_back(static_cast<Score>(std::llround(x)));
    return out;
}

// Twin classes: u and u' are twins when swapping them is an automorphism,
// i.e. their rows agree outside the pair. prev[u] is the previous member of
// u's class (by index) or -1.
std::vector<int> previous_twin(const Graph& g) {
    const int n = g.order();
    std::vector<int> prev(n, -1);
    for (int u = 0; u < n; ++u)
        for (int w = u - 1; w >= 0; --w) {
            bool twins = true;
            for (int x = 0; x < n && twins; ++x)
                if (x != u && x != w && g.adjacent(u, x) != g.adjacent(w, x)) twins = false;
            if (twins) {
                prev[u] = w;
                break;
            }
        }
    return prev;
}

// Score of a complete bijection: the objective in exact integers.
Score full_score(const IntMatrix& a, const IntMatrix& b, Objective obj, std::span<const int> pi) {
    const int n = a.n;
    if (obj == Objective::Cut) {
        Matrix d(n, n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) d(pi[u], pi[v]) = static_cast<double>(a(u, v) - b(pi[u], pi[v]));
        return static_cast<Score>(std::llround(cut_norm_exact(d).value));
    }
    Score total = 0;
    for (int u = 0; u < n; ++u) {
        Score row = 0;
        for (int v = 0; v < n; ++v) {
            const Score d = std::abs(a(u, v) - b(pi[u], pi[v]));
            if (obj == Objective::MaxEntry)
                row = std::max(row, d);
            else
                row += d;
        }
        total = obj == Objective::Sum ? total + row : std::max(total, row);
    }
    return total;
}

class BranchAndBound {
public:
    BranchAndBound(const Graph& g, const Graph& h, const IntMatrix& a, const IntMatrix& b, Objective obj,
                   std::uint64_t budget)
        : g_(g), h_(h), a_(a), b_(b), obj_(obj), n_(a.n), budget_(budget), pi_(n_, -1), used_(n_, 0),
          gprev_(previous_twin(g)), hprev_(previous_twin(h)) {
        edge_diff_ = 2 * std::abs(static_cast<Score>(g.edge_count()) - static_cast<Score>(h.edge_count()));
    }

    // Seeds the incumbent with a complete bijection (kept on ties, so only a
    // lexicographically smallest seed is safe).
    void seed(std::vector<int> pi, Score score) {
        best_pi_ = std::move(pi);
        best_ = score;
    }

    void run() { extend(0); }

    Score best() const { return best_; }
    const std::vector<int>& witness() const { return best_pi_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    const Graph& g_;
    const Graph& h_;
    const IntMatrix& a_;
    const IntMatrix& b_;
    Objective obj_;
    int n_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<int> pi_;
    std::vector<char> used_;
    std::vector<int> gprev_;
    std::vector<int> hprev_;
    Score edge_diff_ = 0;
    Score best_ = kNoScore;
    std::vector<int> best_pi_;

    // Admissible bound for completions of the partial map pi_[0..k).
    Score lower_bound(int k) const {
        // Degrees into the unassigned parts of either side. Only meaningful
        // for adjacency objectives.
        std::vector<Score> du(n_, 0), dh(n_, 0);
        if (obj_ != Objective::MaxEntry) {
            for (int u = 0; u < n_; ++u)
                for (int v = k; v < n_; ++v) du[u] += a_(u, v);
            for (int x = 0; x < n_; ++x)
                for (int y = 0; y < n_; ++y)
                    if (!used_[y]) dh[x] += b_(x, y);
        }

        if (obj_ == Objective::Cut) {
            // S = T = everything, and S = assigned rows of one sign with T = everything.
            Score pos = 0, neg = 0;
            for (int u = 0; u < k; ++u) {
                const Score d = static_cast<Score>(g_.degree(u)) - h_.degree(pi_[u]);
                (d > 0 ? pos : neg) += std::abs(d);
            }
            Score lb = std::max({edge_diff_, pos, neg});
            if (lb >= best_ || k < 2) return lb;
            Matrix block(k, k);
            for (int u = 0; u < k; ++u)
                for (int v = 0; v < k; ++v) block(u, v) = static_cast<double>(a_(u, v) - b_(pi_[u], pi_[v]));
            return std::max(lb, static_cast<Score>(std::llround(cut_norm_exact(block).value)));
        }

        Score aa = 0;
        Score row_bound = 0;
        Score assigned_rows = 0;
        for (int u = 0; u < k; ++u) {
            Score row = 0;
            for (int v = 0; v < k; ++v) {
                const Score d = std::abs(a_(u, v) - b_(pi_[u], pi_[v]));
                row = obj_ == Objective::MaxEntry ? std::max(row, d) : row + d;
            }
            const Score rest = obj_ == Objective::MaxEntry ? 0 : std::abs(du[u] - dh[pi_[u]]);
            aa = obj_ == Objective::Sum ? aa + row : std::max(aa, row);
            assigned_rows += rest;
            row_bound = std::max(row_bound, row + rest);
        }

        // Each unassigned vertex must go somewhere unused: cheapest cost of
        // its row against the assigned columns.
        Score cheapest_sum = 0;
        Score cheapest_max = 0;
        for (int v = k; v < n_; ++v) {
            Score cheapest = kNoScore;
            Score cheapest_with_rest = kNoScore;
            for (int x = 0; x < n_; ++x) {
                if (used_[x]) continue;
                Score c = 0;
                for (int u = 0; u < k; ++u) {
                    const Score d = std::abs(a_(v, u) - b_(x, pi_[u]));
                    c = obj_ == Objective::MaxEntry ? std::max(c, d) : c + d;
                }
                cheapest = std::min(cheapest, c);
                if (obj_ == Objective::RowMax) cheapest_with_rest = std::min(cheapest_with_rest, c + std::abs(du[v] - dh[x]));
            }
            cheapest_sum += cheapest;
            cheapest_max = std::max(cheapest_max, obj_ == Objective::RowMax ? cheapest_with_rest : cheapest);
        }

        switch (obj_) {
            case Objective::MaxEntry:
                return std::max(aa, cheapest_max);
            case Objective::RowMax:
                return std::max(row_bound, cheapest_max);
            case Objective::Sum: {
                // Unassigned block: induced degree sequences, sorted.
                std::vector<Score> ds, hs;
                for (int v = k; v < n_; ++v) ds.push_back(du[v]);
                for (int x = 0; x < n_; ++x)
                    if (!used_[x]) hs.push_back(dh[x]);
                std::sort(ds.begin(), ds.end());
                std::sort(hs.begin(), hs.end());
                Score uu = 0;
                for (std::size_t i = 0; i < ds.size(); ++i) uu += std::abs(ds[i] - hs[i]);
                return aa + 2 * std::max(assigned_rows, cheapest_sum) + uu;
            }
            case Objective::Cut:
                break;
        }
        return 0;
    }

    void extend(int k) {
        if (++nodes_ > budget_)
            throw BudgetExceeded("alignment search exceeded its node budget of " + std::to_string(budget_),
                                 best_ == kNoScore ? std::nullopt : std::optional<double>(static_cast<double>(best_)));
        if (k == n_) {
            const Score s = full_score(a_, b_, obj_, pi_);
            if (s < best_) {
                best_ = s;
                best_pi_ = pi_;
            }
            return;
        }
        const int lo = gprev_[k] >= 0 ? pi_[gprev_[k]] + 1 : 0;
        for (int x = lo; x < n_; ++x) {
            if (used_[x]) continue;
            if (hprev_[x] >= 0 && !used_[hprev_[x]]) continue;
            pi_[k] = x;
            used_[x] = 1;
            if (lower_bound(k + 1) < best_) extend(k + 1);
            used_[x] = 0;
            pi_[k] = -1;
            if (best_ == 0) return;
        }
    }
};

double value_of(const AlignmentMetricKind& kind, Score s) {
    if (kind.tag == AlignTag::IsomorphismDistance) return s == 0 ? 0.0 : 1.0;
    if (kind.tag == AlignTag::EntrywiseP && !std::isinf(kind.p) && kind.p != 1.0)
        return std::pow(static_cast<double>(s), 1.0 / kind.p);
    return static_cast<double>(s);
}

double normalized(const AlignmentMetricKind& kind, double value, int n) {
    if (n == 0) return 0.0;
    switch (kind.tag) {
        case AlignTag::EditEntrywise1:
        case AlignTag::CutDistance:
            return value / (static_cast<double>(n) * n);
        case AlignTag::LocalOperator:
            return value / n;
        default:
            return value;
    }
}

void check_kind(const AlignmentMetricKind& kind) {
    if (kind.tag == AlignTag::EntrywiseP && !(kind.p >= 1.0))
        throw std::invalid_argument("entrywise alignment needs p >= 1");
}

}  // namespace

std::string to_string(const AlignmentMetricKind& kind) {
    switch (kind.tag) {
        case AlignTag::EditEntrywise1:
            return "entrywise-1";
        case AlignTag::EntrywiseP:
            return std::isinf(kind.p) ? "entrywise-inf" : "entrywise-" + std::to_string(kind.p);
        case AlignTag::LocalOperator:
            return "local";
        case AlignTag::CutDistance:
            return "cut";
        case AlignTag::Distortion:
            return "distortion";
        case AlignTag::IsomorphismDistance:
            return "isomorphism";
    }
    return "?";
}

double alignment_cost(const Graph& g, const Graph& h, const AlignmentMetricKind& kind, std::span<const int> pi) {
    check_kind(kind);
    if (g.order() != h.order()) throw OrderMismatch(g.order(), h.order());
    if (static_cast<int>(pi.size()) != g.order()) throw std::invalid_argument("bijection has wrong size");
    const Matrix a = uses_distances(kind) ? distance_matrix(g) : adjacency(g);
    const Matrix b = uses_distances(kind) ? distance_matrix(h) : adjacency(h);
    const Matrix d = permute(a, pi, pi) - b;
    switch (kind.tag) {
        case AlignTag::EditEntrywise1:
            return entrywise_norm(d, 1.0);
        case AlignTag::EntrywiseP:
            return entrywise_norm(d, kind.p);
        case AlignTag::LocalOperator:
            return operator_norm(d, OperatorP::Infinity);
        case AlignTag::CutDistance:
            return cut_norm_exact(d).value;
        case AlignTag::Distortion:
            return entrywise_norm(d, kInfinity);
        case AlignTag::IsomorphismDistance:
            return entrywise_norm(d, kInfinity) == 0.0 ? 0.0 : 1.0;
    }
    return 0.0;
}

MetricReport align_metric(const Graph& g, const Graph& h, const AlignmentMetricKind& kind, const AlignOptions& opts) {
    check_kind(kind);
    if (g.order() != h.order()) throw OrderMismatch(g.order(), h.order());
    const int n = g.order();
    if (n > opts.max_order)
        throw BudgetExceeded("exact alignment is limited to order " + std::to_string(opts.max_order) + ", got " +
                             std::to_string(n));

    MetricReport r;
    r.metric = to_string(kind);
    r.sentinel_used = uses_distances(kind) && (!is_connected(g) || !is_connected(h));
    const Objective obj = objective_of(kind);
    const IntMatrix a = int_matrix(uses_distances(kind) ? distance_matrix(g) : adjacency(g));
    const IntMatrix b = int_matrix(uses_distances(kind) ? distance_matrix(h) : adjacency(h));

    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    Score best = kNoScore;
    std::vector<int> witness = identity;

    if (opts.exhaustive) {
        r.solver = "exhaustive";
        std::vector<int> p = identity;
        do {
            const Score s = full_score(a, b, obj, p);
            if (s < best) {
                best = s;
                witness = p;
            }
        } while (std::next_permutation(p.begin(), p.end()));
    } else if (obj == Objective::MaxEntry && !uses_distances(kind) && n > 0 && !isomorphic(g, h)) {
        // Every bijection leaves some entry off by exactly one.
        r.solver = "isomorphism-test";
        best = 1;
    } else {
        r.solver = "branch-and-bound";
        BranchAndBound search(g, h, a, b, obj, opts.node_budget);
        search.seed(identity, full_score(a, b, obj, identity));
        search.run();
        best = search.best();
        witness = search.witness();
    }

    r.value = value_of(kind, best);
    r.normalized_value = normalized(kind, r.value, n);
    r.witness = witness;
    if (alignment_cost(g, h, kind, witness) != r.value)
        throw InternalConsistencyError("alignment witness does not reproduce the reported value");
    return r;
}

MetricReport edit_distance(const Graph& g, const Graph& h, const AlignOptions& opts) {
    MetricReport r = align_metric(g, h, AlignmentMetricKind::edit(), opts);
    r.metric = "edit";
    r.value /= 2.0;
    r.normalized_value /= 2.0;
    return r;
}

std::vector<Edge> edit_set(const Graph& g, const Graph& h, std::span<const int> pi) {
    if (g.order() != h.order()) throw OrderMismatch(g.order(), h.order());
    const Graph moved = g.relabeled(pi);
    std::vector<Edge> d;
    for (int x = 0; x < h.order(); ++x)
        for (int y = x + 1; y < h.order(); ++y)
            if (moved.adjacent(x, y) != h.adjacent(x, y)) d.emplace_back(x, y);
    return d;
}

MetricReport local_edit_distance(const Graph& g, const Graph& h, const AlignOptions& opts) {
    return align_metric(g, h, AlignmentMetricKind::local(), opts);
}

MetricReport cut_distance_graph_form(const Graph& g, const Graph& h) {
    if (g.order() != h.order()) throw OrderMismatch(g.order(), h.order());
    const int n = g.order();
    if (n > 7) throw BudgetExceeded("graph-form cut distance is limited to order 7");
    std::vector<std::uint32_t> nh(n, 0);
    for (const auto& [x, y] : h.edges()) {
        nh[x] |= 1U << y;
        nh[y] |= 1U << x;
    }
    const std::uint32_t subsets = 1U << n;
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<std::uint32_t> ng(n);
    std::vector<Score> diff(n), sums(subsets);
    Score best = kNoScore;
    std::vector<int> witness = pi;
    do {
        // Neighbourhoods of G carried over to H's vertex names.
        std::fill(ng.begin(), ng.end(), 0U);
        for (const auto& [u, v] : g.edges()) {
            ng[pi[u]] |= 1U << pi[v];
            ng[pi[v]] |= 1U << pi[u];
        }
        Score worst = 0;
        for (std::uint32_t x2 = 0; x2 < subsets && worst < best; ++x2) {
            for (int v = 0; v < n; ++v) diff[v] = std::popcount(ng[v] & x2) - std::popcount(nh[v] & x2);
            // e_G(X, X') - e_H(X, X') for every X, built up one vertex at a time.
            sums[0] = 0;
            for (std::uint32_t x1 = 1; x1 < subsets; ++x1) {
                sums[x1] = sums[x1 & (x1 - 1)] + diff[std::countr_zero(x1)];
                worst = std::max(worst, std::abs(sums[x1]));
            }
        }
        if (worst < best) {
            best = worst;
            witness = pi;
        }
    } while (std::next_permutation(pi.begin(), pi.end()));

    MetricReport r;
    r.metric = "cut-graph-form";
    r.solver = "exhaustive";
    r.value = static_cast<double>(best == kNoScore ? 0 : best);
    r.normalized_value = normalized(AlignmentMetricKind::cut(), r.value, n);
    r.witness = witness;
    return r;
}

MetricReport padded_metric(const Graph& g, const Graph& h, const AlignmentMetricKind& kind, double alpha, double beta,
                           const AlignOptions& opts) {
    const int k = std::abs(g.order() - h.order());
    const Graph gp = g.order() < h.order() ? pad(g, k) : g;
    const Graph hp = h.order() < g.order() ? pad(h, k) : h;
    MetricReport r = align_metric(gp, hp, kind, opts);
    r.metric = "padded-" + r.metric;
    r.value = alpha * k + beta * r.value;
    r.normalized_value = alpha * k + beta * r.normalized_value;
    return r;
}

namespace {

struct CorrespondenceSearch {
    const IntMatrix& dg;
    const IntMatrix& dh;
    int m;
    int n;
    bool prune;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::uint32_t> rows = {};  // rows[v] = set of w related to v
    Score best = kNoScore;
    std::vector<std::uint32_t> best_rows = {};

    // Largest distortion added by relating v to every w in s, given rows[0..v).
    Score added(int v, std::uint32_t s) const {
        Score worst = 0;
        for (std::uint32_t a = s; a; a &= a - 1) {
            const int w = std::countr_zero(a);
            for (std::uint32_t b = s; b; b &= b - 1) worst = std::max(worst, dh(w, std::countr_zero(b)));
            for (int u = 0; u < v; ++u)
                for (std::uint32_t b = rows[u]; b; b &= b - 1)
                    worst = std::max(worst, std::abs(dg(v, u) - dh(w, std::countr_zero(b))));
        }
        return worst;
    }

    void extend(int v, Score current, std::uint32_t covered) {
        if (++nodes > budget)
            throw BudgetExceeded("correspondence search exceeded its node budget of " + std::to_string(budget),
                                 best == kNoScore ? std::nullopt : std::optional<double>(static_cast<double>(best)));
        if (v == m) {
            if (covered == (n == 32 ? ~0U : (1U << n) - 1U) && current < best) {
                best = current;
                best_rows = rows;
            }
            return;
        }
        for (std::uint32_t s = 1; s < (1U << n); ++s) {
            const Score next = std::max(current, added(v, s));
            if (prune && next >= best) continue;
            rows[v] = s;
            extend(v + 1, next, covered | s);
        }
        rows[v] = 0;
    }
};

}  // namespace

MetricReport gromov_hausdorff(const Graph& g, const Graph& h, const GromovHausdorffOptions& opts) {
    const int m = g.order(), n = h.order();
    MetricReport r;
    r.metric = "gromov-hausdorff";
    if (m == 0 || n == 0) {
        if (m != n) throw std::invalid_argument("no correspondence between an empty and a nonempty vertex set");
        r.solver = "trivial";
        r.correspondence.emplace();
        return r;
    }
    if (n > 20) throw BudgetExceeded("correspondence search is limited to 20 vertices on the second side");
    const IntMatrix dg = int_matrix(distance_matrix(g));
    const IntMatrix dh = int_matrix(distance_matrix(h));
    const bool exhaustive = opts.exhaustive || m * n <= 20;
    CorrespondenceSearch search{dg, dh, m, n, !exhaustive, opts.node_budget};
    search.rows.assign(m, 0);
    search.extend(0, 0, 0);
    r.solver = exhaustive ? "exhaustive" : "branch-and-bound";
    r.sentinel_used = !is_connected(g) || !is_connected(h);
    r.value = static_cast<double>(search.best);
    r.normalized_value = r.value;
    r.correspondence.emplace();
    for (int v = 0; v < m; ++v)
        for (std::uint32_t s = search.best_rows[v]; s; s &= s - 1)
            r.correspondence->emplace_back(v, std::countr_zero(s));
    return r;
}

}  // namespace graphdist
