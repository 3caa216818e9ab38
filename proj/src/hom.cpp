#include "graphdist/hom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphdist {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("count exceeds 64 bits");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("count exceeds 64 bits");
    return out;
}

enum class MapKind { Hom, Emb, Semb };

// Backtracking over the vertices of F in breadth-first order, so every vertex
// after the first of its component has an already-placed neighbour whose
// image restricts the candidates.
class MapCounter {
public:
    MapCounter(const Graph& f, const Graph& g, MapKind kind) : f_(f), g_(g), kind_(kind) {
        const int k = f.order();
        std::vector<char> placed(k, 0);
        for (int s = 0; s < k; ++s) {
            if (placed[s]) continue;
            std::vector<int> queue{s};
            placed[s] = 1;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                order_.push_back(queue[i]);
                for (int u : f.neighbors(queue[i]))
                    if (!placed[u]) {
                        placed[u] = 1;
                        queue.push_back(u);
                    }
            }
        }
        earlier_nbrs_.resize(k);
        earlier_non_.resize(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < i; ++j)
                (f.adjacent(order_[i], order_[j]) ? earlier_nbrs_ : earlier_non_)[i].push_back(j);
        image_.assign(k, -1);
        used_.assign(g.order(), 0);
    }

    std::int64_t count() {
        if (f_.order() == 0) return 1;
        return extend(0);
    }

private:
    const Graph& f_;
    const Graph& g_;
    MapKind kind_;
    std::vector<int> order_;
    std::vector<std::vector<int>> earlier_nbrs_;  // positions, not vertices
    std::vector<std::vector<int>> earlier_non_;
    std::vector<int> image_;  // by position
    std::vector<char> used_;

    bool fits(int pos, int x) const {
        if (kind_ != MapKind::Hom && used_[x]) return false;
        for (int j : earlier_nbrs_[pos])
            if (!g_.adjacent(image_[j], x)) return false;
        if (kind_ == MapKind::Semb)
            for (int j : earlier_non_[pos])
                if (g_.adjacent(image_[j], x)) return false;
        return true;
    }

    template <typename Visit>
    void candidates(int pos, Visit&& visit) const {
        if (earlier_nbrs_[pos].empty()) {
            for (int x = 0; x < g_.order(); ++x)
                if (fits(pos, x)) visit(x);
        } else {
            for (int x : g_.neighbors(image_[earlier_nbrs_[pos].front()]))
                if (fits(pos, x)) visit(x);
        }
    }

    std::int64_t extend(int pos) {
        std::int64_t total = 0;
        if (pos + 1 == f_.order()) {
            candidates(pos, [&](int) { ++total; });
            return total;
        }
        candidates(pos, [&](int x) {
            image_[pos] = x;
            used_[x] = 1;
            total = checked_add(total, extend(pos + 1));
            used_[x] = 0;
        });
        image_[pos] = -1;
        return total;
    }
};

std::vector<std::vector<int>> components(const Graph& f) {
    std::vector<int> comp(f.order(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < f.order(); ++s) {
        if (comp[s] >= 0) continue;
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = static_cast<int>(out.size()) - 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            out.back().push_back(u);
            for (int v : f.neighbors(u))
                if (comp[v] < 0) {
                    comp[v] = comp[s];
                    stack.push_back(v);
                }
        }
    }
    return out;
}

Graph induced(const Graph& f, const std::vector<int>& vertices) {
    std::vector<int> index(f.order(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> e;
    for (auto [u, v] : f.edges())
        if (index[u] >= 0 && index[v] >= 0) e.emplace_back(index[u], index[v]);
    return Graph(static_cast<int>(vertices.size()), e);
}

BigInt falling_factorial(int n, int k) {
    BigInt out = 1;
    for (int i = 0; i < k; ++i) out *= n - i;
    return out;
}

BigInt power(int base, int exp) {
    BigInt out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

bool is_tree(const Graph& t) {
    return t.order() >= 1 && static_cast<int>(t.edge_count()) == t.order() - 1 && components(t).size() == 1;
}

std::vector<Graph> trees(int k) {
    if (k <= 0) return {};
    std::vector<Graph> level{Graph(1, {})};
    for (int size = 2; size <= k; ++size) {
        std::vector<Graph> next;
        for (const Graph& t : level)
            for (int v = 0; v < t.order(); ++v) {
                std::vector<Edge> e = t.edges();
                e.emplace_back(v, t.order());
                const Graph grown(size, e);
                if (std::none_of(next.begin(), next.end(), [&](const Graph& h) { return isomorphic(grown, h); }))
                    next.push_back(grown);
            }
        level = std::move(next);
    }
    return level;
}

}  // namespace

std::int64_t hom(const Graph& f, const Graph& g) {
    // Counts multiply over the components of F.
    std::int64_t total = 1;
    for (const auto& comp : components(f)) {
        const Graph part = induced(f, comp);
        total = checked_mul(total, MapCounter(part, g, MapKind::Hom).count());
        if (total == 0) break;
    }
    return total;
}

std::int64_t emb(const Graph& f, const Graph& g) {
    if (f.order() > g.order()) return 0;
    return MapCounter(f, g, MapKind::Emb).count();
}

std::int64_t semb(const Graph& f, const Graph& g) {
    if (f.order() > g.order()) return 0;
    return MapCounter(f, g, MapKind::Semb).count();
}

std::int64_t hom_tree(const Graph& t, const Graph& g) {
    if (!is_tree(t)) throw std::invalid_argument("hom_tree needs a tree");
    const int k = t.order(), n = g.order();
    std::vector<int> order{0}, parent(k, -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int u : t.neighbors(order[i]))
            if (u != parent[order[i]]) {
                parent[u] = order[i];
                order.push_back(u);
            }
    // c[u][x]: homomorphisms of the subtree below u with u -> x.
    std::vector<std::vector<std::int64_t>> c(k, std::vector<std::int64_t>(n, 1));
    for (int i = k - 1; i > 0; --i) {
        const int u = order[i], p = parent[u];
        for (int x = 0; x < n; ++x) {
            std::int64_t s = 0;
            for (int y : g.neighbors(x)) s = checked_add(s, c[u][y]);
            c[p][x] = checked_mul(c[p][x], s);
        }
    }
    std::int64_t total = 0;
    for (int x = 0; x < n; ++x) total = checked_add(total, c[0][x]);
    return total;
}

Rational hom_density(const Graph& f, const Graph& g) {
    if (g.order() == 0) throw std::invalid_argument("densities need a nonempty target");
    return Rational(BigInt(hom(f, g)), power(g.order(), f.order()));
}

Rational emb_density(const Graph& f, const Graph& g) {
    if (g.order() == 0) throw std::invalid_argument("densities need a nonempty target");
    if (f.order() > g.order()) return 0;
    return Rational(BigInt(emb(f, g)), falling_factorial(g.order(), f.order()));
}

Rational semb_density(const Graph& f, const Graph& g) {
    if (g.order() == 0) throw std::invalid_argument("densities need a nonempty target");
    if (f.order() > g.order()) return 0;
    return Rational(BigInt(semb(f, g)), falling_factorial(g.order(), f.order()));
}

// ---- conversions ---------------------------------------------------------------

std::vector<PartitionTerm> partitions(int n) {
    std::vector<PartitionTerm> out;
    if (n == 0) {
        out.push_back({{}, 0, 1});
        return out;
    }
    std::vector<int> a(n, 0), max_before(n, 0);
    while (true) {
        PartitionTerm p;
        p.block = a;
        p.blocks = *std::max_element(a.begin(), a.end()) + 1;
        std::vector<int> size(p.blocks, 0);
        for (int b : a) ++size[b];
        p.weight = (n - p.blocks) % 2 == 0 ? 1 : -1;
        for (int s : size)
            for (int i = 2; i < s; ++i) p.weight *= i;
        out.push_back(std::move(p));
        // Next restricted growth string: a[i] <= 1 + max(a[0..i-1]).
        int i = n - 1;
        while (i > 0 && a[i] == max_before[i] + 1) --i;
        if (i == 0) break;
        ++a[i];
        for (int j = i + 1; j < n; ++j) {
            a[j] = 0;
            max_before[j] = std::max(max_before[j - 1], a[j - 1]);
        }
    }
    return out;
}

std::optional<Graph> quotient(const Graph& f, const PartitionTerm& p) {
    std::vector<Edge> e;
    for (auto [u, v] : f.edges()) {
        if (p.block[u] == p.block[v]) return std::nullopt;
        e.emplace_back(p.block[u], p.block[v]);
    }
    return Graph(p.blocks, e);
}

std::vector<Graph> edge_supersets(const Graph& f) {
    std::vector<Edge> missing;
    for (int u = 0; u < f.order(); ++u)
        for (int v = u + 1; v < f.order(); ++v)
            if (!f.adjacent(u, v)) missing.emplace_back(u, v);
    if (missing.size() > 20) throw std::invalid_argument("too many non-edges to enumerate supersets");
    std::vector<Graph> out;
    for (std::uint32_t mask = 0; mask < (1U << missing.size()); ++mask) {
        std::vector<Edge> e = f.edges();
        for (std::size_t i = 0; i < missing.size(); ++i)
            if (mask >> i & 1U) e.push_back(missing[i]);
        out.emplace_back(f.order(), e);
    }
    return out;
}

std::int64_t emb_from_semb(const Graph& f, const CountOracle& semb_count) {
    std::int64_t total = 0;
    for (const Graph& s : edge_supersets(f)) total = checked_add(total, semb_count(s));
    return total;
}

std::int64_t hom_from_emb(const Graph& f, const CountOracle& emb_count) {
    std::int64_t total = 0;
    for (const auto& p : partitions(f.order()))
        if (auto q = quotient(f, p)) total = checked_add(total, emb_count(*q));
    return total;
}

std::int64_t hom_from_semb(const Graph& f, const CountOracle& semb_count) {
    return hom_from_emb(f, [&](const Graph& q) { return emb_from_semb(q, semb_count); });
}

std::int64_t emb_from_hom(const Graph& f, const CountOracle& hom_count) {
    std::int64_t total = 0;
    for (const auto& p : partitions(f.order()))
        if (auto q = quotient(f, p)) total = checked_add(total, checked_mul(p.weight, hom_count(*q)));
    return total;
}

std::int64_t semb_from_emb(const Graph& f, const CountOracle& emb_count) {
    std::int64_t total = 0;
    for (const Graph& s : edge_supersets(f)) {
        const std::int64_t c = emb_count(s);
        total = checked_add(total, (s.edge_count() - f.edge_count()) % 2 == 0 ? c : -c);
    }
    return total;
}

// ---- graph classes -------------------------------------------------------------

std::string to_string(GraphClass c) {
    switch (c) {
        case GraphClass::AllGraphsLabeled: return "all";
        case GraphClass::Trees: return "trees";
        case GraphClass::Cycles: return "cycles";
        case GraphClass::Paths: return "paths";
    }
    return "?";
}

GraphClass graph_class_from_string(const std::string& name) {
    for (auto c : {GraphClass::AllGraphsLabeled, GraphClass::Trees, GraphClass::Cycles, GraphClass::Paths})
        if (to_string(c) == name) return c;
    throw std::invalid_argument("unknown graph class '" + name + "' (expected all, trees, cycles or paths)");
}

std::vector<Graph> class_members(GraphClass c, int k) {
    if (k <= 0) return {};
    switch (c) {
        case GraphClass::AllGraphsLabeled: {
            if (k > 7) throw std::invalid_argument("labelled graph enumeration is limited to 7 vertices");
            Graph empty(k, {});
            return edge_supersets(empty);
        }
        case GraphClass::Trees: return trees(k);
        case GraphClass::Cycles: return k >= 3 ? std::vector<Graph>{cycle(k)} : std::vector<Graph>{};
        case GraphClass::Paths: return {path(k)};
    }
    return {};
}

ClassDistance delta_class(const Graph& g, const Graph& h, GraphClass c, int kmax) {
    if (g.order() == 0 || h.order() == 0) throw std::invalid_argument("densities need nonempty graphs");
    ClassDistance out;
    for (int k = 1; k <= kmax; ++k) {
        const auto members = class_members(c, k);
        if (members.empty()) continue;
        Rational s = 0;
        for (const Graph& f : members) {
            const Rational d = hom_density(f, g) - hom_density(f, h);
            s += d * d;
        }
        out.squared += s / (Rational(BigInt(1) << k) * static_cast<long long>(members.size()));
    }
    out.value = std::sqrt(to_double(out.squared));
    out.tail_bound = std::ldexp(1.0, -kmax);
    out.upper = std::sqrt(to_double(out.squared) + out.tail_bound);
    out.convention = c == GraphClass::AllGraphsLabeled ? "F_k = labelled graphs on {0..k-1}"
                                                       : "F_k = class members on k vertices";
    return out;
}

bool hom_indistinguishable(const Graph& g, const Graph& h, GraphClass c, int kmax) {
    const int m = g.order(), n = h.order();
    for (int k = 1; k <= kmax; ++k)
        for (const Graph& f : class_members(c, k))
            if (BigInt(hom(f, g)) * power(n, k) != BigInt(hom(f, h)) * power(m, k)) return false;
    return true;
}

}  // namespace graphdist
