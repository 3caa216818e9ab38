#include "graphdist/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace graphdist {

namespace {

int pair_index(int k, int u, int v) {
    // pairs (0,1..k-1), (1,2..k-1), ...
    return u * (2 * k - u - 1) / 2 + (v - u - 1);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint32_t induced_mask(const Graph& g, const std::vector<int>& tuple) {
    const int k = static_cast<int>(tuple.size());
    std::uint32_t mask = 0;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v)
            if (g.adjacent(tuple[u], tuple[v])) mask |= 1U << pair_index(k, u, v);
    return mask;
}

void check_k(int k) {
    if (k < 1 || k > 7) throw std::invalid_argument("subgraph size must be between 1 and 7");
}

std::map<std::uint32_t, double> empirical(const Graph& g, int k, std::int64_t samples, std::uint64_t seed) {
    std::map<std::uint32_t, double> out;
    if (g.order() < k) {
        out[0] = 1.0;
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    std::map<std::uint32_t, std::int64_t> counts;
    std::vector<int> tuple(k);
    for (std::int64_t s = 0; s < samples; ++s) {
        // rejection until the tuple is injective
        while (true) {
            bool distinct = true;
            for (int i = 0; i < k && distinct; ++i) {
                tuple[i] = pick(rng);
                for (int j = 0; j < i; ++j)
                    if (tuple[j] == tuple[i]) distinct = false;
            }
            if (distinct) break;
        }
        ++counts[induced_mask(g, tuple)];
    }
    for (auto [mask, c] : counts) out[mask] = static_cast<double>(c) / static_cast<double>(samples);
    return out;
}

}  // namespace

std::uint32_t edge_mask(const Graph& f) {
    if (f.order() > 8) throw std::invalid_argument("edge masks cover at most 8 vertices");
    std::uint32_t mask = 0;
    for (auto [u, v] : f.edges()) mask |= 1U << pair_index(f.order(), u, v);
    return mask;
}

Graph graph_from_mask(int k, std::uint32_t mask) {
    std::vector<Edge> e;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v)
            if (mask >> pair_index(k, u, v) & 1U) e.emplace_back(u, v);
    return Graph(k, e);
}

Rational SubgraphDistribution::operator()(std::uint32_t mask) const {
    const auto it = p.find(mask);
    return it == p.end() ? Rational(0) : it->second;
}

SubgraphDistribution exact_distribution(const Graph& g, int k) {
    check_k(k);
    SubgraphDistribution out;
    out.k = k;
    const int n = g.order();
    if (n < k) {
        out.p[0] = 1;
        return out;
    }
    // Every injective k-tuple induces exactly one labelled graph.
    std::map<std::uint32_t, std::int64_t> counts;
    std::int64_t total = 0;
    std::vector<int> tuple(k, 0);
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            ++counts[induced_mask(g, tuple)];
            ++total;
            return;
        }
        for (int x = 0; x < n; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            tuple[pos] = x;
            self(self, pos + 1);
            used[x] = 0;
        }
    };
    rec(rec, 0);
    for (auto [mask, c] : counts) out.p[mask] = Rational(c, total);
    return out;
}

Rational tv_distance(const SubgraphDistribution& p, const SubgraphDistribution& q) {
    if (p.k != q.k) throw std::invalid_argument("distributions are over different subgraph sizes");
    Rational s = 0;
    for (const auto& [mask, x] : p.p) s += abs(x - q(mask));
    for (const auto& [mask, y] : q.p)
        if (!p.p.count(mask)) s += y;
    return s / 2;
}

double tv_distance(const std::map<std::uint32_t, double>& p, const std::map<std::uint32_t, double>& q) {
    double s = 0.0;
    for (const auto& [mask, x] : p) {
        const auto it = q.find(mask);
        s += std::abs(x - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [mask, y] : q)
        if (!p.count(mask)) s += y;
    return s / 2.0;
}

double hoeffding_tail(double eps, std::int64_t samples) {
    return 2.0 * std::exp(-2.0 * eps * eps * static_cast<double>(samples));
}

std::int64_t mc_sample_size(int k, double eps, double delta_each) {
    check_k(k);
    if (!(eps > 0.0) || !(delta_each > 0.0) || delta_each >= 1.0)
        throw std::invalid_argument("need eps > 0 and 0 < delta < 1");
    // Union bound over the 2^s events of a space with s = 2^C(k,2) points.
    const double points = std::ldexp(1.0, k * (k - 1) / 2);
    return static_cast<std::int64_t>(std::ceil((points * std::log(2.0) + std::log(2.0 / delta_each)) / (2.0 * eps * eps)));
}

SamplingResult sampling_distance_exact(const Graph& g, const Graph& h, int kmax) {
    SamplingResult out;
    Rational sum = 0;
    for (int k = 1; k <= kmax; ++k) {
        const Rational tv = tv_distance(exact_distribution(g, k), exact_distribution(h, k));
        out.tv.push_back(to_double(tv));
        sum += tv / Rational(BigInt(1) << k);
    }
    out.exact = sum;
    out.value = to_double(sum);
    out.tail_bound = std::ldexp(1.0, -kmax);
    return out;
}

SamplingResult sampling_distance_mc(const Graph& g, const Graph& h, int kmax, const McOptions& opts) {
    if (kmax < 1) throw std::invalid_argument("kmax must be positive");
    SamplingResult out;
    McCertificate cert;
    cert.eps = opts.eps;
    cert.confidence = 1.0 - opts.delta;
    cert.seed = opts.seed;
    // Two graphs per k share the failure probability delta.
    const double delta_each = opts.delta / (2.0 * kmax);
    for (int k = 1; k <= kmax; ++k) {
        const std::int64_t n = mc_sample_size(k, opts.eps, delta_each);
        cert.samples.push_back(n);
        const auto pg = empirical(g, k, n, splitmix64(opts.seed ^ splitmix64(2 * k)));
        const auto ph = empirical(h, k, n, splitmix64(opts.seed ^ splitmix64(2 * k + 1)));
        const double tv = tv_distance(pg, ph);
        out.tv.push_back(tv);
        out.value += std::ldexp(tv, -k);
        // Each empirical distribution is within eps of its source in total
        // variation, so the estimated distance moves by at most 2 eps.
        cert.radius += std::ldexp(2.0 * opts.eps, -k);
    }
    out.tail_bound = std::ldexp(1.0, -kmax);
    out.certificate = cert;
    return out;
}

}  // namespace graphdist
