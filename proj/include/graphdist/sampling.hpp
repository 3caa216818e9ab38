#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "graphdist/graph.hpp"
#include "graphdist/rational.hpp"

namespace graphdist {

// Labelled graphs on {0..k-1} are keyed by their edge mask: bit i stands for
// the i-th pair in the order (0,1), (0,2), ..., (0,k-1), (1,2), ...
std::uint32_t edge_mask(const Graph& f);
Graph graph_from_mask(int k, std::uint32_t mask);

// Distribution of the labelled graph induced on a uniformly random injective
// k-tuple of vertices. Zero-probability graphs are not stored.
struct SubgraphDistribution {
    int k = 0;
    std::map<std::uint32_t, Rational> p;

    Rational operator()(std::uint32_t mask) const;
};

// p(F) = semb(F,G) / (n)_k. When |G| < k the distribution is a point mass on
// the edgeless graph.
SubgraphDistribution exact_distribution(const Graph& g, int k);

// Half the l1 distance. Throws std::invalid_argument when k differs.
Rational tv_distance(const SubgraphDistribution& p, const SubgraphDistribution& q);
double tv_distance(const std::map<std::uint32_t, double>& p, const std::map<std::uint32_t, double>& q);

// Hoeffding for the mean of N independent [0,1] variables:
// Pr(|mean - E| >= eps) <= 2 exp(-2 eps^2 N).
double hoeffding_tail(double eps, std::int64_t samples);

// Samples per (graph, k) so that, with probability 1 - delta_each, every event
// of the 2^C(k,2)-point space has its probability estimated within eps.
std::int64_t mc_sample_size(int k, double eps, double delta_each);

struct McOptions {
    double eps = 0.05;
    double delta = 0.05;
    std::uint64_t seed = 0;
};

struct McCertificate {
    std::vector<std::int64_t> samples;  // per k = 1..kmax, for each graph
    double eps = 0.0;
    double confidence = 0.0;  // 1 - delta
    double radius = 0.0;      // |estimate - truncated exact value| <= radius
    std::uint64_t seed = 0;
};

struct SamplingResult {
    double value = 0.0;  // truncated sum over k <= kmax
    std::optional<Rational> exact;  // exact mode only
    std::vector<double> tv;         // per k = 1..kmax
    double tail_bound = 0.0;        // the omitted terms add at most 2^-kmax
    std::optional<McCertificate> certificate;
};

// sum_{k <= kmax} 2^-k tv(p_{G,k}, p_{H,k}) from exact distributions.
SamplingResult sampling_distance_exact(const Graph& g, const Graph& h, int kmax);

// The same sum from empirical distributions of injective samples. Each k and
// graph draws from its own generator, seeded from opts.seed by a fixed split.
SamplingResult sampling_distance_mc(const Graph& g, const Graph& h, int kmax, const McOptions& opts = {});

}  // namespace graphdist
