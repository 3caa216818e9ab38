#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graphdist/graph.hpp"
#include "graphdist/rational.hpp"

namespace graphdist {

// ---- counts --------------------------------------------------------------------
// Counts are exact. Backtracking visits at most |G|^|F| partial maps, so the
// intended range is |F| <= 8 on small targets; results that would not fit in
// 64 bits throw std::overflow_error.

std::int64_t hom(const Graph& f, const Graph& g);
// Injective homomorphisms.
std::int64_t emb(const Graph& f, const Graph& g);
// Injective maps with uv in E_F <=> h(u)h(v) in E_G.
std::int64_t semb(const Graph& f, const Graph& g);

// Root-down dynamic programme, O(|T| |G|^2). Throws std::invalid_argument
// unless t is a tree.
std::int64_t hom_tree(const Graph& t, const Graph& g);

// hom/n^k, emb/(n)_k and semb/(n)_k with (n)_k the falling factorial. The
// last two are 0 when k > n.
Rational hom_density(const Graph& f, const Graph& g);
Rational emb_density(const Graph& f, const Graph& g);
Rational semb_density(const Graph& f, const Graph& g);

// ---- conversions ---------------------------------------------------------------

struct PartitionTerm {
    std::vector<int> block;  // block[v] = index of v's block, in order of first appearance
    int blocks = 0;
    // (-1)^(n - blocks) * prod over blocks p of (|p| - 1)!
    std::int64_t weight = 0;
};

// All set partitions of {0..n-1}, in restricted-growth-string order.
std::vector<PartitionTerm> partitions(int n);

// F/P, or nothing when some edge of F lies inside a block (a loop).
std::optional<Graph> quotient(const Graph& f, const PartitionTerm& p);

// Graphs on V_F whose edge sets contain E_F, in increasing mask order over
// the non-edges of F.
std::vector<Graph> edge_supersets(const Graph& f);

using CountOracle = std::function<std::int64_t(const Graph&)>;

// emb(F) = sum over E' containing E_F of semb((V_F, E')).
std::int64_t emb_from_semb(const Graph& f, const CountOracle& semb_count);
// hom(F) = sum over partitions P of emb(F/P); looped quotients contribute 0.
std::int64_t hom_from_emb(const Graph& f, const CountOracle& emb_count);
// hom(F) via emb_from_semb inside hom_from_emb.
std::int64_t hom_from_semb(const Graph& f, const CountOracle& semb_count);
// emb(F) = sum over partitions P of weight(P) * hom(F/P).
std::int64_t emb_from_hom(const Graph& f, const CountOracle& hom_count);
// semb(F) = sum over E' containing E_F of (-1)^(|E'| - |E_F|) emb((V_F, E')).
std::int64_t semb_from_emb(const Graph& f, const CountOracle& emb_count);

// ---- graph classes -------------------------------------------------------------

enum class GraphClass {
    AllGraphsLabeled,  // every graph on {0..k-1}: 2^C(k,2) members
    Trees,             // one tree per isomorphism class
    Cycles,            // C_k, k >= 3
    Paths,             // the path on k vertices
};

std::string to_string(GraphClass c);
GraphClass graph_class_from_string(const std::string& name);

// Members with exactly k vertices, in a fixed order.
std::vector<Graph> class_members(GraphClass c, int k);

struct ClassDistance {
    Rational squared;  // truncated sum over k <= kmax, exact
    double value = 0.0;         // sqrt(squared)
    double tail_bound = 0.0;    // the omitted terms add at most 2^-kmax to `squared`
    double upper = 0.0;         // sqrt(squared + tail_bound)
    std::string convention;
};

// sqrt( sum_{k <= kmax} 1/(2^k |F_k|) sum_{F in F_k} (hd(F,G) - hd(F,H))^2 ),
// skipping sizes with no members.
ClassDistance delta_class(const Graph& g, const Graph& h, GraphClass c, int kmax);

// hom(F, G^(|H|)) = hom(F, H^(|G|)) for every member F with at most kmax
// vertices. Blow-ups multiply counts by k^|F|, so no blow-up is built.
bool hom_indistinguishable(const Graph& g, const Graph& h, GraphClass c, int kmax);

}  // namespace graphdist
