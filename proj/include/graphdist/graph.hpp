#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphdist/matrix.hpp"

namespace graphdist {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph on the vertices 0..order()-1.
// Edges are stored normalised (u < v), sorted and without duplicates.
class Graph {
public:
    Graph() = default;
    // Throws std::invalid_argument on loops or out-of-range endpoints;
    // duplicate edges (in either orientation) collapse.
    Graph(int order, std::span<const Edge> edges);
    Graph(int order, std::initializer_list<Edge> edges)
        : Graph(order, std::span<const Edge>(edges.begin(), edges.size())) {}

    int order() const { return order_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool adjacent(Vertex u, Vertex v) const { return adj_[static_cast<std::size_t>(u) * order_ + v] != 0; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return nbrs_[v]; }
    int degree(Vertex v) const { return static_cast<int>(nbrs_[v].size()); }

    // Relabels vertices: vertex v becomes perm[v].
    Graph relabeled(std::span<const int> perm) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.order_ == b.order_ && a.edges_ == b.edges_;
    }

private:
    int order_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<Vertex>> nbrs_;
};

// ---- derived matrices ------------------------------------------------------

Matrix adjacency(const Graph& g);
Graph from_adjacency(const Matrix& a);

// Entry written to distance matrices for vertex pairs in different components.
// It is finite and exceeds every true shortest-path length.
inline int disconnected_sentinel(const Graph& g) { return 2 * g.order(); }

// BFS shortest-path lengths; disconnected pairs get disconnected_sentinel(g).
Matrix distance_matrix(const Graph& g);
bool is_connected(const Graph& g);

// ---- structural operations -------------------------------------------------

// Replaces every vertex v by copies (v,0..k-1); (v,i) ~ (w,j) iff v ~ w.
// Copy (v,i) gets index v*k + i (v-major), so adjacency(blow_up(g,k)) equals
// tensor_blow_up(adjacency(g),k).
Graph blow_up(const Graph& g, int k);
// Appends k isolated vertices with indices order()..order()+k-1.
Graph pad(const Graph& g, int k);
// Vertices of h are shifted by g.order().
Graph disjoint_union(const Graph& g, const Graph& h);
Graph complement(const Graph& g);

// ---- generators ------------------------------------------------------------

Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph star(int leaves);
Graph complete_bipartite(int a, int b);
Graph edgeless(int n);
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// ---- isomorphism -------------------------------------------------------------

// Exact test by backtracking inside colour classes of the joint stable
// Weisfeiler-Leman colouring. When the graphs are isomorphic the returned
// witness pi satisfies: uv in E(g) <=> pi[u]pi[v] in E(h).
std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h);
inline bool isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

// ---- file formats ------------------------------------------------------------

// "n m" header followed by m lines "u v".
Graph from_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);
// {"n": int, "edges": [[u,v],...]}
Graph from_json_text(const std::string& text);
std::string to_json_text(const Graph& g);
// Picks the format from the first non-blank character ('{' means JSON).
Graph read_graph_file(const std::string& path);

}  // namespace graphdist
