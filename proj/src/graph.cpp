#include "graphdist/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "graphdist/error.hpp"
#include "json.hpp"

namespace graphdist {

Graph::Graph(int order, std::span<const Edge> edges) : order_(order) {
    if (order < 0) throw std::invalid_argument("graph order must be nonnegative");
    adj_.assign(static_cast<std::size_t>(order) * order, 0);
    nbrs_.resize(order);
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= order || v >= order)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u) * order_ + v] = 1;
        adj_[static_cast<std::size_t>(v) * order_ + u] = 1;
        nbrs_[u].push_back(v);
        nbrs_[v].push_back(u);
    }
    for (auto& nb : nbrs_) std::sort(nb.begin(), nb.end());
}

Graph Graph::relabeled(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != order_) throw std::invalid_argument("relabeling has wrong size");
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (auto [u, v] : edges_) e.emplace_back(perm[u], perm[v]);
    return Graph(order_, e);
}

Matrix adjacency(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.order());
    Matrix a(n, n);
    for (auto [u, v] : g.edges()) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

Graph from_adjacency(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("adjacency matrix must be square");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if (a(i, j) != a(j, i)) throw std::invalid_argument("adjacency matrix must be symmetric");
            if (a(i, j) == 1.0)
                e.emplace_back(static_cast<int>(i), static_cast<int>(j));
            else if (a(i, j) != 0.0)
                throw std::invalid_argument("adjacency matrix must be 0/1");
        }
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (a(i, i) != 0.0) throw std::invalid_argument("adjacency matrix must have zero diagonal");
    return Graph(static_cast<int>(a.rows()), e);
}

Matrix distance_matrix(const Graph& g) {
    const int n = g.order();
    const double sentinel = disconnected_sentinel(g);
    Matrix d(n, n, sentinel);
    std::vector<int> dist(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(u))
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
        }
        for (int t = 0; t < n; ++t)
            if (dist[t] >= 0) d(s, t) = dist[t];
    }
    return d;
}

bool is_connected(const Graph& g) {
    if (g.order() <= 1) return true;
    std::vector<char> seen(g.order(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(u))
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.order();
}

Graph blow_up(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("blow-up factor must be at least 1");
    std::vector<Edge> e;
    e.reserve(g.edge_count() * k * k);
    for (auto [v, w] : g.edges())
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) e.emplace_back(v * k + i, w * k + j);
    return Graph(g.order() * k, e);
}

Graph pad(const Graph& g, int k) {
    if (k < 0) throw std::invalid_argument("padding must be nonnegative");
    return Graph(g.order() + k, g.edges());
}

Graph disjoint_union(const Graph& g, const Graph& h) {
    std::vector<Edge> e(g.edges());
    for (auto [u, v] : h.edges()) e.emplace_back(u + g.order(), v + g.order());
    return Graph(g.order() + h.order(), e);
}

Graph complement(const Graph& g) {
    std::vector<Edge> e;
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (!g.adjacent(u, v)) e.emplace_back(u, v);
    return Graph(g.order(), e);
}

Graph complete(int n) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    return complement(edgeless(n));
}

Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

Graph path(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

Graph star(int leaves) {
    if (leaves < 0) throw std::invalid_argument("star needs a nonnegative number of leaves");
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(leaves + 1, e);
}

Graph complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("complete bipartite graph needs both sides >= 1");
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph(a + b, e);
}

Graph edgeless(int n) {
    if (n < 0) throw std::invalid_argument("edgeless graph needs n >= 0");
    return Graph(n, std::span<const Edge>{});
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random graph needs n >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
    std::mt19937_64 rng(seed);
    // Fixed 53-bit uniform draw so the result does not depend on the
    // standard library's distribution implementation.
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform() < p) e.emplace_back(u, v);
    return Graph(n, e);
}

// ---- file formats ------------------------------------------------------------

namespace {

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

// Parses exactly `count` integers from the line; anything else is an error.
std::vector<long long> parse_ints(const std::string& line, std::size_t count, std::size_t line_no) {
    std::istringstream in(line);
    std::vector<long long> out;
    long long x = 0;
    while (in >> x) out.push_back(x);
    if (!in.eof()) throw ParseError("expected integers, got \"" + line + "\"", line_no);
    if (out.size() != count)
        throw ParseError("expected " + std::to_string(count) + " integers, got " + std::to_string(out.size()),
                         line_no);
    return out;
}

}  // namespace

Graph from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    long long n = -1;
    long long m = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        auto hdr = parse_ints(line, 2, line_no);
        n = hdr[0];
        m = hdr[1];
        break;
    }
    if (n < 0 || m < 0) throw ParseError("missing or negative \"n m\" header", line_no);
    if (n > 1'000'000) throw ParseError("graph order too large", line_no);
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        if (static_cast<long long>(edges.size()) == m) throw ParseError("more edge lines than declared", line_no);
        auto uv = parse_ints(line, 2, line_no);
        if (uv[0] < 0 || uv[0] >= n || uv[1] < 0 || uv[1] >= n)
            throw ParseError("vertex out of range [0," + std::to_string(n) + ")", line_no);
        if (uv[0] == uv[1]) throw ParseError("loop edge at vertex " + std::to_string(uv[0]), line_no);
        edges.emplace_back(static_cast<int>(uv[0]), static_cast<int>(uv[1]));
    }
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError("declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()), line_no);
    return Graph(static_cast<int>(n), edges);
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("graph JSON needs an integer field \"n\"", 0);
    const long long n = doc["n"].get<long long>();
    if (n < 0) throw ParseError("\"n\" must be nonnegative", 0);
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array", 0);
        std::size_t idx = 0;
        for (const auto& e : doc["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw ParseError("edge #" + std::to_string(idx) + " must be a pair of integers", 0);
            const long long u = e[0].get<long long>();
            const long long v = e[1].get<long long>();
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError("edge #" + std::to_string(idx) + " has a vertex out of range", 0);
            if (u == v) throw ParseError("edge #" + std::to_string(idx) + " is a loop", 0);
            edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
            ++idx;
        }
    }
    return Graph(static_cast<int>(n), edges);
}

std::string to_json_text(const Graph& g) {
    nlohmann::json doc;
    doc["n"] = g.order();
    doc["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges()) doc["edges"].push_back({u, v});
    return doc.dump();
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return from_json_text(text);
    return from_edge_list(text);
}

}  // namespace graphdist
