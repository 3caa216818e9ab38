#include <algorithm>

#include "graphdist/graph.hpp"
#include "graphdist/wl.hpp"

namespace graphdist {

namespace {

struct IsoSearch {
    const Graph& g;
    const Graph& h;
    const std::vector<int>& color_g;
    const std::vector<int>& color_h;
    std::vector<int> order;  // g-vertices in assignment order
    std::vector<int> map;    // g -> h, -1 if unassigned
    std::vector<char> used;  // h vertices taken

    bool consistent(int u, int x) const {
        for (int k = 0; k < static_cast<int>(order.size()); ++k) {
            const int v = order[k];
            if (map[v] < 0) continue;
            if (g.adjacent(u, v) != h.adjacent(x, map[v])) return false;
        }
        return true;
    }

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        const int u = order[depth];
        for (int x = 0; x < h.order(); ++x) {
            if (used[x] || color_h[x] != color_g[u] || h.degree(x) != g.degree(u)) continue;
            if (!consistent(u, x)) continue;
            map[u] = x;
            used[x] = 1;
            if (extend(depth + 1)) return true;
            map[u] = -1;
            used[x] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
    if (g.order() != h.order() || g.edge_count() != h.edge_count()) return std::nullopt;
    const Graph pair[] = {g, h};
    const auto joint = wl::refine_jointly(pair);
    if (joint.histograms[0].per_iteration.back() != joint.histograms[1].per_iteration.back()) return std::nullopt;

    const auto& cg = joint.per_graph[0].colors.back();
    const auto& ch = joint.per_graph[1].colors.back();

    // Assign small colour classes first, then grow along edges so that
    // adjacency constraints bite early.
    std::vector<int> class_size(*std::max_element(cg.begin(), cg.end()) + 1, 0);
    for (int c : cg) ++class_size[c];
    std::vector<int> order;
    std::vector<char> placed(g.order(), 0);
    while (static_cast<int>(order.size()) < g.order()) {
        int best = -1;
        for (int v = 0; v < g.order(); ++v) {
            if (placed[v]) continue;
            int links = 0;
            for (int w : g.neighbors(v)) links += placed[w];
            auto key = [&](int x, int l) { return std::make_tuple(l > 0, -class_size[cg[x]], l); };
            if (best < 0) {
                best = v;
                continue;
            }
            int best_links = 0;
            for (int w : g.neighbors(best)) best_links += placed[w];
            if (key(v, links) > key(best, best_links)) best = v;
        }
        placed[best] = 1;
        order.push_back(best);
    }

    IsoSearch search{g, h, cg, ch, order, std::vector<int>(g.order(), -1), std::vector<char>(h.order(), 0)};
    if (!search.extend(0)) return std::nullopt;
    return search.map;
}

}  // namespace graphdist
