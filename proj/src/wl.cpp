#include "graphdist/wl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphdist::wl {

namespace {

// One refinement round: the new colour of v is the sorted multiset of its
// neighbours' colours, interned by rank among the distinct codes.
std::vector<int> refine_step(const Graph& g, const std::vector<int>& prev, int& classes) {
    const int n = g.order();
    std::vector<std::vector<int>> codes(n);
    for (int v = 0; v < n; ++v) {
        auto& code = codes[v];
        code.reserve(g.neighbors(v).size());
        for (int w : g.neighbors(v)) code.push_back(prev[w]);
        std::sort(code.begin(), code.end());
    }
    std::map<std::vector<int>, int> intern;
    for (const auto& c : codes) intern.emplace(c, 0);
    int next_id = 0;
    for (auto& [code, id] : intern) id = next_id++;
    classes = next_id;
    std::vector<int> out(n);
    for (int v = 0; v < n; ++v) out[v] = intern.at(codes[v]);
    return out;
}

int count_classes(const std::vector<int>& colors) {
    if (colors.empty()) return 0;
    return *std::max_element(colors.begin(), colors.end()) + 1;
}

}  // namespace

int Refinement::class_count(std::size_t iteration) const {
    return count_classes(colors.at(iteration));
}

Refinement refine(const Graph& g, std::optional<int> max_iterations) {
    Refinement r;
    r.colors.emplace_back(g.order(), 0);
    int classes = g.order() > 0 ? 1 : 0;
    for (int i = 0;; ++i) {
        if (max_iterations && i >= *max_iterations) {
            r.stable_iteration = -1;
            break;
        }
        int next_classes = 0;
        auto next = refine_step(g, r.colors.back(), next_classes);
        if (next_classes == classes) {
            r.stable_iteration = i;
            break;
        }
        classes = next_classes;
        r.colors.push_back(std::move(next));
    }
    if (r.stable_iteration < 0) {
        // Cap reached before stabilisation was observed; check whether the
        // last computed partition is already stable.
        int next_classes = 0;
        refine_step(g, r.colors.back(), next_classes);
        r.stable_iteration = next_classes == classes ? static_cast<int>(r.colors.size()) - 1 : -1;
    }
    return r;
}

JointRefinement refine_jointly(std::span<const Graph> graphs, std::optional<int> max_iterations) {
    Graph all;
    std::vector<int> offsets;
    for (const auto& g : graphs) {
        offsets.push_back(all.order());
        all = disjoint_union(all, g);
    }
    offsets.push_back(all.order());

    const Refinement joint = refine(all, max_iterations);
    JointRefinement out;
    out.stable_iteration = joint.stable_iteration;
    for (const auto& colors : joint.colors) out.colors_at_iteration.push_back(count_classes(colors));

    for (std::size_t k = 0; k < graphs.size(); ++k) {
        Refinement r;
        ColorHistogram h;
        for (std::size_t i = 0; i < joint.colors.size(); ++i) {
            const auto& all_colors = joint.colors[i];
            r.colors.emplace_back(all_colors.begin() + offsets[k], all_colors.begin() + offsets[k + 1]);
            std::vector<std::int64_t> counts(out.colors_at_iteration[i], 0);
            for (int c : r.colors.back()) ++counts[c];
            h.per_iteration.push_back(std::move(counts));
        }
        // The partition of one graph stabilises no later than the union's.
        r.stable_iteration = static_cast<int>(r.colors.size()) - 1;
        for (std::size_t i = 0; i + 1 < r.colors.size(); ++i)
            if (count_classes(r.colors[i]) == count_classes(r.colors[i + 1])) {
                r.stable_iteration = static_cast<int>(i);
                break;
            }
        out.per_graph.push_back(std::move(r));
        out.histograms.push_back(std::move(h));
    }
    return out;
}

std::optional<int> distinguishes(const Graph& g, const Graph& h) {
    const Graph pair[] = {g, h};
    const auto joint = refine_jointly(pair);
    for (std::size_t i = 0; i < joint.histograms[0].iterations(); ++i)
        if (joint.histograms[0].per_iteration[i] != joint.histograms[1].per_iteration[i])
            return static_cast<int>(i);
    return std::nullopt;
}

namespace {

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * b[c];
    return s;
}

// Kernel between histograms a and b that come from the same joint refinement
// with the given stable iteration.
double kernel_from(const ColorHistogram& a, const ColorHistogram& b, int stable, const KernelOptions& opts) {
    const int last = static_cast<int>(a.iterations()) - 1;
    const int s = std::min(stable, last);
    auto contribution = [&](int i) { return static_cast<double>(dot(a.per_iteration[i], b.per_iteration[i])); };
    double sum = 0.0;
    if (opts.mode == KernelMode::Geometric) {
        for (int i = 0; i < s; ++i) sum += std::ldexp(contribution(i), -i);
        // sum_{i >= s} 2^-i = 2^(1-s)
        sum += std::ldexp(contribution(s), 1 - s);
    } else {
        if (opts.iterations < 0) throw std::invalid_argument("iteration count must be nonnegative");
        for (int i = 0; i <= opts.iterations; ++i) sum += contribution(std::min(i, s));
    }
    return sum;
}

}  // namespace

double kernel(const Graph& g, const Graph& h, const KernelOptions& opts) {
    const Graph pair[] = {g, h};
    const auto joint = refine_jointly(pair);
    return kernel_from(joint.histograms[0], joint.histograms[1], joint.stable_iteration, opts);
}

double metric(const Graph& g, const Graph& h, const KernelOptions& opts) {
    const Graph pair[] = {g, h};
    const auto joint = refine_jointly(pair);
    const auto& a = joint.histograms[0];
    const auto& b = joint.histograms[1];
    const int s = joint.stable_iteration;
    const double sq = kernel_from(a, a, s, opts) - 2.0 * kernel_from(a, b, s, opts) + kernel_from(b, b, s, opts);
    return std::sqrt(std::max(sq, 0.0));
}

std::vector<std::vector<double>> gram_matrix(std::span<const Graph> graphs, const KernelOptions& opts) {
    const auto joint = refine_jointly(graphs);
    std::vector<std::vector<double>> k(graphs.size(), std::vector<double>(graphs.size()));
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = i; j < graphs.size(); ++j)
            k[i][j] = k[j][i] = kernel_from(joint.histograms[i], joint.histograms[j], joint.stable_iteration, opts);
    return k;
}

double depth_metric(const Graph& g, const Graph& h) {
    const auto k = distinguishes(g, h);
    if (!k) return 0.0;
    return 1.0 / std::max(*k, 1);
}

}  // namespace graphdist::wl
