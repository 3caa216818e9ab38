#include "graphdist/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "graphdist/align.hpp"
#include "graphdist/frac.hpp"
#include "graphdist/graph.hpp"
#include "graphdist/hom.hpp"
#include "graphdist/norms.hpp"
#include "graphdist/ot.hpp"
#include "graphdist/sampling.hpp"
#include "graphdist/wl.hpp"

namespace graphdist::verify {

Profile profile_from_string(const std::string& name) {
    if (name == "tiny") return Profile::Tiny;
    if (name == "desk") return Profile::Desk;
    if (name == "extended") return Profile::Extended;
    throw std::invalid_argument("unknown budget profile '" + name + "' (expected tiny, desk or extended)");
}

std::string to_string(Profile p) {
    switch (p) {
        case Profile::Tiny: return "tiny";
        case Profile::Desk: return "desk";
        case Profile::Extended: return "extended";
    }
    return "?";
}

Hooks default_hooks() {
    return {[](const Matrix& a) { return cut_norm_exact(a).value; }};
}

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    // Records the first failing condition only; later ones add noise.
    void require(bool ok, const std::string& what) {
        if (!ok && passed) {
            passed = false;
            detail << "FAILED: " << what << "; ";
        }
    }
};

int scaled(int desk, Profile p) {
    switch (p) {
        case Profile::Tiny: return std::max(1, desk / 5);
        case Profile::Desk: return desk;
        case Profile::Extended: return 2 * desk;
    }
    return desk;
}

std::int64_t trace_power(const Graph& g, int k) {
    const Matrix a = adjacency(g);
    Matrix p = Matrix::identity(g.order());
    for (int i = 0; i < k; ++i) p = p * a;
    double t = 0.0;
    for (int i = 0; i < g.order(); ++i) t += p(i, i);
    return std::llround(t);
}

// min over bijections of the maximum column sum of |A^pi - B|, by enumeration.
double operator_one_alignment(const Graph& g, const Graph& h) {
    const Matrix a = adjacency(g), b = adjacency(h);
    std::vector<int> p(g.order());
    std::iota(p.begin(), p.end(), 0);
    double best = INFINITY;
    do best = std::min(best, operator_norm(permute(a, p, p) - b, OperatorP::One));
    while (std::next_permutation(p.begin(), p.end()));
    return best;
}

// min over edit sets D with G xor D isomorphic to H of the largest number of
// edits at one vertex.
int min_edit_degree(const Graph& g, const Graph& h) {
    const int n = g.order();
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    int best = n;
    for (std::uint32_t d = 0; d < (1U << pairs.size()); ++d) {
        std::vector<Edge> e;
        std::vector<int> deg(n, 0);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const bool flip = d >> i & 1U;
            if (flip) {
                ++deg[pairs[i].first];
                ++deg[pairs[i].second];
            }
            if (g.adjacent(pairs[i].first, pairs[i].second) != flip) e.push_back(pairs[i]);
        }
        const int top = n > 0 ? *std::max_element(deg.begin(), deg.end()) : 0;
        if (top < best && isomorphic(Graph(n, e), h)) best = top;
    }
    return best;
}

std::vector<std::pair<Graph, Graph>> random_pairs(int count, int lo, int hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Graph, Graph>> out;
    for (int i = 0; i < count; ++i) {
        const int n = lo + i % (hi - lo + 1);
        out.emplace_back(erdos_renyi(n, 0.5, rng()), erdos_renyi(n, 0.5, rng()));
    }
    return out;
}

Graph cube() {
    std::vector<Edge> e;
    for (int v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b)
            if (v < (v ^ (1 << b))) e.emplace_back(v, v ^ (1 << b));
    return Graph(8, e);
}

Graph wheel(int rim) {
    std::vector<Edge> e = cycle(rim).edges();
    for (int v = 0; v < rim; ++v) e.emplace_back(v, rim);
    return Graph(rim + 1, e);
}

const Graph kC6 = cycle(6);
const Graph kTwoTriangles = disjoint_union(complete(3), complete(3));

// ---- the checks ----------------------------------------------------------------

void example_reproduction(Outcome& out, Profile, const Hooks&) {
    const Graph g(4, {{0, 1}, {0, 2}, {1, 2}}), h(4, {{0, 1}, {2, 3}});
    const double ed = edit_distance(g, h).value;
    const auto d1 = align_metric(g, h, AlignmentMetricKind::edit());
    AlignOptions ao;
    ao.max_order = 8;
    const auto blow = align_metric(blow_up(g, 2), blow_up(h, 2), AlignmentMetricKind::edit(), ao);
    out.require(ed == 3.0, "edit distance is 3");
    out.require(d1.value == 6.0, "entrywise-1 alignment is 6");
    out.require(d1.normalized_value == 6.0 / 16.0, "normalised value is 6/16");
    out.require(blow.value <= 20.0, "blow-up alignment is at most 20");
    out.require(blow.normalized_value <= 20.0 / 64.0 && blow.normalized_value < 6.0 / 16.0,
                "normalised blow-up value is at most 20/64 < 6/16");
    out.detail << "ed=" << ed << " d1=" << d1.value << " hat=" << d1.normalized_value << " blow-up d1=" << blow.value
               << " hat=" << blow.normalized_value;
}

void edit_and_frobenius(Outcome& out, Profile p, const Hooks&) {
    const auto pairs = random_pairs(scaled(50, p), 2, 7, 1002);
    for (const auto& [g, h] : pairs) {
        const auto d1 = align_metric(g, h, AlignmentMetricKind::edit());
        const double ed = edit_distance(g, h).value;
        const double fro = align_metric(g, h, AlignmentMetricKind::entrywise(2.0)).value;
        out.require(d1.value == 2.0 * ed, "entrywise-1 alignment equals twice the edit distance");
        out.require(std::abs(fro * fro - d1.value) <= 1e-9 && std::llround(fro * fro) == std::llround(d1.value),
                    "squared Frobenius alignment equals the entrywise-1 alignment");
        const double at_witness = alignment_cost(g, h, AlignmentMetricKind::entrywise(2.0), *d1.witness);
        out.require(std::llround(at_witness * at_witness) == std::llround(d1.value),
                    "the entrywise-1 witness is Frobenius-optimal");
    }
    out.detail << pairs.size() << " pairs, orders 2..7";
}

void local_edit(Outcome& out, Profile p, const Hooks&) {
    const auto pairs = random_pairs(scaled(50, p), 2, 7, 1002);
    int small = 0;
    for (const auto& [g, h] : pairs) {
        const double inf = local_edit_distance(g, h).value;
        const double one = operator_one_alignment(g, h);
        out.require(inf == one, "operator-1 and operator-infinity alignments agree");
        if (g.order() <= 4) {
            ++small;
            out.require(inf == min_edit_degree(g, h), "value equals the brute-force edit-set degree");
        }
    }
    out.detail << pairs.size() << " pairs; " << small << " checked against all edit sets";
}

void blowup_norms(Outcome& out, Profile p, const Hooks& hooks) {
    std::mt19937_64 rng(1004);
    std::uniform_int_distribution<int> side(1, 5), entry(-3, 3);
    const int count = scaled(20, p);
    for (int t = 0; t < count; ++t) {
        Matrix b(side(rng), side(rng));
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = entry(rng);
        for (int l : {2, 3}) {
            const Matrix bl = tensor_blow_up(b, l);
            out.require(entrywise_norm(bl, 1.0) == l * l * entrywise_norm(b, 1.0), "entrywise-1 scales by l^2");
            out.require(operator_norm(bl, OperatorP::One) == l * operator_norm(b, OperatorP::One),
                        "operator-1 scales by l");
            out.require(hooks.cut_norm(bl) == l * l * hooks.cut_norm(b), "cut norm scales by l^2");
        }
    }
    out.detail << count << " matrices, l in {2,3}";
}

void clique_vs_biclique(Outcome& out, Profile, const Hooks&) {
    double prev = -1.0;
    for (int n : {2, 3}) {
        const double ed = edit_distance(complete(2 * n), complete_bipartite(n, n)).value;
        const double hat = align_metric(complete(2 * n), complete_bipartite(n, n), AlignmentMetricKind::edit()).normalized_value;
        out.require(ed == n * (n - 1), "edit distance is n(n-1)");
        out.require(hat > prev && hat < 0.5, "normalised values increase towards 1/2");
        out.detail << "n=" << n << ": ed=" << ed << " hat=" << hat << "; ";
        prev = hat;
    }
}

void cycles_vs_triangles(Outcome& out, Profile, const Hooks&) {
    const auto frac = frac_metric(kC6, kTwoTriangles, FracNorm::Entrywise1);
    RationalMatrix flat(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) flat(i, j) = Rational(1, 36);
    const double dhat = align_metric(kC6, kTwoTriangles, AlignmentMetricKind::edit()).normalized_value;
    const double ot = ot_metric(kC6, kTwoTriangles, OtKind::L1).report.value;
    out.require(frac.report.value <= 1e-6, "relaxed distance vanishes");
    out.require(is_coupling(flat) && intertwines(kC6, kTwoTriangles, flat), "flat coupling intertwines exactly");
    out.require(dhat > 0.0, "alignment distance is positive");
    out.require(ot >= dhat / 3.0 - 1e-9, "transport upper bound is at least a third of the alignment distance");
    out.detail << "frac=" << frac.report.value << " hat=" << dhat << " ot<=" << ot;
}

void ot_sandwich(Outcome& out, Profile p, const Hooks&) {
    const auto pairs = random_pairs(scaled(20, p), 2, 5, 1007);
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [g, h] = pairs[i];
        const double dhat = align_metric(g, h, AlignmentMetricKind::edit()).normalized_value;
        OtOptions oo;
        oo.seed = i;
        const auto ot = ot_metric(g, h, OtKind::L1, oo);
        FracOptions fo;
        fo.warm_starts = {ot.coupling};
        const auto frac = frac_metric(g, h, FracNorm::Entrywise1, fo);
        const double upper = ot.report.value;
        out.require(frac.report.value - fo.tol <= upper, "relaxed value minus tol is below the transport bound");
        out.require(upper <= dhat + 1e-12, "transport bound is at most the alignment distance");
        out.require(upper >= dhat / 3.0 - 1e-9, "transport bound is at least a third of the alignment distance");
        worst = std::max(worst, upper - frac.report.value);
    }
    out.detail << pairs.size() << " pairs; largest ot - frac = " << worst;
}

void tinhofer(Outcome& out, Profile p, const Hooks&) {
    std::mt19937_64 rng(1008);
    const int count = scaled(50, p);
    int positives = 0;
    for (int i = 0; i < count; ++i) {
        const int n = 3 + i % 6;
        Graph g = erdos_renyi(n, 0.5, rng()), h;
        if (i % 3 == 0) {
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            h = g.relabeled(perm);
        } else if (i % 3 == 2 && n >= 6) {
            // regular pairs that refinement cannot separate
            const int a = 3 + static_cast<int>(rng() % (n - 5));
            g = cycle(n);
            h = disjoint_union(cycle(a), cycle(n - a));
        } else {
            h = erdos_renyi(n, 0.5, rng());
        }
        const auto fi = fractional_isomorphism(g, h);
        const bool same = !wl::distinguishes(g, h).has_value();
        out.require(fi.isomorphic == same, "fractional isomorphism matches refinement");
        if (fi.isomorphic) {
            ++positives;
            out.require(fi.witness && is_coupling(*fi.witness) && intertwines(g, h, *fi.witness),
                        "witness is an exact intertwining coupling");
        }
    }
    out.detail << count << " pairs, " << positives << " fractionally isomorphic";
}

void dvorak(Outcome& out, Profile, const Hooks&) {
    int trees = 0;
    for (int k = 1; k <= 5; ++k)
        for (const Graph& t : class_members(GraphClass::Trees, k)) {
            ++trees;
            out.require(hom(t, kC6) == hom(t, kTwoTriangles), "trees do not separate C6 from two triangles");
        }
    const auto c6 = hom(cycle(3), kC6), tt = hom(cycle(3), kTwoTriangles);
    out.require(c6 == 0 && tt == 12, "triangle counts are 0 and 12");
    out.require(c6 == trace_power(kC6, 3) && tt == trace_power(kTwoTriangles, 3), "triangle counts match trace(A^3)");
    out.detail << trees << " trees; hom(C3,.) = " << c6 << " vs " << tt;
}

void closed_walks(Outcome& out, Profile p, const Hooks&) {
    std::mt19937_64 rng(1010);
    const int count = scaled(20, p);
    for (int t = 0; t < count; ++t) {
        const Graph g = erdos_renyi(1 + t % 7, 0.5, rng());
        for (int k = 3; k <= 6; ++k) out.require(hom(cycle(k), g) == trace_power(g, k), "hom(C_k, G) = trace(A^k)");
    }
    out.detail << count << " graphs, k = 3..6";
}

void mobius(Outcome& out, Profile p, const Hooks&) {
    std::mt19937_64 rng(1011);
    std::vector<Graph> patterns;
    for (int k = 1; k <= 4; ++k)
        for (const Graph& f : class_members(GraphClass::AllGraphsLabeled, k)) patterns.push_back(f);
    const int count = scaled(10, p);
    for (int t = 0; t < count; ++t) {
        const Graph g = erdos_renyi(1 + t % 6, 0.5, rng());
        const CountOracle h_of = [&](const Graph& f) { return hom(f, g); };
        const CountOracle e_of = [&](const Graph& f) { return emb(f, g); };
        const CountOracle s_of = [&](const Graph& f) { return semb(f, g); };
        for (const Graph& f : patterns) {
            const auto h = hom(f, g), e = emb(f, g), s = semb(f, g);
            out.require(emb_from_semb(f, s_of) == e, "embeddings from strong embeddings");
            out.require(hom_from_emb(f, e_of) == h, "homomorphisms from embeddings");
            out.require(hom_from_semb(f, s_of) == h, "homomorphisms from strong embeddings");
            out.require(emb_from_hom(f, h_of) == e, "embeddings from homomorphisms");
            out.require(semb_from_emb(f, e_of) == s, "strong embeddings from embeddings");
        }
    }
    out.detail << patterns.size() << " labelled patterns, " << count << " targets";
}

void wl_kernel(Outcome& out, Profile p, const Hooks&) {
    std::mt19937_64 rng(1012);
    std::vector<Graph> graphs;
    for (int i = 0; i < scaled(10, p); ++i) graphs.push_back(erdos_renyi(1 + i % 8, 0.5, rng()));
    const auto k = wl::gram_matrix(graphs);
    const auto n = static_cast<Eigen::Index>(k.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = k[i][j];
    const double min_ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    out.require(min_ev >= -1e-8, "Gram matrix is positive semidefinite");

    std::vector<int> perm{4, 2, 0, 5, 1, 3};
    const Graph g6 = erdos_renyi(6, 0.5, 77);
    const std::pair<Graph, Graph> equivalent[] = {
        {kC6, kTwoTriangles}, {g6, g6.relabeled(perm)}, {cycle(8), disjoint_union(cycle(4), cycle(4))}};
    for (const auto& [g, h] : equivalent) {
        out.require(wl::metric(g, h) == 0.0, "geometric metric vanishes on equivalent pairs");
        out.require(wl::metric(g, h, {wl::KernelMode::Truncated, 5}) == 0.0, "truncated metric vanishes too");
    }
    for (const Graph& g : graphs) {
        const auto full = wl::refine(g);
        const int cap = std::max(g.order() - 1, 0);
        const auto capped = wl::refine(g, cap);
        out.require(full.stable_iteration <= cap, "stable within |G|-1 iterations");
        out.require(capped.class_count(capped.colors.size() - 1) == full.class_count(full.colors.size() - 1),
                    "partition after |G|-1 rounds is the stable one");
    }
    out.detail << "min eigenvalue " << min_ev;
}

void sampling(Outcome& out, Profile p, const Hooks&) {
    std::mt19937_64 rng(1013);
    for (int n : {1, 4, 7, 10})
        for (int k = 1; k <= 4; ++k) {
            Rational total = 0;
            for (const auto& [mask, x] : exact_distribution(erdos_renyi(n, 0.5, rng()), k).p) total += x;
            out.require(total == 1, "exact distribution sums to 1");
        }
    const int runs = scaled(100, p);
    int inside = 0;
    McOptions mc;
    for (int r = 0; r < runs; ++r) {
        const Graph g = erdos_renyi(3 + r % 6, 0.5, rng()), h = erdos_renyi(3 + (r / 6) % 6, 0.5, rng());
        mc.seed = static_cast<std::uint64_t>(r);
        const auto est = sampling_distance_mc(g, h, 4, mc);
        const double exact = sampling_distance_exact(g, h, 4).value;
        if (std::abs(est.value - exact) <= est.certificate->radius) ++inside;
    }
    out.require(inside * 100 >= 95 * runs, "estimates within the certified radius in at least 95% of runs");
    out.detail << inside << "/" << runs << " runs within radius";
}

void hamiltonicity(Outcome& out, Profile, const Hooks&) {
    const std::pair<Graph, bool> known[] = {
        {cycle(5), true},
        {complete(6), true},
        {complete_bipartite(3, 3), true},
        {cube(), true},
        {wheel(6), true},
        {complete_bipartite(2, 3), false},
        {complete_bipartite(3, 4), false},
        {star(4), false},
        {path(6), false},
        {Graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}), false},  // two triangles sharing a vertex
    };
    for (const auto& [g, ham] : known) {
        const double ed = edit_distance(g, cycle(g.order())).value;
        const bool predicted = ed <= static_cast<double>(g.edge_count()) - g.order();
        out.require(predicted == ham, "edit distance to the cycle predicts Hamiltonicity");
    }
    out.detail << std::size(known) << " graphs";
}

void random_cut(Outcome& out, Profile p, const Hooks& hooks) {
    std::mt19937_64 rng(1015);
    const int n = 10, pairs = scaled(20, p);
    const double bound = 4.0 * std::pow(n, 1.5);
    double worst = 0.0;
    for (int t = 0; t < pairs; ++t) {
        const Graph g = erdos_renyi(n, 0.5, rng()), h = erdos_renyi(n, 0.5, rng());
        worst = std::max(worst, hooks.cut_norm(adjacency(g) - adjacency(h)));
    }
    out.require(worst <= bound, "identity-alignment cut norm is at most 4 n^(3/2)");
    out.detail << "max " << worst << " (ratio " << worst / std::pow(n, 1.5) << ") over " << pairs << " pairs";
}

void blowup_invariance(Outcome& out, Profile p, const Hooks&) {
    std::mt19937_64 rng(1016);
    const int count = scaled(5, p);
    for (int t = 0; t < count; ++t) {
        const Graph g = erdos_renyi(1 + t % 4, 0.5, rng());
        out.require(delta_class(g, blow_up(g, 2), GraphClass::AllGraphsLabeled, 4).squared == 0,
                    "density distance to the blow-up is exactly 0");
    }
    out.detail << count << " graphs, labelled patterns up to 4 vertices";
}

struct Spec {
    const char* name;
    void (*body)(Outcome&, Profile, const Hooks&);
    double time_limit;
};

const Spec kChecks[] = {
    {"example-reproduction", example_reproduction, 5.0},
    {"edit-equals-frobenius", edit_and_frobenius, 60.0},
    {"local-edit-operator-norms", local_edit, 0.0},
    {"blow-up-norm-identities", blowup_norms, 0.0},
    {"clique-vs-biclique", clique_vs_biclique, 0.0},
    {"cycle-vs-triangles", cycles_vs_triangles, 0.0},
    {"ot-sandwich", ot_sandwich, 0.0},
    {"tinhofer-triad", tinhofer, 0.0},
    {"dvorak-trees", dvorak, 0.0},
    {"cycle-hom-trace", closed_walks, 0.0},
    {"mobius-round-trips", mobius, 0.0},
    {"wl-kernel", wl_kernel, 0.0},
    {"sampling", sampling, 120.0},
    {"hamiltonicity", hamiltonicity, 0.0},
    {"random-cut-concentration", random_cut, 600.0},
    {"class-distance-blow-up", blowup_invariance, 0.0},
};

}  // namespace

int count() { return static_cast<int>(std::size(kChecks)); }

CheckResult run(int id, Profile profile, const Hooks& hooks) {
    if (id < 1 || id > count()) throw std::out_of_range("no check with id " + std::to_string(id));
    const Spec& spec = kChecks[id - 1];
    CheckResult r;
    r.id = id;
    r.name = spec.name;
    r.time_limit = spec.time_limit;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        spec.body(out, profile, hooks);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.time_limit > 0.0) out.require(r.seconds <= r.time_limit, "time limit exceeded");
    r.passed = out.passed;
    r.detail = out.detail.str();
    return r;
}

std::vector<CheckResult> run_all(Profile profile, const Hooks& hooks) {
    std::vector<CheckResult> out;
    for (int id = 1; id <= count(); ++id) out.push_back(run(id, profile, hooks));
    return out;
}

}  // namespace graphdist::verify
