// graphdist: command-line front end. Every command prints one JSON report on
// stdout. Exit codes: 0 success, 1 a verification check failed, 2 usage or
// input error, 3 an exact solver exceeded its budget.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>

#include "graphdist/align.hpp"
#include "graphdist/error.hpp"
#include "graphdist/frac.hpp"
#include "graphdist/graph.hpp"
#include "graphdist/hom.hpp"
#include "graphdist/norms.hpp"
#include "graphdist/ot.hpp"
#include "graphdist/sampling.hpp"
#include "graphdist/verify.hpp"
#include "graphdist/wl.hpp"

using namespace graphdist;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// FNV-1a over the command line and the bytes of every input read.
class Digest {
public:
    void add(std::string_view s) {
        for (unsigned char c : s) {
            h_ ^= c;
            h_ *= 0x100000001b3ULL;
        }
        add_separator();
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
        return buf;
    }

private:
    void add_separator() {
        h_ ^= 0xff;
        h_ *= 0x100000001b3ULL;
    }
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct Context {
    std::vector<std::string> args;
    Digest digest;
    std::optional<std::uint64_t> seed;
    bool timings = false;
};

std::string read_input(Context& ctx, const std::string& path) {
    std::string text;
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    ctx.digest.add(text);
    return text;
}

Graph load_graph(Context& ctx, const std::string& path) {
    const std::string text = read_input(ctx, path);
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && text[first] == '{' ? from_json_text(text) : from_edge_list(text);
}

Matrix load_matrix(Context& ctx, const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_input(ctx, path));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    if (!doc.is_array() || doc.empty() || !doc[0].is_array()) throw ParseError("matrix must be an array of rows", 0);
    Matrix m(doc.size(), doc[0].size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_array() || doc[i].size() != m.cols()) throw ParseError("rows must have equal length", 0);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!doc[i][j].is_number()) throw ParseError("matrix entries must be numbers", 0);
            m(i, j) = doc[i][j].get<double>();
        }
    }
    return m;
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

json report_json(const MetricReport& r, bool witness) {
    json j;
    j["metric"] = r.metric;
    j["value"] = r.value;
    j["normalized_value"] = r.normalized_value;
    j["exact"] = r.exact;
    j["solver"] = r.solver;
    j["sentinel_used"] = r.sentinel_used;
    if (r.lower) j["lower"] = *r.lower;
    if (r.upper) j["upper"] = *r.upper;
    if (witness && r.witness) j["witness"] = *r.witness;
    if (witness && r.correspondence) {
        json c = json::array();
        for (auto [v, w] : *r.correspondence) c.push_back({v, w});
        j["correspondence"] = c;
    }
    return j;
}

void emit(const Context& ctx, const std::string& command, json result, double seconds) {
    json out;
    out["command"] = command;
    out["args"] = ctx.args;
    out["version"] = kVersion;
    out["inputs_digest"] = ctx.digest.hex();
    out["seed"] = ctx.seed ? json(*ctx.seed) : json(nullptr);
    out["result"] = std::move(result);
    if (ctx.timings) out["timings"] = {{"seconds", seconds}};
    std::cout << out.dump(2) << '\n';
}

AlignOptions align_budget(const std::string& profile, bool oracle) {
    AlignOptions o;
    if (profile == "tiny") {
        o.max_order = 7;
        o.node_budget = 1'000'000;
    } else if (profile == "extended") {
        o.max_order = 11;
        o.node_budget = 2'000'000'000;
    } else if (profile != "desk") {
        throw UsageError("unknown budget profile " + profile);
    }
    o.exhaustive = oracle;
    return o;
}

std::pair<double, double> parse_pad(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--pad expects alpha,beta");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("--pad expects two numbers");
    }
}

// ---- dist ----------------------------------------------------------------------

struct DistArgs {
    std::string metric = "ed";
    std::string normalize = "hat";
    std::string pad;
    double tol = 1e-6;
    bool witness = false;
    int lmax = 2;
    int restarts = 4;
    std::uint64_t seed = 0;
    bool oracle = false;
    std::optional<double> similarity;
    std::string cls = "all";
    int kmax = 4;
    std::string budget = "desk";
    std::vector<std::string> files;
};

std::optional<AlignmentMetricKind> alignment_kind(const std::string& m) {
    if (m == "ed" || m == "l1") return AlignmentMetricKind::edit();
    if (m == "local") return AlignmentMetricKind::local();
    if (m == "cut") return AlignmentMetricKind::cut();
    if (m == "dist") return AlignmentMetricKind::distortion();
    if (m == "iso") return AlignmentMetricKind::isomorphism();
    return std::nullopt;
}

std::optional<OtKind> ot_kind(const std::string& m) {
    if (m == "ot-l1") return OtKind::L1;
    if (m == "ot-cut") return OtKind::Cut;
    if (m == "gw") return OtKind::Gw;
    return std::nullopt;
}

json run_dist(Context& ctx, const DistArgs& a) {
    if (a.normalize != "raw" && a.normalize != "hat") throw UsageError("--normalize must be raw or hat");
    const Graph g = load_graph(ctx, a.files.at(0)), h = load_graph(ctx, a.files.at(1));
    const AlignOptions ao = align_budget(a.budget, a.oracle);
    json r;
    double distance = 0.0;

    if (auto kind = alignment_kind(a.metric)) {
        MetricReport rep;
        if (!a.pad.empty()) {
            const auto [alpha, beta] = parse_pad(a.pad);
            rep = padded_metric(g, h, *kind, alpha, beta, ao);
        } else if (a.metric == "ed") {
            rep = edit_distance(g, h, ao);
        } else {
            rep = align_metric(g, h, *kind, ao);
        }
        r = report_json(rep, a.witness);
        distance = a.normalize == "raw" ? rep.value : rep.normalized_value;
    } else if (a.metric == "gh") {
        GromovHausdorffOptions go;
        go.exhaustive = a.oracle;
        const auto rep = gromov_hausdorff(g, h, go);
        r = report_json(rep, a.witness);
        distance = rep.value;
    } else if (a.metric == "frac-l1" || a.metric == "frac-cut") {
        FracOptions fo;
        fo.tol = a.tol;
        fo.seed = a.seed;
        ctx.seed = a.seed;
        const auto fr = frac_metric(g, h, a.metric == "frac-l1" ? FracNorm::Entrywise1 : FracNorm::Cut, fo);
        r = report_json(fr.report, a.witness);
        r["iterations"] = fr.trace.iterations;
        if (a.witness) r["coupling"] = matrix_json(fr.coupling);
        distance = fr.report.value;
    } else if (auto kind = ot_kind(a.metric)) {
        OtOptions oo;
        oo.restarts = a.restarts;
        oo.seed = a.seed;
        ctx.seed = a.seed;
        const auto ot = ot_metric(g, h, *kind, oo);
        r = report_json(ot.report, a.witness);
        r["converged"] = ot.converged;
        if (a.witness) r["coupling"] = matrix_json(ot.coupling);
        distance = ot.report.value;
        if (*kind != OtKind::Gw) {
            BracketOptions bo;
            bo.ot = oo;
            bo.lmax = a.lmax;
            bo.align = ao;
            bo.frac.tol = a.tol;
            const auto b = ot_bracket(g, h, *kind, bo);
            r["bracket"] = {{"lower", b.lower},
                            {"upper", b.upper},
                            {"methods", {{"lower", b.lower_method}, {"upper", b.upper_method}}}};
            distance = b.upper;
        }
    } else if (a.metric.rfind("blowup-", 0) == 0) {
        const std::string rest = a.metric.substr(7);
        const BlowupKind kind = rest == "l1"      ? BlowupKind::L1
                                : rest == "local" ? BlowupKind::Local
                                : rest == "cut"   ? BlowupKind::Cut
                                                  : throw UsageError("unknown metric " + a.metric);
        const auto seq = blowup_metric(g, h, kind, a.lmax, ao);
        if (seq.values.empty()) throw BudgetExceeded("even the first blow-up exceeds the alignment budget");
        r["metric"] = to_string(kind);
        r["base"] = seq.base;
        r["sequence"] = seq.values;
        r["truncated"] = seq.truncated;
        r["exact"] = false;
        r["upper"] = *std::min_element(seq.values.begin(), seq.values.end());
        distance = *std::min_element(seq.values.begin(), seq.values.end());
    } else if (a.metric == "hom-class") {
        const auto d = delta_class(g, h, graph_class_from_string(a.cls), a.kmax);
        r["metric"] = "hom-class";
        r["class"] = a.cls;
        r["kmax"] = a.kmax;
        r["value"] = d.value;
        r["squared"] = to_string(d.squared);
        r["tail_bound"] = d.tail_bound;
        r["upper"] = d.upper;
        r["convention"] = d.convention;
        r["exact"] = true;
        distance = d.value;
    } else {
        throw UsageError("unknown metric " + a.metric);
    }
    r["normalization"] = a.normalize;
    r["distance"] = distance;
    if (a.similarity) r["similarity"] = {{"c", *a.similarity}, {"value", similarity(distance, *a.similarity)}};
    return r;
}

// ---- other commands ------------------------------------------------------------

json run_norm(Context& ctx, const std::string& file, const std::string& kind, double p) {
    const Matrix m = load_matrix(ctx, file);
    json r;
    r["kind"] = kind;
    if (kind == "entrywise") {
        r["p"] = p;
        r["value"] = entrywise_norm(m, p);
    } else if (kind == "operator") {
        if (p != 1.0 && !std::isinf(p) && p != 2.0) throw UsageError("operator norms take p = 1, 2 or inf");
        r["p"] = p;
        r["value"] = operator_norm(m, p == 1.0 ? OperatorP::One : p == 2.0 ? OperatorP::Two : OperatorP::Infinity);
    } else if (kind == "cut") {
        const auto c = cut_norm_exact(m);
        r["value"] = c.value;
        r["rows"] = c.rows;
        r["cols"] = c.cols;
        r["sign"] = c.sign;
    } else if (kind == "spectral") {
        r["value"] = spectral_norm(m);
    } else {
        throw UsageError("unknown norm kind " + kind);
    }
    return r;
}

json run_gen(Context& ctx, const std::string& family, int n, int m, double p, std::uint64_t seed) {
    Graph g;
    if (family == "complete") g = complete(n);
    else if (family == "cycle") g = cycle(n);
    else if (family == "path") g = path(n);
    else if (family == "star") g = star(n);
    else if (family == "edgeless") g = edgeless(n);
    else if (family == "bipartite") g = complete_bipartite(n, m);
    else if (family == "er") {
        g = erdos_renyi(n, p, seed);
        ctx.seed = seed;
    } else {
        throw UsageError("unknown family " + family);
    }
    return json::parse(to_json_text(g));
}

json run_features(Context& ctx, const std::string& file) {
    const Graph g = load_graph(ctx, file);
    const double n = g.order();
    const std::int64_t edges = static_cast<std::int64_t>(g.edge_count());
    const std::int64_t triangles = hom(complete(3), g) / 6;
    const std::int64_t squares = emb(cycle(4), g) / 8;
    json r;
    r["names"] = {"order", "edges", "triangles", "4-cycles"};
    r["raw"] = {g.order(), edges, triangles, squares};
    r["normalized"] = n > 0 ? json{edges / (n * n), triangles / std::pow(n, 3), squares / std::pow(n, 4)}
                            : json{0.0, 0.0, 0.0};
    return r;
}

json run_kernel(Context& ctx, const std::vector<std::string>& files, const std::string& mode, int iters) {
    const Graph g = load_graph(ctx, files.at(0)), h = load_graph(ctx, files.at(1));
    wl::KernelOptions o;
    if (mode == "geom") o.mode = wl::KernelMode::Geometric;
    else if (mode == "trunc") o.mode = wl::KernelMode::Truncated;
    else throw UsageError("--mode must be geom or trunc");
    o.iterations = iters;
    json r;
    r["mode"] = mode;
    if (o.mode == wl::KernelMode::Truncated) r["iterations"] = iters;
    r["kernel"] = wl::kernel(g, h, o);
    r["metric"] = wl::metric(g, h, o);
    r["depth_metric"] = wl::depth_metric(g, h);
    const auto d = wl::distinguishes(g, h);
    r["distinguished_at"] = d ? json(*d) : json(nullptr);
    return r;
}

json run_wl(Context& ctx, const std::string& file) {
    const Graph g = load_graph(ctx, file);
    const auto ref = wl::refine(g);
    json its = json::array();
    for (std::size_t i = 0; i < ref.colors.size(); ++i) {
        std::map<int, int> hist;
        for (int c : ref.colors[i]) ++hist[c];
        json h = json::array();
        for (auto [c, k] : hist) h.push_back({c, k});
        its.push_back({{"iteration", i}, {"colors", ref.colors[i]}, {"histogram", h}});
    }
    return {{"stable_iteration", ref.stable_iteration}, {"iterations", its}};
}

json run_hom(Context& ctx, const std::string& pattern, const std::string& target, const std::string& count, bool density) {
    const Graph f = load_graph(ctx, pattern), g = load_graph(ctx, target);
    json r;
    r["count_kind"] = count;
    if (count == "hom") r["count"] = hom(f, g);
    else if (count == "emb") r["count"] = emb(f, g);
    else if (count == "semb") r["count"] = semb(f, g);
    else throw UsageError("--count must be hom, emb or semb");
    if (density) {
        const Rational d = count == "hom" ? hom_density(f, g) : count == "emb" ? emb_density(f, g) : semb_density(f, g);
        r["density"] = to_string(d);
        r["density_value"] = to_double(d);
    }
    return r;
}

json run_sample(Context& ctx, const std::vector<std::string>& files, int kmax, const std::string& mode, double eps,
                double delta, std::uint64_t seed) {
    const Graph g = load_graph(ctx, files.at(0)), h = load_graph(ctx, files.at(1));
    SamplingResult s;
    if (mode == "exact") {
        s = sampling_distance_exact(g, h, kmax);
    } else if (mode == "mc") {
        ctx.seed = seed;
        s = sampling_distance_mc(g, h, kmax, {eps, delta, seed});
    } else {
        throw UsageError("--mode must be exact or mc");
    }
    json r;
    r["mode"] = mode;
    r["kmax"] = kmax;
    r["value"] = s.value;
    if (s.exact) r["exact_value"] = to_string(*s.exact);
    r["tv"] = s.tv;
    r["tail_bound"] = s.tail_bound;
    if (s.certificate) {
        const auto& c = *s.certificate;
        r["certificate"] = {{"samples", c.samples}, {"eps", c.eps}, {"confidence", c.confidence},
                            {"radius", c.radius}, {"seed", c.seed}};
    }
    return r;
}

json run_bench(Context& ctx, int n, int pairs, std::uint64_t seed) {
    if (n < 1 || n > 12) throw UsageError("the random-cut experiment needs 1 <= n <= 12");
    ctx.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<double> values;
    for (int t = 0; t < pairs; ++t) {
        const Graph g = erdos_renyi(n, 0.5, rng()), h = erdos_renyi(n, 0.5, rng());
        values.push_back(cut_norm_exact(adjacency(g) - adjacency(h)).value);
    }
    const double scale = std::pow(n, 1.5);
    const double mx = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) mean += v / std::max<std::size_t>(values.size(), 1);
    return {{"experiment", "random-cut"}, {"n", n},          {"pairs", pairs},           {"values", values},
            {"max", mx},                  {"mean", mean},    {"max_ratio", mx / scale}, {"mean_ratio", mean / scale}};
}

json run_verify(const std::string& profile, const std::vector<int>& ids, bool& all_passed) {
    const auto p = verify::profile_from_string(profile);
    json checks = json::array();
    all_passed = true;
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int id = 1; id <= verify::count(); ++id) todo.push_back(id);
    for (int id : todo) {
        if (id < 1 || id > verify::count()) throw UsageError("no check with id " + std::to_string(id));
        const auto c = verify::run(id, p);
        all_passed &= c.passed;
        checks.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return {{"profile", profile}, {"passed", all_passed}, {"checks", checks}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distances and similarity measures between graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Context ctx;
    for (int i = 1; i < argc; ++i) ctx.args.emplace_back(argv[i]);
    app.add_flag("--timings", ctx.timings, "Add wall-clock timings to the report");

    DistArgs da;
    auto* dist = app.add_subcommand("dist", "Distance between two graphs");
    dist->add_option("--metric", da.metric,
                     "ed, l1, local, cut, dist, iso, gh, frac-l1, frac-cut, ot-l1, ot-cut, gw, blowup-l1, "
                     "blowup-local, blowup-cut, hom-class");
    dist->add_option("--normalize", da.normalize, "raw or hat");
    dist->add_option("--pad", da.pad, "alpha,beta: pad the smaller graph with isolated vertices");
    dist->add_option("--tol", da.tol, "Tolerance of iterative solvers");
    dist->add_flag("--witness", da.witness, "Include witnesses and couplings");
    dist->add_option("--lmax", da.lmax, "Largest blow-up multiple");
    dist->add_option("--restarts", da.restarts, "Transport solver restarts");
    dist->add_option("--seed", da.seed, "Random seed");
    dist->add_flag("--oracle", da.oracle, "Use exhaustive search instead of branch and bound");
    dist->add_option("--similarity", da.similarity, "Also report exp(-c * distance)");
    dist->add_option("--class", da.cls, "all, trees, cycles or paths (hom-class)");
    dist->add_option("--kmax", da.kmax, "Largest pattern size (hom-class)");
    dist->add_option("--budget", da.budget, "tiny, desk or extended");
    dist->add_option("graphs", da.files, "Two graph files (JSON or edge list)")->expected(2)->required();

    std::string norm_file, norm_kind = "cut";
    double norm_p = 1.0;
    auto* norm = app.add_subcommand("norm", "Norm of a matrix given as a JSON array of rows");
    norm->add_option("--kind", norm_kind, "entrywise, operator, cut or spectral");
    norm->add_option("--p", norm_p, "Exponent (entrywise, operator)");
    norm->add_option("matrix", norm_file, "Matrix file or - for stdin")->required();

    std::string family = "er";
    int gen_n = 5, gen_m = 0;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "Generate a graph");
    gen->add_option("--family", family, "complete, cycle, path, star, edgeless, bipartite or er");
    gen->add_option("--n", gen_n, "Order (leaves for star, first side for bipartite)");
    gen->add_option("--m", gen_m, "Second side for bipartite");
    gen->add_option("--p", gen_p, "Edge probability for er");
    gen->add_option("--seed", gen_seed, "Random seed for er");

    std::vector<std::string> pair_files;
    std::string kernel_mode = "geom";
    int kernel_iters = 5;
    auto* kernel = app.add_subcommand("kernel", "Weisfeiler-Leman kernel of two graphs");
    kernel->add_option("--mode", kernel_mode, "geom or trunc");
    kernel->add_option("--iters", kernel_iters, "Iterations for trunc");
    kernel->add_option("graphs", pair_files, "Two graph files")->expected(2)->required();

    std::string single;
    auto* wlc = app.add_subcommand("wl", "Colour refinement of one graph");
    wlc->add_flag("--colors", "Dump per-iteration colours (default)");
    wlc->add_option("graph", single, "Graph file")->required();

    std::string pattern, target, count_kind = "hom";
    bool density = false;
    auto* homc = app.add_subcommand("hom", "Homomorphism and embedding counts");
    homc->add_option("--pattern", pattern, "Pattern graph F")->required();
    homc->add_option("--target", target, "Target graph G")->required();
    homc->add_option("--count", count_kind, "hom, emb or semb");
    homc->add_flag("--density", density, "Also report the density");

    int sample_kmax = 4;
    std::string sample_mode = "exact";
    double eps = 0.05, delta = 0.05;
    std::uint64_t sample_seed = 0;
    auto* sample = app.add_subcommand("sample", "Sampling distance");
    sample->add_option("--kmax", sample_kmax, "Largest sample size");
    sample->add_option("--mode", sample_mode, "exact or mc");
    sample->add_option("--eps", eps, "Accuracy per distribution (mc)");
    sample->add_option("--delta", delta, "Failure probability (mc)");
    sample->add_option("--seed", sample_seed, "Random seed (mc)");
    sample->add_option("graphs", pair_files, "Two graph files")->expected(2)->required();

    auto* features = app.add_subcommand("features", "Order, edges, triangles and 4-cycles");
    features->add_option("graph", single, "Graph file")->required();

    std::string profile = "desk";
    std::vector<int> check_ids;
    auto* ver = app.add_subcommand("verify", "Run the identity checks");
    ver->add_option("--profile", profile, "tiny, desk or extended");
    ver->add_option("--check", check_ids, "Run only these check ids");

    int bench_n = 10, bench_pairs = 20;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "Random-graph cut norm experiment");
    bench->add_option("--n", bench_n, "Order of the random graphs");
    bench->add_option("--pairs", bench_pairs, "Number of pairs");
    bench->add_option("--seed", bench_seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    for (const auto& a : ctx.args) ctx.digest.add(a);
    try {
        if (*dist) {
            json r = run_dist(ctx, da);
            emit(ctx, "dist", std::move(r), elapsed());
        } else if (*norm) {
            emit(ctx, "norm", run_norm(ctx, norm_file, norm_kind, norm_p), elapsed());
        } else if (*gen) {
            // The graph itself, so the output can be fed back in.
            std::cout << run_gen(ctx, family, gen_n, gen_m, gen_p, gen_seed).dump() << '\n';
        } else if (*kernel) {
            emit(ctx, "kernel", run_kernel(ctx, pair_files, kernel_mode, kernel_iters), elapsed());
        } else if (*wlc) {
            emit(ctx, "wl", run_wl(ctx, single), elapsed());
        } else if (*homc) {
            emit(ctx, "hom", run_hom(ctx, pattern, target, count_kind, density), elapsed());
        } else if (*sample) {
            emit(ctx, "sample", run_sample(ctx, pair_files, sample_kmax, sample_mode, eps, delta, sample_seed), elapsed());
        } else if (*features) {
            emit(ctx, "features", run_features(ctx, single), elapsed());
        } else if (*ver) {
            bool ok = true;
            json r = run_verify(profile, check_ids, ok);
            emit(ctx, "verify", std::move(r), elapsed());
            return ok ? kOk : kCheckFailed;
        } else if (*bench) {
            emit(ctx, "bench", run_bench(ctx, bench_n, bench_pairs, bench_seed), elapsed());
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kOk;
}
