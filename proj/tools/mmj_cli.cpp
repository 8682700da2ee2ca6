// mmj: command-line front end for the MMJ library.

#include "mmj/classifier.hpp"
#include "mmj/engine.hpp"
#include "mmj/evaluation.hpp"
#include "mmj/io.hpp"
#include "mmj/mmj_mst.hpp"
#include "mmj/parallel.hpp"
#include "mmj/widest_path.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace mmj;

namespace {

struct Options {
    std::string points;
    std::string matrix;
    std::string metric = "euclidean";
    bool directed = false;
    std::string engine;
    std::string out;
    std::string mst_out;
    std::optional<std::uint64_t> seed;
    Index paths = 10;
    Index k_neighbors = 3;
    bool no_copy = false;

    Index k = 2;
    std::string k_range = "2..10";
    int n_init = 10;
    int max_iter = 100;
    std::string update = "one_scom";
    std::string model_out;
    std::string mode = "per_cluster";
    std::string report;

    std::string index = "mmj_sc";
    std::string labels;

    std::string model;
    std::string grid;
    std::vector<double> box;
    double tie_epsilon = 0.0;

    std::string graph;
    std::vector<Index> pair;

    Index sample_limit = 300;
    Index sample_pairs = 2000;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool ci_mode() {
    const char* v = std::getenv("CI");
    return v && std::string(v) == "1";
}

std::uint64_t require_seed(const Options& o, const char* what) {
    if (!o.seed && ci_mode()) throw std::invalid_argument(std::string(what) + " is randomized; CI=1 requires --seed");
    return o.seed.value_or(0);
}

struct Input {
    std::optional<PointSet> points;
    BaseDistanceMatrix base;
    std::string metric;
};

Input load_input(const Options& o) {
    const bool precomputed = !o.matrix.empty() || o.metric == "precomputed";
    if (o.matrix.empty() && o.points.empty()) throw std::invalid_argument("one of --points or --matrix is required");
    if (precomputed) {
        const auto& path = o.matrix.empty() ? o.points : o.matrix;
        return {std::nullopt, BaseDistanceMatrix(io::read_matrix_csv(path), o.directed), "precomputed"};
    }
    if (o.directed) throw std::invalid_argument("--directed needs a precomputed --matrix");
    const auto metric = MetricKind::parse(o.metric);
    PointSet pts = io::read_points_csv(o.points);
    auto base = pairwise_base_matrix(pts, metric);
    return {std::move(pts), std::move(base), metric.name()};
}

Engine choose_engine(const Options& o, const BaseDistanceMatrix& base) {
    if (o.engine.empty()) return base.directed() ? Engine::recursion : Engine::mst;
    return parse_engine(o.engine);
}

SamplerConfig sampler_of(const Options& o) {
    SamplerConfig cfg{o.k_neighbors, o.paths, o.seed.value_or(0), !o.no_copy};
    cfg.validate();
    return cfg;
}

KmeansConfig kmeans_of(const Options& o, Index k) {
    KmeansConfig cfg;
    cfg.k = k;
    cfg.n_init = o.n_init;
    cfg.max_iter = o.max_iter;
    cfg.seed = o.seed.value_or(0);
    if (o.update == "one_scom") cfg.update = CenterUpdate::one_scom;
    else if (o.update == "pam_swap") cfg.update = CenterUpdate::pam_swap;
    else throw std::invalid_argument("unknown --update '" + o.update + "'");
    return cfg;
}

std::vector<Index> parse_k_range(const std::string& text) {
    std::vector<Index> ks;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            ks.push_back(std::stoul(text));
        } else {
            const Index lo = std::stoul(text.substr(0, dots));
            const Index hi = std::stoul(text.substr(dots + 2));
            if (lo > hi) throw std::invalid_argument("empty");
            for (Index k = lo; k <= hi; ++k) ks.push_back(k);
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("--k expects N or LO..HI, got '" + text + "'");
    }
    return ks;
}

void require_out(const Options& o) {
    if (o.out.empty()) throw std::invalid_argument("--out is required");
}

fs::path sidecar(const std::string& out) {
    fs::path p(out);
    return p.replace_extension(".meta.json");
}

MmjMatrix compute(const Options& o, const BaseDistanceMatrix& base, Engine engine) {
    if (engine == Engine::sample) require_seed(o, "the sample engine");
    return compute_mmj(base, engine, sampler_of(o));
}

json run_matrix(const Options& o) {
    require_out(o);
    const Stopwatch load_clock;
    const auto in = load_input(o);
    const double load_s = load_clock.seconds();
    const auto engine = choose_engine(o, in.base);
    const Stopwatch clock;
    const auto m = compute(o, in.base, engine);
    const double compute_s = clock.seconds();
    io::write_matrix_csv(o.out, m.values());
    io::MatrixMetadata meta{m.size(), m.directed(), std::string(to_string(engine)), in.metric, std::nullopt};
    if (engine == Engine::sample) meta.seed = o.seed.value_or(0);
    io::write_matrix_metadata(sidecar(o.out), meta);
    if (!o.mst_out.empty()) io::write_edge_list_csv(o.mst_out, build_mst(in.base).edges());
    return {{"command", "matrix"}, {"engine", to_string(engine)}, {"n", m.size()}, {"directed", m.directed()},
            {"load_seconds", load_s}, {"compute_seconds", compute_s}, {"out", o.out}};
}

json run_cluster(const Options& o) {
    require_out(o);
    const std::uint64_t seed = require_seed(o, "cluster");
    const auto in = load_input(o);
    const auto engine = choose_engine(o, in.base);
    const Stopwatch clock;
    const auto m = compute(o, in.base, engine);
    const auto result = mmj_kmeans(m, kmeans_of(o, o.k));
    const double seconds = clock.seconds();
    io::write_labels_csv(o.out, result.labels, result.border_status);

    json centers = json::array();
    for (const auto& set : result.centers) centers.push_back(set);
    json summary = {{"command", "cluster"},
                    {"engine", to_string(engine)},
                    {"n", m.size()},
                    {"k", o.k},
                    {"seed", seed},
                    {"objective", result.objective},
                    {"iterations", result.iterations},
                    {"best_restart", result.best_restart},
                    {"centers", centers},
                    {"border_points", std::count_if(result.border_status.begin(), result.border_status.end(),
                                                    [](BorderStatus s) { return s != BorderStatus::none; })},
                    {"seconds", seconds},
                    {"out", o.out}};
    if (!o.report.empty()) io::write_file_atomic(o.report, summary.dump(2) + "\n");
    if (!o.model_out.empty()) {
        if (!in.points) throw std::invalid_argument("--model-out needs coordinates (--points)");
        const auto model =
            train_classifier(*in.points, MetricKind::parse(in.metric), result.labels, parse_context_mode(o.mode));
        save_model(model, o.model_out);
        summary["model"] = o.model_out;
    }
    return summary;
}

json run_score(const Options& o) {
    if (o.labels.empty()) throw std::invalid_argument("--labels is required");
    const auto in = load_input(o);
    const auto labels = io::read_labels_csv(o.labels);
    const auto kind = parse_index(o.index);
    const auto engine = choose_engine(o, in.base);
    const auto m = compute(o, in.base, engine);
    const auto score = score_index(kind, m, in.base, in.points ? &*in.points : nullptr, labels);
    json summary = {{"command", "score"},   {"index", to_string(kind)},           {"value", score.value},
                    {"saturated", score.saturated}, {"higher_is_better", score.higher_better},
                    {"engine", to_string(engine)}, {"n", m.size()}};
    if (!score.diagnostic.empty()) summary["diagnostic"] = score.diagnostic;
    return summary;
}

json run_sweep(const Options& o) {
    const std::uint64_t seed = require_seed(o, "sweep");
    const auto in = load_input(o);
    const auto ks = parse_k_range(o.k_range);
    const auto kind = parse_index(o.index);
    const auto engine = choose_engine(o, in.base);
    const auto m = compute(o, in.base, engine);
    const auto result = sweep_k(m, in.base, in.points ? &*in.points : nullptr, ks, kind, kmeans_of(o, 2));
    json table = json::array();
    std::ostringstream csv;
    csv << "k,value\n";
    for (const auto& e : result.table) {
        csv << e.k << ',' << io::format_real(e.score.value) << '\n';
        table.push_back({{"k", e.k}, {"value", e.score.value}, {"saturated", e.score.saturated}});
    }
    if (!o.out.empty()) io::write_file_atomic(o.out, csv.str());
    return {{"command", "sweep"}, {"index", to_string(kind)}, {"engine", to_string(engine)},
            {"seed", seed},      {"best_k", result.best_k},  {"table", table}};
}

json run_predict(const Options& o) {
    if (o.model.empty()) throw std::invalid_argument("--model is required");
    require_out(o);
    const auto model = load_model(o.model);
    const auto one = [&](std::span<const double> p) {
        return model.mode == ContextMode::global ? predict_global(model, p, o.tie_epsilon)
                                                 : predict(model, p, o.tie_epsilon);
    };
    std::ostringstream csv;
    Index border = 0;
    Index count = 0;
    if (!o.grid.empty()) {
        const auto x = o.grid.find('x');
        if (x == std::string::npos) throw std::invalid_argument("--grid expects NXxNY");
        const Index nx = std::stoul(o.grid.substr(0, x));
        const Index ny = std::stoul(o.grid.substr(x + 1));
        GridBox box;
        if (o.box.size() == 4) {
            box = {o.box[0], o.box[1], o.box[2], o.box[3]};
        } else {
            if (!o.box.empty()) throw std::invalid_argument("--box expects xmin,xmax,ymin,ymax");
            // Bounding box of the training set, padded by 10%.
            const auto& c = model.points.coords();
            box = {c(0, 0), c(0, 0), c(0, 1), c(0, 1)};
            for (Index i = 0; i < c.rows(); ++i) {
                box.xmin = std::min(box.xmin, c(i, 0));
                box.xmax = std::max(box.xmax, c(i, 0));
                box.ymin = std::min(box.ymin, c(i, 1));
                box.ymax = std::max(box.ymax, c(i, 1));
            }
            const double px = 0.1 * (box.xmax - box.xmin), py = 0.1 * (box.ymax - box.ymin);
            box = {box.xmin - px, box.xmax + px, box.ymin - py, box.ymax + py};
        }
        csv << "x,y,label\n";
        for (const auto& cell : decision_grid(model, box, nx, ny)) {
            csv << io::format_real(cell.x) << ',' << io::format_real(cell.y) << ',' << cell.prediction.label << '\n';
            border += cell.prediction.label == kBorderLabel;
            ++count;
        }
    } else {
        if (o.points.empty()) throw std::invalid_argument("--points or --grid is required");
        const auto queries = io::read_points_csv(o.points);
        csv << "index,label\n";
        for (Index i = 0; i < queries.size(); ++i) {
            const auto out = one(queries.point(i));
            csv << i << ',' << out.label << '\n';
            border += out.label == kBorderLabel;
            ++count;
        }
    }
    io::write_file_atomic(o.out, csv.str());
    return {{"command", "predict"}, {"mode", to_string(model.mode)}, {"queries", count},
            {"border", border},     {"out", o.out}};
}

json run_widest(const Options& o) {
    if (o.graph.empty()) throw std::invalid_argument("--graph is required");
    const auto g = io::read_capacity_graph(o.graph, o.directed);
    const Stopwatch clock;
    const auto w = o.engine == "mst" ? widest_path_by_max_spanning_tree(g) : widest_path_matrix(g);
    json summary = {{"command", "widest"}, {"n", g.size()}, {"directed", g.directed()}, {"seconds", clock.seconds()}};
    if (!o.pair.empty()) {
        if (o.pair.size() != 2 || o.pair[0] >= g.size() || o.pair[1] >= g.size())
            throw std::invalid_argument("--pair expects two node indices below " + std::to_string(g.size()));
        summary["pair"] = o.pair;
        summary["capacity"] = io::format_real(w.values(o.pair[0], o.pair[1]));
    }
    if (!o.out.empty()) {
        io::write_matrix_csv(o.out, w.values);
        summary["out"] = o.out;
    }
    return summary;
}

json run_compare(const Options& o) {
    const std::uint64_t seed = require_seed(o, "compare-engines");
    const auto in = load_input(o);
    if (in.base.directed()) throw std::invalid_argument("compare-engines needs an undirected base");
    const Index n = in.base.size();
    const Stopwatch t_mst;
    const auto mst = mmj_by_mst(in.base);
    const double mst_s = t_mst.seconds();
    const Stopwatch t_rec;
    const auto rec = mmj_by_recursion(in.base);
    const double rec_s = t_rec.seconds();

    const auto cfg = sampler_of(o);
    double max_over = 0.0, sum_over = 0.0;
    Index exact = 0, pairs = 0;
    const auto tally = [&](double est, double truth) {
        max_over = std::max(max_over, est - truth);
        sum_over += est - truth;
        exact += est == truth;
        ++pairs;
    };
    const Stopwatch t_sample;
    std::string sample_mode;
    if (n <= o.sample_limit) {
        sample_mode = "full";
        const auto approx = mmj_by_estimation_and_copy(in.base, cfg);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) tally(approx(i, j), mst(i, j));
    } else {
        // Full sampling is too slow here; estimate a seeded subset of pairs without copying.
        sample_mode = "pairs";
        std::mt19937_64 rng(derive_seed(seed, 0xc0ffee));
        std::uniform_int_distribution<Index> pick(0, n - 1);
        const PathSampler sampler(in.base, cfg.k_neighbors);
        for (Index s = 0; s < o.sample_pairs; ++s) {
            const Index i = pick(rng), j = pick(rng);
            if (i == j) continue;
            tally(estimate_mmj_pair(sampler, i, j, cfg), mst(i, j));
        }
    }
    return {{"command", "compare-engines"},
            {"n", n},
            {"recursion_equals_mst", rec == mst},
            {"mst_seconds", mst_s},
            {"recursion_seconds", rec_s},
            {"sample",
             {{"mode", sample_mode},
              {"seconds", t_sample.seconds()},
              {"pairs", pairs},
              {"exact_fraction", pairs ? static_cast<double>(exact) / static_cast<double>(pairs) : 1.0},
              {"max_overestimate", max_over},
              {"mean_overestimate", pairs ? sum_over / static_cast<double>(pairs) : 0.0}}}};
}

void add_input(CLI::App* cmd, Options& o) {
    cmd->add_option("--points", o.points, "coordinates CSV (or a matrix with --metric precomputed)");
    cmd->add_option("--matrix", o.matrix, "precomputed base distance matrix CSV");
    cmd->add_option("--metric", o.metric, "euclidean | manhattan | chebyshev | minkowski:<p> | precomputed");
    cmd->add_flag("--directed", o.directed, "treat the precomputed matrix as directed");
}

void add_engine(CLI::App* cmd, Options& o) {
    cmd->add_option("--engine", o.engine, "brute | recursion | mst | sample (default: mst, recursion if directed)");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--paths", o.paths, "sampled paths per pair");
    cmd->add_option("--k-neighbors", o.k_neighbors, "candidate neighbours per step");
    cmd->add_flag("--no-copy", o.no_copy, "skip the copy phase of the sample engine");
}

void add_kmeans(CLI::App* cmd, Options& o) {
    cmd->add_option("--n-init", o.n_init, "random restarts");
    cmd->add_option("--max-iter", o.max_iter, "iterations per restart");
    cmd->add_option("--update", o.update, "one_scom | pam_swap");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Min-Max-Jump distance tools"};
    app.require_subcommand(1);
    Options o;

    auto* matrix = app.add_subcommand("matrix", "compute the MMJ distance matrix");
    add_input(matrix, o);
    add_engine(matrix, o);
    matrix->add_option("--out", o.out, "output matrix CSV");
    matrix->add_option("--mst-out", o.mst_out, "also write the minimum spanning tree edges");

    auto* cluster = app.add_subcommand("cluster", "MMJ-K-means");
    add_input(cluster, o);
    add_engine(cluster, o);
    add_kmeans(cluster, o);
    cluster->add_option("--k", o.k, "number of clusters");
    cluster->add_option("--out", o.out, "labels CSV");
    cluster->add_option("--report", o.report, "JSON run report");
    cluster->add_option("--model-out", o.model_out, "train and save a classifier");
    cluster->add_option("--mode", o.mode, "classifier context: per_cluster | global");

    auto* score = app.add_subcommand("score", "evaluate a labelling");
    add_input(score, o);
    add_engine(score, o);
    score->add_option("--index", o.index, "sc | ch | db | mmj_sc | mmj_ch | mmj_db");
    score->add_option("--labels", o.labels, "labels CSV");

    auto* sweep = app.add_subcommand("sweep", "choose k by an internal index");
    add_input(sweep, o);
    add_engine(sweep, o);
    add_kmeans(sweep, o);
    sweep->add_option("--index", o.index, "sc | ch | db | mmj_sc | mmj_ch | mmj_db");
    sweep->add_option("--k", o.k_range, "k or LO..HI");
    sweep->add_option("--out", o.out, "k,value CSV");

    auto* predict_cmd = app.add_subcommand("predict", "label new points with a saved model");
    predict_cmd->add_option("--model", o.model, "model JSON");
    predict_cmd->add_option("--points", o.points, "query points CSV");
    predict_cmd->add_option("--grid", o.grid, "decision grid NXxNY instead of query points");
    predict_cmd->add_option("--box", o.box, "grid box xmin,xmax,ymin,ymax")->delimiter(',');
    predict_cmd->add_option("--tie-epsilon", o.tie_epsilon, "scores within this distance tie");
    predict_cmd->add_option("--out", o.out, "output CSV");

    auto* widest = app.add_subcommand("widest", "widest-path capacities");
    widest->add_option("--graph", o.graph, "edge list with a #n=<N> line");
    widest->add_flag("--directed", o.directed, "directed edges");
    widest->add_option("--engine", o.engine, "recursion | mst");
    widest->add_option("--pair", o.pair, "report one pair u,v")->delimiter(',');
    widest->add_option("--out", o.out, "capacity matrix CSV");

    auto* compare = app.add_subcommand("compare-engines", "cross-check recursion, mst and sample");
    add_input(compare, o);
    add_engine(compare, o);
    compare->add_option("--sample-limit", o.sample_limit, "largest N for the full sample engine");
    compare->add_option("--sample-pairs", o.sample_pairs, "pairs estimated above the limit");

    CLI11_PARSE(app, argc, argv);

    try {
        json summary;
        if (*matrix) summary = run_matrix(o);
        else if (*cluster) summary = run_cluster(o);
        else if (*score) summary = run_score(o);
        else if (*sweep) summary = run_sweep(o);
        else if (*predict_cmd) summary = run_predict(o);
        else if (*widest) summary = run_widest(o);
        else summary = run_compare(o);
        summary["threads"] = worker_count();
        std::cout << summary.dump() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "mmj: error: " << e.what() << '\n';
        return 1;
    }
}
