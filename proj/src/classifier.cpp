#include "mmj/classifier.hpp"
#include "mmj/io.hpp"
#include "mmj/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Index count_clusters(std::span<const int> labels, Index n) {
    if (labels.size() != n)
        throw std::invalid_argument("train_classifier: expected " + std::to_string(n) + " labels, got " +
                                    std::to_string(labels.size()));
    int max_label = -1;
    for (const int l : labels) {
        if (l < 0) throw std::invalid_argument("train_classifier: labels must be non-negative");
        max_label = std::max(max_label, l);
    }
    return static_cast<Index>(max_label + 1);
}

Index local_position(const std::vector<Index>& members, Index global_index) {
    const auto it = std::lower_bound(members.begin(), members.end(), global_index);
    if (it == members.end() || *it != global_index)
        throw std::logic_error("classifier: One-SCOM is not a member of its cluster");
    return static_cast<Index>(it - members.begin());
}

PredictedLabel resolve(std::vector<double> scores, double tie_epsilon) {
    PredictedLabel out;
    const double best = *std::min_element(scores.begin(), scores.end());
    for (Index c = 0; c < scores.size(); ++c)
        if (scores[c] <= best + tie_epsilon) out.tied_clusters.push_back(static_cast<int>(c));
    out.label = out.tied_clusters.size() == 1 ? out.tied_clusters.front() : kBorderLabel;
    out.scores = std::move(scores);
    return out;
}

std::vector<double> point_distances(const TrainedClusters& model, std::span<const double> p) {
    if (model.points.size() == 0) throw std::invalid_argument("classifier: model has no training points");
    if (p.size() != model.points.dim())
        throw std::invalid_argument("classifier: query has dimension " + std::to_string(p.size()) +
                                    ", model expects " + std::to_string(model.points.dim()));
    return distances_to(p, model.points, model.metric);
}

} // namespace

ContextMode parse_context_mode(std::string_view name) {
    if (name == "per_cluster") return ContextMode::per_cluster;
    if (name == "global") return ContextMode::global;
    throw std::invalid_argument("unknown context mode '" + std::string(name) + "'");
}

std::string_view to_string(ContextMode mode) {
    return mode == ContextMode::per_cluster ? "per_cluster" : "global";
}

TrainedClusters train_classifier(const PointSet& points, const MetricKind& metric, std::span<const int> labels,
                                 ContextMode mode, Engine engine) {
    const Index n = points.size();
    const Index k = count_clusters(labels, n);
    if (k == 0) throw std::invalid_argument("train_classifier: no clusters");

    TrainedClusters model;
    model.mode = mode;
    model.metric = metric;
    model.points = points;
    model.clusters.resize(k);
    for (Index x = 0; x < n; ++x) model.clusters[static_cast<Index>(labels[x])].members.push_back(x);
    for (Index c = 0; c < k; ++c)
        if (model.clusters[c].members.empty())
            throw std::invalid_argument("train_classifier: cluster " + std::to_string(c) + " is empty");

    const auto base = pairwise_base_matrix(points, metric);
    if (mode == ContextMode::global) {
        model.global = compute_mmj(base, engine);
        for (auto& cluster : model.clusters) cluster.scom = one_scom(model.global, cluster.members);
        return model;
    }

    parallel_for(k, [&](Index c) {
        auto& cluster = model.clusters[c];
        cluster.context = compute_mmj(base.submatrix(cluster.members), engine);
        std::vector<Index> local(cluster.members.size());
        for (Index t = 0; t < local.size(); ++t) local[t] = t;
        for (const Index s : one_scom(cluster.context, local)) cluster.scom.push_back(cluster.members[s]);
    });
    return model;
}

PredictedLabel predict_from_distances(const TrainedClusters& model, std::span<const double> base_to_points,
                                      double tie_epsilon) {
    const Index n = model.points.size();
    if (base_to_points.size() != n)
        throw std::invalid_argument("predict: expected " + std::to_string(n) + " base distances, got " +
                                    std::to_string(base_to_points.size()));
    if (model.clusters.empty()) throw std::invalid_argument("predict: model has no clusters");

    std::vector<double> scores(model.num_clusters(), kInf);
    if (model.mode == ContextMode::global) {
        // One query against M_Omega serves every cluster.
        std::vector<Index> targets;
        for (const auto& cluster : model.clusters) targets.insert(targets.end(), cluster.scom.begin(), cluster.scom.end());
        const auto values = query_external_point_at(model.global, base_to_points, targets);
        Index pos = 0;
        for (Index c = 0; c < model.num_clusters(); ++c)
            for (Index s = 0; s < model.clusters[c].scom.size(); ++s) scores[c] = std::min(scores[c], values[pos++]);
        return resolve(std::move(scores), tie_epsilon);
    }

    std::vector<double> local_base;
    std::vector<Index> targets;
    for (Index c = 0; c < model.num_clusters(); ++c) {
        const auto& cluster = model.clusters[c];
        local_base.resize(cluster.members.size());
        for (Index t = 0; t < local_base.size(); ++t) local_base[t] = base_to_points[cluster.members[t]];
        targets.clear();
        for (const Index s : cluster.scom) targets.push_back(local_position(cluster.members, s));
        const auto values = query_external_point_at(cluster.context, local_base, targets);
        scores[c] = *std::min_element(values.begin(), values.end());
    }
    return resolve(std::move(scores), tie_epsilon);
}

PredictedLabel predict(const TrainedClusters& model, std::span<const double> p, double tie_epsilon) {
    if (model.mode != ContextMode::per_cluster)
        throw std::invalid_argument("predict: model was trained with the global context");
    return predict_from_distances(model, point_distances(model, p), tie_epsilon);
}

PredictedLabel predict_global(const TrainedClusters& model, std::span<const double> p, double tie_epsilon) {
    if (model.mode != ContextMode::global)
        throw std::invalid_argument("predict_global: model was trained with per-cluster contexts");
    return predict_from_distances(model, point_distances(model, p), tie_epsilon);
}

std::vector<GridCell> decision_grid(const TrainedClusters& model, const GridBox& box, Index nx, Index ny) {
    if (model.points.dim() != 2) throw std::invalid_argument("decision_grid: requires a 2-D model");
    if (nx == 0 || ny == 0) throw std::invalid_argument("decision_grid: resolution must be positive");
    if (!(box.xmax >= box.xmin) || !(box.ymax >= box.ymin)) throw std::invalid_argument("decision_grid: invalid box");

    const double dx = (box.xmax - box.xmin) / static_cast<double>(nx);
    const double dy = (box.ymax - box.ymin) / static_cast<double>(ny);
    std::vector<GridCell> cells(nx * ny);
    parallel_for(cells.size(), [&](Index idx) {
        const Index ix = idx % nx;
        const Index iy = idx / nx;
        GridCell& cell = cells[idx];
        cell.x = box.xmin + (static_cast<double>(ix) + 0.5) * dx;
        cell.y = box.ymin + (static_cast<double>(iy) + 0.5) * dy;
        const double p[2] = {cell.x, cell.y};
        cell.prediction = predict_from_distances(model, point_distances(model, p));
    });
    return cells;
}

void save_model(const TrainedClusters& model, const std::filesystem::path& json_path) {
    namespace fs = std::filesystem;
    const auto dir = json_path.parent_path();
    const auto stem = json_path.stem().string();

    nlohmann::json doc;
    doc["format"] = "mmj-classifier";
    doc["version"] = 1;
    doc["mode"] = std::string(to_string(model.mode));
    doc["base_metric"] = model.metric.name();
    const std::string points_file = stem + ".points.csv";
    io::write_points_csv(dir / points_file, model.points);
    doc["points"] = points_file;

    auto clusters = nlohmann::json::array();
    for (Index c = 0; c < model.num_clusters(); ++c) {
        const auto& cluster = model.clusters[c];
        nlohmann::json entry;
        entry["members"] = cluster.members;
        entry["scom"] = cluster.scom;
        if (model.mode == ContextMode::per_cluster) {
            const std::string file = stem + ".cluster" + std::to_string(c) + ".csv";
            io::write_matrix_csv(dir / file, cluster.context.values());
            entry["context"] = file;
        }
        clusters.push_back(std::move(entry));
    }
    doc["clusters"] = std::move(clusters);
    if (model.mode == ContextMode::global) {
        const std::string file = stem + ".global.csv";
        io::write_matrix_csv(dir / file, model.global.values());
        doc["global_context"] = file;
    }
    io::write_file_atomic(json_path, doc.dump(2) + "\n");
}

TrainedClusters load_model(const std::filesystem::path& json_path) {
    const auto dir = json_path.parent_path();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(io::read_file(json_path));
    } catch (const nlohmann::json::exception& err) {
        throw io::ParseError("model " + json_path.string() + ": " + err.what(), 0);
    }
    if (doc.value("format", "") != "mmj-classifier")
        throw io::ParseError("model " + json_path.string() + ": not an mmj-classifier file", 0);

    TrainedClusters model;
    try {
        model.mode = parse_context_mode(doc.at("mode").get<std::string>());
        model.metric = MetricKind::parse(doc.at("base_metric").get<std::string>());
        model.points = io::read_points_csv(dir / doc.at("points").get<std::string>());
        for (const auto& entry : doc.at("clusters")) {
            TrainedCluster cluster;
            cluster.members = entry.at("members").get<std::vector<Index>>();
            cluster.scom = entry.at("scom").get<std::vector<Index>>();
            if (model.mode == ContextMode::per_cluster)
                cluster.context = MmjMatrix(io::read_matrix_csv(dir / entry.at("context").get<std::string>()), false);
            model.clusters.push_back(std::move(cluster));
        }
        if (model.mode == ContextMode::global)
            model.global = MmjMatrix(io::read_matrix_csv(dir / doc.at("global_context").get<std::string>()), false);
    } catch (const nlohmann::json::exception& err) {
        throw io::ParseError("model " + json_path.string() + ": " + err.what(), 0);
    }
    return model;
}

} // namespace mmj
