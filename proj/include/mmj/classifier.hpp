#pragma once

#include "mmj/clustering.hpp"
#include "mmj/engine.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mmj {

/// Which context the One-SCOMs and predict-time MMJ distances use.
enum class ContextMode {
    per_cluster, ///< each cluster alone: MMJ(p, xi_i | C_i + p)
    global,      ///< the whole training set: MMJ(p, xi_i | Omega + p)
};

ContextMode parse_context_mode(std::string_view name);
std::string_view to_string(ContextMode mode);

inline constexpr int kBorderLabel = -1;

struct TrainedCluster {
    std::vector<Index> members; ///< ascending indices into the training set
    CenterSet scom;             ///< One-SCOMs, as training-set indices
    MmjMatrix context;          ///< M_{C_i} over `members` (per_cluster mode only)
};

struct TrainedClusters {
    ContextMode mode = ContextMode::per_cluster;
    MetricKind metric;
    PointSet points;
    std::vector<TrainedCluster> clusters;
    MmjMatrix global; ///< M_Omega (global mode only)

    Index num_clusters() const noexcept { return clusters.size(); }
};

struct PredictedLabel {
    int label = kBorderLabel;
    std::vector<int> tied_clusters;
    std::vector<double> scores; ///< g(i) for every cluster

    bool is_border() const noexcept { return tied_clusters.size() > 1; }
};

/// Builds a classifier from a finished clustering. Labels must cover 0..K-1.
TrainedClusters train_classifier(const PointSet& points, const MetricKind& metric, std::span<const int> labels,
                                 ContextMode mode, Engine engine = Engine::mst);

/// Predicts from the base distances of the query to every training point.
/// Exact ties (or within `tie_epsilon`) yield kBorderLabel with the tied set.
PredictedLabel predict_from_distances(const TrainedClusters& model, std::span<const double> base_to_points,
                                      double tie_epsilon = 0.0);

/// Per-cluster context prediction; the model must be trained in per_cluster mode.
PredictedLabel predict(const TrainedClusters& model, std::span<const double> p, double tie_epsilon = 0.0);

/// Global context prediction; the model must be trained in global mode.
PredictedLabel predict_global(const TrainedClusters& model, std::span<const double> p, double tie_epsilon = 0.0);

struct GridBox {
    double xmin = 0.0;
    double xmax = 1.0;
    double ymin = 0.0;
    double ymax = 1.0;
};

struct GridCell {
    double x = 0.0;
    double y = 0.0;
    PredictedLabel prediction;
};

/// Predictions at the centers of an nx by ny lattice over `box`, row-major in y then x.
/// Uses the model's own context mode. 2-D models only.
std::vector<GridCell> decision_grid(const TrainedClusters& model, const GridBox& box, Index nx, Index ny);

/// JSON descriptor plus sidecar CSVs (training points, context matrices) in the same directory.
void save_model(const TrainedClusters& model, const std::filesystem::path& json_path);
TrainedClusters load_model(const std::filesystem::path& json_path);

} // namespace mmj
