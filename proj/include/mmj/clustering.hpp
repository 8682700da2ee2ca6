#pragma once

#include "mmj/mmj_exact.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mmj {

/// All tied One-SCOMs of one cluster, ascending indices.
using CenterSet = std::vector<Index>;

enum class BorderStatus { none, weak, strong };

std::string_view to_string(BorderStatus status);

enum class CenterUpdate {
    one_scom, ///< Lloyd-style: each cluster's One-SCOM under the global matrix
    pam_swap, ///< greedy medoid swaps on the same objective
};

struct KmeansConfig {
    Index k = 2;
    int max_iter = 100;
    int n_init = 10;
    std::uint64_t seed = 0;
    CenterUpdate update = CenterUpdate::one_scom;
};

struct ClusterAssignment {
    std::vector<int> labels;
    std::vector<BorderStatus> border_status;
    std::vector<CenterSet> centers;
    double objective = 0.0;
    int iterations = 0;
    int best_restart = 0;
    /// Objective of each iteration's centers within the winning restart.
    std::vector<double> objective_trace;
};

/// Members minimising the sum of squared distances to all members. The
/// squared terms are summed in sorted order so equal multisets tie exactly.
CenterSet one_scom(const Matrix& distance, std::span<const Index> members);
inline CenterSet one_scom(const MmjMatrix& mmj, std::span<const Index> members) {
    return one_scom(mmj.values(), members);
}

/// Distance from x to the nearest member of `centers`.
double distance_to_centers(const Matrix& distance, Index x, const CenterSet& centers);

/// Sum over points of the squared distance to the nearest center. Each set
/// is represented by its smallest index.
double kmeans_objective(const Matrix& distance, std::span<const CenterSet> centers);

/// K-means under MMJ distance with One-SCOM centers. Training ties are
/// allocated uniformly at random among the tied clusters. Assignment during
/// training and the objective use each set's smallest index; the final labels
/// and border status use the whole set.
ClusterAssignment mmj_kmeans(const MmjMatrix& mmj, const KmeansConfig& cfg);

/// Number of clusters attaining the nearest-center distance: 1 -> none,
/// between 1 and K -> weak, K -> strong.
std::vector<BorderStatus> classify_border_points(const MmjMatrix& mmj, std::span<const CenterSet> centers);

} // namespace mmj
