#pragma once

#include "mmj/clustering.hpp"
#include "mmj/engine.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmj {

enum class IndexKind { sc, ch, db, mmj_sc, mmj_ch, mmj_db };

IndexKind parse_index(std::string_view name);
std::string_view to_string(IndexKind kind);
bool higher_is_better(IndexKind kind);
bool uses_mmj(IndexKind kind);

struct IndexScore {
    IndexKind kind = IndexKind::sc;
    double value = 0.0;
    bool higher_better = true;
    /// Set for degenerate values (infinite CH, coincident DB centers) reported instead of thrown.
    bool saturated = false;
    std::string diagnostic;

    /// True when this score is strictly better than `other` in its direction.
    bool better_than(const IndexScore& other) const;
};

/// Per-sample silhouette values; singleton clusters score 0.
std::vector<double> silhouette_samples(const Matrix& distance, std::span<const int> labels);

/// Mean silhouette. `kind` only tags the result (sc for base distances, mmj_sc for MMJ).
IndexScore silhouette(const Matrix& distance, std::span<const int> labels, IndexKind kind = IndexKind::sc);

/// Calinski-Harabasz with One-SCOM centers. Each center set is represented by
/// its smallest index; the global center is the One-SCOM of all points.
IndexScore calinski_harabasz(const Matrix& distance, std::span<const int> labels,
                             std::span<const CenterSet> centers, IndexKind kind = IndexKind::mmj_ch);
IndexScore calinski_harabasz(const Matrix& distance, std::span<const int> labels,
                             IndexKind kind = IndexKind::mmj_ch);

/// Davies-Bouldin with One-SCOM centers; throws std::domain_error if two centers coincide.
IndexScore davies_bouldin(const Matrix& distance, std::span<const int> labels, std::span<const CenterSet> centers,
                          IndexKind kind = IndexKind::mmj_db);
IndexScore davies_bouldin(const Matrix& distance, std::span<const int> labels, IndexKind kind = IndexKind::mmj_db);

/// Classical centroid-based Euclidean versions.
IndexScore calinski_harabasz_centroid(const PointSet& points, std::span<const int> labels);
IndexScore davies_bouldin_centroid(const PointSet& points, std::span<const int> labels);

/// Scores `labels` with any index. Standard CH/DB need coordinates.
IndexScore score_index(IndexKind kind, const MmjMatrix& mmj, const BaseDistanceMatrix& base,
                       const PointSet* points, std::span<const int> labels);

/// Adjusted Rand index between two labelings of equal length.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

struct SweepEntry {
    Index k = 0;
    IndexScore score;
};

struct SweepResult {
    std::vector<SweepEntry> table;
    Index best_k = 0;
};

/// Clusters once per k with mmj_kmeans (seed derived from cfg.seed and k) and
/// scores each clustering. Degenerate scores are flagged rather than thrown.
SweepResult sweep_k(const MmjMatrix& mmj, const BaseDistanceMatrix& base, const PointSet* points,
                    std::span<const Index> ks, IndexKind kind, const KmeansConfig& cfg);
SweepResult sweep_k(const PointSet& points, const MetricKind& metric, std::span<const Index> ks, Engine engine,
                    IndexKind kind, const KmeansConfig& cfg);

} // namespace mmj
