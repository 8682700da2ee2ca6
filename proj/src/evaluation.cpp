#include "mmj/evaluation.hpp"
#include "mmj/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace mmj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Labels must be 0..K-1 with every cluster present and K >= 2.
Index validate_labels(std::span<const int> labels, Index n, const char* where) {
    if (labels.size() != n)
        throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(n) + " labels, got " +
                                    std::to_string(labels.size()));
    int max_label = -1;
    for (const int l : labels) {
        if (l < 0) throw std::invalid_argument(std::string(where) + ": labels must be non-negative");
        max_label = std::max(max_label, l);
    }
    const auto k = static_cast<Index>(max_label + 1);
    if (k < 2) throw std::invalid_argument(std::string(where) + ": at least two clusters are required");
    std::vector<Index> sizes(k, 0);
    for (const int l : labels) ++sizes[static_cast<Index>(l)];
    for (Index c = 0; c < k; ++c)
        if (sizes[c] == 0)
            throw std::invalid_argument(std::string(where) + ": cluster " + std::to_string(c) + " is empty");
    return k;
}

std::vector<Index> cluster_sizes(std::span<const int> labels, Index k) {
    std::vector<Index> sizes(k, 0);
    for (const int l : labels) ++sizes[static_cast<Index>(l)];
    return sizes;
}

std::vector<Index> representatives(std::span<const CenterSet> centers, Index k, const char* where) {
    if (centers.size() != k)
        throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(k) + " center sets");
    std::vector<Index> reps(k);
    for (Index c = 0; c < k; ++c) {
        if (centers[c].empty()) throw std::invalid_argument(std::string(where) + ": empty center set");
        reps[c] = *std::min_element(centers[c].begin(), centers[c].end());
    }
    return reps;
}

std::vector<CenterSet> centers_from_labels(const Matrix& distance, std::span<const int> labels, Index k) {
    std::vector<std::vector<Index>> members(k);
    for (Index x = 0; x < labels.size(); ++x) members[static_cast<Index>(labels[x])].push_back(x);
    std::vector<CenterSet> centers(k);
    for (Index c = 0; c < k; ++c) centers[c] = one_scom(distance, members[c]);
    return centers;
}

IndexScore make_score(IndexKind kind, double value) {
    IndexScore s;
    s.kind = kind;
    s.value = value;
    s.higher_better = higher_is_better(kind);
    return s;
}

std::vector<double> centroid(const PointSet& points, std::span<const Index> members) {
    std::vector<double> c(points.dim(), 0.0);
    for (const Index x : members) {
        const auto p = points.point(x);
        for (Index d = 0; d < c.size(); ++d) c[d] += p[d];
    }
    for (double& v : c) v /= static_cast<double>(members.size());
    return c;
}

double squared_norm_diff(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (Index d = 0; d < a.size(); ++d) acc += (a[d] - b[d]) * (a[d] - b[d]);
    return acc;
}

} // namespace

IndexKind parse_index(std::string_view name) {
    if (name == "sc") return IndexKind::sc;
    if (name == "ch") return IndexKind::ch;
    if (name == "db") return IndexKind::db;
    if (name == "mmj_sc") return IndexKind::mmj_sc;
    if (name == "mmj_ch") return IndexKind::mmj_ch;
    if (name == "mmj_db") return IndexKind::mmj_db;
    throw std::invalid_argument("unknown index '" + std::string(name) + "'");
}

std::string_view to_string(IndexKind kind) {
    switch (kind) {
    case IndexKind::sc: return "sc";
    case IndexKind::ch: return "ch";
    case IndexKind::db: return "db";
    case IndexKind::mmj_sc: return "mmj_sc";
    case IndexKind::mmj_ch: return "mmj_ch";
    case IndexKind::mmj_db: return "mmj_db";
    }
    return "unknown";
}

bool higher_is_better(IndexKind kind) { return kind != IndexKind::db && kind != IndexKind::mmj_db; }

bool uses_mmj(IndexKind kind) {
    return kind == IndexKind::mmj_sc || kind == IndexKind::mmj_ch || kind == IndexKind::mmj_db;
}

bool IndexScore::better_than(const IndexScore& other) const {
    if (std::isnan(value)) return false;
    if (std::isnan(other.value)) return true;
    return higher_better ? value > other.value : value < other.value;
}

std::vector<double> silhouette_samples(const Matrix& distance, std::span<const int> labels) {
    const Index n = distance.rows();
    const Index k = validate_labels(labels, n, "silhouette");
    const auto sizes = cluster_sizes(labels, k);

    std::vector<double> out(n, 0.0);
    std::vector<double> sums(k);
    for (Index x = 0; x < n; ++x) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (Index y = 0; y < n; ++y) sums[static_cast<Index>(labels[y])] += distance(x, y);
        const auto own = static_cast<Index>(labels[x]);
        if (sizes[own] == 1) continue;
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = kInf;
        for (Index c = 0; c < k; ++c)
            if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        const double scale = std::max(a, b);
        out[x] = scale > 0.0 ? (b - a) / scale : 0.0;
    }
    return out;
}

IndexScore silhouette(const Matrix& distance, std::span<const int> labels, IndexKind kind) {
    const auto samples = silhouette_samples(distance, labels);
    double total = 0.0;
    for (const double s : samples) total += s;
    return make_score(kind, total / static_cast<double>(samples.size()));
}

IndexScore calinski_harabasz(const Matrix& distance, std::span<const int> labels, std::span<const CenterSet> centers,
                             IndexKind kind) {
    const Index n = distance.rows();
    const Index k = validate_labels(labels, n, "calinski_harabasz");
    if (n <= k) throw std::invalid_argument("calinski_harabasz: requires N > K");
    const auto reps = representatives(centers, k, "calinski_harabasz");
    const auto sizes = cluster_sizes(labels, k);

    std::vector<Index> all(n);
    for (Index x = 0; x < n; ++x) all[x] = x;
    const Index global = one_scom(distance, all).front();

    double between = 0.0;
    for (Index c = 0; c < k; ++c) {
        const double dc = distance(reps[c], global);
        between += static_cast<double>(sizes[c]) * dc * dc;
    }
    double within = 0.0;
    for (Index x = 0; x < n; ++x) {
        const double dx = distance(x, reps[static_cast<Index>(labels[x])]);
        within += dx * dx;
    }

    IndexScore score = make_score(kind, 0.0);
    if (within == 0.0) {
        score.value = kInf;
        score.saturated = true;
        score.diagnostic = "within-cluster dispersion is zero";
        return score;
    }
    score.value = (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - k));
    return score;
}

IndexScore calinski_harabasz(const Matrix& distance, std::span<const int> labels, IndexKind kind) {
    const Index k = validate_labels(labels, distance.rows(), "calinski_harabasz");
    const auto centers = centers_from_labels(distance, labels, k);
    return calinski_harabasz(distance, labels, centers, kind);
}

IndexScore davies_bouldin(const Matrix& distance, std::span<const int> labels, std::span<const CenterSet> centers,
                          IndexKind kind) {
    const Index n = distance.rows();
    const Index k = validate_labels(labels, n, "davies_bouldin");
    const auto reps = representatives(centers, k, "davies_bouldin");
    const auto sizes = cluster_sizes(labels, k);

    std::vector<double> scatter(k, 0.0);
    for (Index x = 0; x < n; ++x) {
        const auto c = static_cast<Index>(labels[x]);
        scatter[c] += distance(x, reps[c]);
    }
    for (Index c = 0; c < k; ++c) scatter[c] /= static_cast<double>(sizes[c]);

    double total = 0.0;
    for (Index i = 0; i < k; ++i) {
        double worst = 0.0;
        for (Index j = 0; j < k; ++j) {
            if (i == j) continue;
            const double sep = distance(reps[i], reps[j]);
            if (sep == 0.0)
                throw std::domain_error("davies_bouldin: centers of clusters " + std::to_string(i) + " and " +
                                        std::to_string(j) + " coincide (points " + std::to_string(reps[i]) +
                                        " and " + std::to_string(reps[j]) + ")");
            worst = std::max(worst, (scatter[i] + scatter[j]) / sep);
        }
        total += worst;
    }
    return make_score(kind, total / static_cast<double>(k));
}

IndexScore davies_bouldin(const Matrix& distance, std::span<const int> labels, IndexKind kind) {
    const Index k = validate_labels(labels, distance.rows(), "davies_bouldin");
    const auto centers = centers_from_labels(distance, labels, k);
    return davies_bouldin(distance, labels, centers, kind);
}

IndexScore calinski_harabasz_centroid(const PointSet& points, std::span<const int> labels) {
    const Index n = points.size();
    const Index k = validate_labels(labels, n, "calinski_harabasz");
    if (n <= k) throw std::invalid_argument("calinski_harabasz: requires N > K");
    std::vector<std::vector<Index>> members(k);
    for (Index x = 0; x < n; ++x) members[static_cast<Index>(labels[x])].push_back(x);
    std::vector<Index> all(n);
    for (Index x = 0; x < n; ++x) all[x] = x;
    const auto global = centroid(points, all);

    double between = 0.0;
    double within = 0.0;
    for (Index c = 0; c < k; ++c) {
        const auto mu = centroid(points, members[c]);
        between += static_cast<double>(members[c].size()) * squared_norm_diff(mu, global);
        for (const Index x : members[c]) within += squared_norm_diff(points.point(x), mu);
    }
    IndexScore score = make_score(IndexKind::ch, 0.0);
    if (within == 0.0) {
        score.value = kInf;
        score.saturated = true;
        score.diagnostic = "within-cluster dispersion is zero";
        return score;
    }
    score.value = (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - k));
    return score;
}

IndexScore davies_bouldin_centroid(const PointSet& points, std::span<const int> labels) {
    const Index n = points.size();
    const Index k = validate_labels(labels, n, "davies_bouldin");
    std::vector<std::vector<Index>> members(k);
    for (Index x = 0; x < n; ++x) members[static_cast<Index>(labels[x])].push_back(x);
    std::vector<std::vector<double>> mu(k);
    std::vector<double> scatter(k, 0.0);
    for (Index c = 0; c < k; ++c) {
        mu[c] = centroid(points, members[c]);
        for (const Index x : members[c]) scatter[c] += std::sqrt(squared_norm_diff(points.point(x), mu[c]));
        scatter[c] /= static_cast<double>(members[c].size());
    }
    double total = 0.0;
    for (Index i = 0; i < k; ++i) {
        double worst = 0.0;
        for (Index j = 0; j < k; ++j) {
            if (i == j) continue;
            const double sep = std::sqrt(squared_norm_diff(mu[i], mu[j]));
            if (sep == 0.0)
                throw std::domain_error("davies_bouldin: centroids of clusters " + std::to_string(i) + " and " +
                                        std::to_string(j) + " coincide");
            worst = std::max(worst, (scatter[i] + scatter[j]) / sep);
        }
        total += worst;
    }
    return make_score(IndexKind::db, total / static_cast<double>(k));
}

IndexScore score_index(IndexKind kind, const MmjMatrix& mmj, const BaseDistanceMatrix& base, const PointSet* points,
                       std::span<const int> labels) {
    switch (kind) {
    case IndexKind::sc: return silhouette(base.values(), labels, IndexKind::sc);
    case IndexKind::mmj_sc: return silhouette(mmj.values(), labels, IndexKind::mmj_sc);
    case IndexKind::mmj_ch: return calinski_harabasz(mmj.values(), labels, IndexKind::mmj_ch);
    case IndexKind::mmj_db: return davies_bouldin(mmj.values(), labels, IndexKind::mmj_db);
    case IndexKind::ch:
    case IndexKind::db:
        if (!points) throw std::invalid_argument("standard ch/db need point coordinates");
        return kind == IndexKind::ch ? calinski_harabasz_centroid(*points, labels)
                                     : davies_bouldin_centroid(*points, labels);
    }
    throw std::invalid_argument("unknown index");
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("adjusted_rand_index: length mismatch");
    const auto n = static_cast<double>(a.size());
    std::map<std::pair<int, int>, double> table;
    std::map<int, double> rows;
    std::map<int, double> cols;
    for (Index x = 0; x < a.size(); ++x) {
        table[{a[x], b[x]}] += 1.0;
        rows[a[x]] += 1.0;
        cols[b[x]] += 1.0;
    }
    auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };
    double index = 0.0;
    for (const auto& [key, count] : table) index += pairs(count);
    double sum_rows = 0.0;
    for (const auto& [key, count] : rows) sum_rows += pairs(count);
    double sum_cols = 0.0;
    for (const auto& [key, count] : cols) sum_cols += pairs(count);
    const double total = pairs(n);
    if (total == 0.0) return 1.0;
    const double expected = sum_rows * sum_cols / total;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

SweepResult sweep_k(const MmjMatrix& mmj, const BaseDistanceMatrix& base, const PointSet* points,
                    std::span<const Index> ks, IndexKind kind, const KmeansConfig& cfg) {
    const Index n = mmj.size();
    if (ks.empty()) throw std::invalid_argument("sweep_k: empty k range");
    for (const Index k : ks)
        if (k < 2 || k + 1 > n)
            throw std::invalid_argument("sweep_k: k = " + std::to_string(k) + " outside [2, N-1]");

    SweepResult result;
    result.table.resize(ks.size());
    parallel_for(ks.size(), [&](Index e) {
        KmeansConfig run_cfg = cfg;
        run_cfg.k = ks[e];
        run_cfg.seed = derive_seed(cfg.seed, ks[e], 0x5eedULL);
        const auto clustering = mmj_kmeans(mmj, run_cfg);
        IndexScore score;
        try {
            score = score_index(kind, mmj, base, points, clustering.labels);
        } catch (const std::domain_error& err) {
            score = make_score(kind, higher_is_better(kind) ? -kInf : kInf);
            score.saturated = true;
            score.diagnostic = err.what();
        }
        result.table[e] = {ks[e], std::move(score)};
    });

    const SweepEntry* best = &result.table.front();
    for (const auto& entry : result.table)
        if (entry.score.better_than(best->score)) best = &entry;
    result.best_k = best->k;
    return result;
}

SweepResult sweep_k(const PointSet& points, const MetricKind& metric, std::span<const Index> ks, Engine engine,
                    IndexKind kind, const KmeansConfig& cfg) {
    const auto base = pairwise_base_matrix(points, metric);
    const auto mmj = compute_mmj(base, engine);
    return sweep_k(mmj, base, &points, ks, kind, cfg);
}

} // namespace mmj
