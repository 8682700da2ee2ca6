#include "mmj/clustering.hpp"
#include "mmj/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace mmj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RunResult {
    std::vector<int> labels;
    std::vector<CenterSet> centers;
    double objective = kInf;
    int iterations = 0;
    std::vector<double> trace;
};

double sorted_square_sum(std::vector<double>& squares) {
    std::sort(squares.begin(), squares.end());
    return std::accumulate(squares.begin(), squares.end(), 0.0);
}

// Nearest clusters for one point; ties allocated uniformly at random.
std::vector<int> assign(const Matrix& d, std::span<const CenterSet> centers, std::mt19937_64& rng) {
    const Index n = d.rows();
    std::vector<int> labels(n);
    std::vector<int> tied;
    for (Index x = 0; x < n; ++x) {
        double best = kInf;
        tied.clear();
        for (Index c = 0; c < centers.size(); ++c) {
            const double dist = distance_to_centers(d, x, centers[c]);
            if (dist < best) {
                best = dist;
                tied.assign(1, static_cast<int>(c));
            } else if (dist == best) {
                tied.push_back(static_cast<int>(c));
            }
        }
        if (tied.size() == 1) {
            labels[x] = tied.front();
        } else {
            std::uniform_int_distribution<Index> pick(0, tied.size() - 1);
            labels[x] = tied[pick(rng)];
        }
    }
    return labels;
}

// An empty cluster takes the point farthest from its current center among
// clusters that can spare one.
void refill_empty(const Matrix& d, std::span<const CenterSet> centers, std::vector<int>& labels) {
    const Index k = centers.size();
    std::vector<Index> sizes(k, 0);
    for (const int l : labels) ++sizes[static_cast<Index>(l)];
    for (Index c = 0; c < k; ++c) {
        if (sizes[c] > 0) continue;
        Index pick = labels.size();
        double worst = -1.0;
        for (Index x = 0; x < labels.size(); ++x) {
            const auto own = static_cast<Index>(labels[x]);
            if (sizes[own] <= 1) continue;
            const double dist = distance_to_centers(d, x, centers[own]);
            if (dist > worst) {
                worst = dist;
                pick = x;
            }
        }
        if (pick == labels.size()) throw std::logic_error("mmj_kmeans: cannot refill an empty cluster");
        --sizes[static_cast<Index>(labels[pick])];
        labels[pick] = static_cast<int>(c);
        sizes[c] = 1;
    }
}

std::vector<std::vector<Index>> members_of(std::span<const int> labels, Index k) {
    std::vector<std::vector<Index>> members(k);
    for (Index x = 0; x < labels.size(); ++x) members[static_cast<Index>(labels[x])].push_back(x);
    return members;
}

// Training measures distance to one member of each tie set. Taking the
// minimum over a whole tie set lets sets that jointly cover every point
// score zero on a mixed partition.
std::vector<CenterSet> representatives(std::span<const CenterSet> centers) {
    std::vector<CenterSet> reps;
    reps.reserve(centers.size());
    for (const auto& set : centers) reps.push_back({set.front()});
    return reps;
}

double cluster_cost(const Matrix& d, std::span<const Index> members, const CenterSet& centers) {
    std::vector<double> squares;
    squares.reserve(members.size());
    for (const Index x : members) {
        const double v = distance_to_centers(d, x, centers);
        squares.push_back(v * v);
    }
    return sorted_square_sum(squares);
}

// A tied center set can serve its members better than any single One-SCOM,
// so a cluster keeps its old set when the recomputed one would cost more.
// This keeps the objective non-increasing.
std::vector<CenterSet> update_centers(const Matrix& d, std::span<const int> labels,
                                      std::span<const CenterSet> previous) {
    const Index k = previous.size();
    const auto members = members_of(labels, k);
    std::vector<CenterSet> centers(k);
    parallel_for(k, [&](Index c) {
        centers[c] = one_scom(d, members[c]);
        if (cluster_cost(d, members[c], {centers[c].front()}) > cluster_cost(d, members[c], {previous[c].front()}))
            centers[c] = previous[c];
    });
    return centers;
}

RunResult lloyd(const Matrix& d, std::vector<CenterSet> centers, std::mt19937_64& rng, const KmeansConfig& cfg) {
    RunResult run;
    std::vector<std::vector<CenterSet>> history;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        const auto reps = representatives(centers);
        run.trace.push_back(kmeans_objective(d, reps));
        auto labels = assign(d, reps, rng);
        refill_empty(d, reps, labels);
        auto next = update_centers(d, labels, centers);
        run.iterations = iter;
        history.push_back(std::move(centers));
        centers = std::move(next);
        if (std::find(history.begin(), history.end(), centers) != history.end()) break;
    }
    // Final labels use whole tie sets, matching the border classification.
    run.labels = assign(d, centers, rng);
    refill_empty(d, representatives(centers), run.labels);
    run.objective = kmeans_objective(d, centers);
    run.trace.push_back(run.objective);
    run.centers = std::move(centers);
    return run;
}

RunResult pam_swap(const Matrix& d, std::vector<CenterSet> centers, std::mt19937_64& rng, const KmeansConfig& cfg) {
    RunResult run;
    const Index n = d.rows();
    double current = kmeans_objective(d, centers);
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        run.trace.push_back(current);
        run.iterations = iter;
        double best = current;
        Index best_cluster = cfg.k;
        Index best_point = n;
        std::vector<CenterSet> trial = centers;
        for (Index c = 0; c < cfg.k; ++c) {
            for (Index o = 0; o < n; ++o) {
                if (std::any_of(centers.begin(), centers.end(), [o](const CenterSet& s) { return s.front() == o; }))
                    continue;
                trial[c] = {o};
                const double value = kmeans_objective(d, trial);
                if (value < best) {
                    best = value;
                    best_cluster = c;
                    best_point = o;
                }
            }
            trial[c] = centers[c];
        }
        if (best_cluster == cfg.k) break;
        centers[best_cluster] = {best_point};
        current = best;
    }
    run.labels = assign(d, centers, rng);
    refill_empty(d, centers, run.labels);
    run.objective = kmeans_objective(d, centers);
    run.trace.push_back(run.objective);
    run.centers = std::move(centers);
    return run;
}

} // namespace

std::string_view to_string(BorderStatus status) {
    switch (status) {
    case BorderStatus::none: return "none";
    case BorderStatus::weak: return "weak";
    case BorderStatus::strong: return "strong";
    }
    return "unknown";
}

CenterSet one_scom(const Matrix& distance, std::span<const Index> members) {
    if (members.empty()) throw std::invalid_argument("one_scom: member set is empty");
    CenterSet best_set;
    double best = kInf;
    std::vector<double> squares(members.size());
    for (const Index x : members) {
        for (Index t = 0; t < members.size(); ++t) {
            const double v = distance(x, members[t]);
            squares[t] = v * v;
        }
        const double sum = sorted_square_sum(squares);
        if (sum < best) {
            best = sum;
            best_set.assign(1, x);
        } else if (sum == best) {
            best_set.push_back(x);
        }
    }
    std::sort(best_set.begin(), best_set.end());
    return best_set;
}

double distance_to_centers(const Matrix& distance, Index x, const CenterSet& centers) {
    double best = kInf;
    for (const Index c : centers) best = std::min(best, distance(x, c));
    return best;
}

double kmeans_objective(const Matrix& distance, std::span<const CenterSet> centers) {
    double total = 0.0;
    for (Index x = 0; x < distance.rows(); ++x) {
        double best = kInf;
        for (const auto& set : centers) best = std::min(best, distance(x, set.front()));
        total += best * best;
    }
    return total;
}

ClusterAssignment mmj_kmeans(const MmjMatrix& mmj, const KmeansConfig& cfg) {
    const Index n = mmj.size();
    if (mmj.directed()) throw std::invalid_argument("mmj_kmeans: requires an undirected MMJ matrix");
    if (cfg.k < 1) throw std::invalid_argument("mmj_kmeans: k must be at least 1");
    if (cfg.k > n)
        throw std::invalid_argument("mmj_kmeans: k = " + std::to_string(cfg.k) + " exceeds N = " + std::to_string(n));
    if (cfg.max_iter < 1 || cfg.n_init < 1)
        throw std::invalid_argument("mmj_kmeans: max_iter and n_init must be positive");

    const Matrix& d = mmj.values();
    RunResult best;
    int best_restart = -1;
    std::vector<Index> pool(n);
    for (int r = 0; r < cfg.n_init; ++r) {
        std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        std::iota(pool.begin(), pool.end(), Index{0});
        // Partial Fisher-Yates: k distinct indices uniformly without replacement.
        std::vector<CenterSet> centers(cfg.k);
        for (Index c = 0; c < cfg.k; ++c) {
            std::uniform_int_distribution<Index> pick(c, n - 1);
            std::swap(pool[c], pool[pick(rng)]);
            centers[c] = {pool[c]};
        }
        RunResult run = cfg.update == CenterUpdate::pam_swap ? pam_swap(d, std::move(centers), rng, cfg)
                                                             : lloyd(d, std::move(centers), rng, cfg);
        if (best_restart < 0 || run.objective < best.objective) {
            best = std::move(run);
            best_restart = r;
        }
    }

    ClusterAssignment out;
    out.border_status = classify_border_points(mmj, best.centers);
    out.labels = std::move(best.labels);
    out.centers = std::move(best.centers);
    out.objective = best.objective;
    out.iterations = best.iterations;
    out.best_restart = best_restart;
    out.objective_trace = std::move(best.trace);
    return out;
}

std::vector<BorderStatus> classify_border_points(const MmjMatrix& mmj, std::span<const CenterSet> centers) {
    const Index k = centers.size();
    if (k == 0) throw std::invalid_argument("classify_border_points: no centers");
    for (const auto& set : centers)
        if (set.empty()) throw std::invalid_argument("classify_border_points: empty center set");

    std::vector<BorderStatus> status(mmj.size(), BorderStatus::none);
    for (Index x = 0; x < mmj.size(); ++x) {
        double best = kInf;
        Index count = 0;
        for (const auto& set : centers) {
            const double dist = distance_to_centers(mmj.values(), x, set);
            if (dist < best) {
                best = dist;
                count = 1;
            } else if (dist == best) {
                ++count;
            }
        }
        if (count == 1) status[x] = BorderStatus::none;
        else if (count < k) status[x] = BorderStatus::weak;
        else status[x] = BorderStatus::strong;
    }
    return status;
}

} // namespace mmj
