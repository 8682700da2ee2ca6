#include "mmj/mmj_sampling.hpp"
#include "mmj/parallel.hpp"

#include "tree_fill.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace mmj {

void SamplerConfig::validate() const {
    if (k_neighbors < 1) throw std::invalid_argument("SamplerConfig: k_neighbors must be at least 1");
    if (num_paths < 1) throw std::invalid_argument("SamplerConfig: num_paths must be at least 1");
}

PathSampler::PathSampler(const BaseDistanceMatrix& base, Index k_neighbors)
    : base_(&base), k_(k_neighbors), order_(base.size()) {
    if (base.directed()) throw std::invalid_argument("PathSampler: requires an undirected base matrix");
    if (k_ < 1) throw std::invalid_argument("PathSampler: k_neighbors must be at least 1");
    const Index n = base.size();
    for (Index v = 0; v < n; ++v) {
        auto& ord = order_[v];
        ord.reserve(n - 1);
        for (Index w = 0; w < n; ++w)
            if (w != v) ord.push_back(w);
        std::sort(ord.begin(), ord.end(), [&](Index a, Index b) {
            return base(v, a) != base(v, b) ? base(v, a) < base(v, b) : a < b;
        });
    }
}

double PathSampler::sample(Index start, Index end, std::mt19937_64& rng) const {
    const Index n = base_->size();
    if (start >= n || end >= n) throw std::out_of_range("PathSampler: index out of range");
    if (start == end) return 0.0;

    std::vector<char> visited(n, 0);
    std::vector<Index> near;
    near.reserve(k_);
    Index next = start;
    visited[next] = 1;
    double max_jump = 0.0;
    while (next != end) {
        near.clear();
        for (const Index w : order_[next]) {
            if (visited[w]) continue;
            near.push_back(w);
            if (near.size() == k_) break;
        }
        // `end` is never visited before the walk stops, so `near` is non-empty.
        Index step;
        if (near.front() == end) {
            step = end;
        } else {
            std::uniform_int_distribution<Index> pick(0, near.size() - 1);
            step = near[pick(rng)];
        }
        max_jump = std::max(max_jump, (*base_)(next, step));
        visited[step] = 1;
        next = step;
    }
    return max_jump;
}

double sample_path_max_jump(const BaseDistanceMatrix& base, Index start, Index end, const SamplerConfig& cfg,
                            std::mt19937_64& rng) {
    cfg.validate();
    return PathSampler(base, cfg.k_neighbors).sample(start, end, rng);
}

namespace {

std::vector<double> running_minimum(const PathSampler& sampler, Index i, Index j, const SamplerConfig& cfg) {
    const Index lo = std::min(i, j);
    const Index hi = std::max(i, j);
    std::mt19937_64 rng(derive_seed(cfg.seed, lo, hi));
    std::vector<double> trace(cfg.num_paths);
    double best = std::numeric_limits<double>::infinity();
    for (Index s = 0; s < cfg.num_paths; ++s) {
        best = std::min(best, sampler.sample(lo, hi, rng));
        trace[s] = best;
    }
    return trace;
}

Matrix estimate_with(const PathSampler& sampler, Index n, const SamplerConfig& cfg) {
    Matrix est = Matrix::square(n);
    parallel_for(n, [&](Index i) {
        for (Index j = i + 1; j < n; ++j) est(i, j) = running_minimum(sampler, i, j, cfg).back();
    });
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) est(j, i) = est(i, j);
    return est;
}

// Breadth-first reach over hops strictly shorter than delta.
std::vector<Index> reach_below(const BaseDistanceMatrix& base, Index from, double delta) {
    const Index n = base.size();
    std::vector<char> seen(n, 0);
    std::vector<Index> out{from};
    seen[from] = 1;
    for (Index head = 0; head < out.size(); ++head) {
        const auto row = base.row(out[head]);
        for (Index w = 0; w < n; ++w) {
            if (!seen[w] && row[w] < delta) {
                seen[w] = 1;
                out.push_back(w);
            }
        }
    }
    return out;
}

} // namespace

std::vector<double> sample_running_minimum(const PathSampler& sampler, Index i, Index j, const SamplerConfig& cfg) {
    cfg.validate();
    if (i >= sampler.size() || j >= sampler.size())
        throw std::out_of_range("sample_running_minimum: index out of range");
    if (i == j) return std::vector<double>(cfg.num_paths, 0.0);
    return running_minimum(sampler, i, j, cfg);
}

std::vector<double> sample_running_minimum(const BaseDistanceMatrix& base, Index i, Index j,
                                           const SamplerConfig& cfg) {
    cfg.validate();
    return sample_running_minimum(PathSampler(base, cfg.k_neighbors), i, j, cfg);
}

double estimate_mmj_pair(const PathSampler& sampler, Index i, Index j, const SamplerConfig& cfg) {
    return sample_running_minimum(sampler, i, j, cfg).back();
}

double estimate_mmj_pair(const BaseDistanceMatrix& base, Index i, Index j, const SamplerConfig& cfg) {
    return sample_running_minimum(base, i, j, cfg).back();
}

Matrix estimate_all_pairs(const BaseDistanceMatrix& base, const SamplerConfig& cfg) {
    cfg.validate();
    return estimate_with(PathSampler(base, cfg.k_neighbors), base.size(), cfg);
}

CopyRegion copy_region(const BaseDistanceMatrix& base, Index i, Index j, double delta) {
    if (i >= base.size() || j >= base.size()) throw std::out_of_range("copy_region: index out of range");
    // A chain of pair-to-pair copies may hold one side still, so the closure of
    // (i,j) is exactly the product of the two single-point reaches.
    return {reach_below(base, i, delta), reach_below(base, j, delta)};
}

MmjMatrix mmj_by_estimation_and_copy(const BaseDistanceMatrix& base, const SamplerConfig& cfg) {
    cfg.validate();
    const Index n = base.size();
    const PathSampler sampler(base, cfg.k_neighbors);
    Matrix est = estimate_with(sampler, n, cfg);
    if (!cfg.copy_enabled || n < 3) return MmjMatrix(std::move(est), false);

    // Pairs grouped by their estimate. For one threshold delta, the copy
    // regions are connected components of the graph of hops shorter than
    // delta, and those components are the same as the ones formed by the
    // spanning-forest edges lighter than delta. Sweeping thresholds upward
    // lets one union-find serve every group, and each (component, component)
    // block is filled at most once per threshold.
    struct PairEstimate {
        double delta;
        Index i;
        Index j;
    };
    std::vector<PairEstimate> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) pairs.push_back({est(i, j), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const PairEstimate& a, const PairEstimate& b) {
        if (a.delta != b.delta) return a.delta < b.delta;
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    auto forest = detail::dense_prim(n, [&](Index a, Index b) { return base(a, b); }, std::less<double>{});
    std::sort(forest.begin(), forest.end(), [](const TreeEdge& a, const TreeEdge& b) { return a.w < b.w; });

    std::vector<Index> root(n);
    std::iota(root.begin(), root.end(), Index{0});
    auto find = [&](Index v) {
        while (root[v] != v) {
            root[v] = root[root[v]];
            v = root[v];
        }
        return v;
    };

    Matrix out = est;
    std::vector<std::vector<Index>> members(n);
    std::set<std::pair<Index, Index>> done;
    Index next_edge = 0;
    for (Index g = 0; g < pairs.size();) {
        const double delta = pairs[g].delta;
        Index g_end = g;
        while (g_end < pairs.size() && pairs[g_end].delta == delta) ++g_end;

        while (next_edge < forest.size() && forest[next_edge].w < delta) {
            const Index a = find(forest[next_edge].u);
            const Index b = find(forest[next_edge].v);
            if (a != b) root[b] = a;
            ++next_edge;
        }
        for (auto& m : members) m.clear();
        for (Index v = 0; v < n; ++v) members[find(v)].push_back(v);

        done.clear();
        for (Index e = g; e < g_end; ++e) {
            Index a = find(pairs[e].i);
            Index b = find(pairs[e].j);
            if (a > b) std::swap(a, b);
            if (!done.emplace(a, b).second) continue;
            for (const Index p : members[a]) {
                for (const Index q : members[b]) {
                    if (p != q && delta < out(p, q)) {
                        out(p, q) = delta;
                        out(q, p) = delta;
                    }
                }
            }
        }
        g = g_end;
    }
    return MmjMatrix(std::move(out), false);
}

} // namespace mmj
