#pragma once

#include "mmj/mmj_exact.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mmj {

struct SamplerConfig {
    Index k_neighbors = 3;
    Index num_paths = 10;
    std::uint64_t seed = 0;
    bool copy_enabled = true;

    void validate() const;
};

/// Stochastic greedy walker. Keeps every point's neighbours sorted by
/// (distance, index) so repeated samples avoid re-sorting.
class PathSampler {
public:
    PathSampler(const BaseDistanceMatrix& base, Index k_neighbors);

    /// Max jump of one loop-free path start -> end. Each step picks uniformly
    /// among the k nearest unvisited points, except that it steps straight to
    /// `end` when `end` is the nearest one.
    double sample(Index start, Index end, std::mt19937_64& rng) const;

    Index size() const noexcept { return order_.size(); }
    Index k_neighbors() const noexcept { return k_; }

private:
    const BaseDistanceMatrix* base_;
    Index k_;
    std::vector<std::vector<Index>> order_;
};

double sample_path_max_jump(const BaseDistanceMatrix& base, Index start, Index end, const SamplerConfig& cfg,
                            std::mt19937_64& rng);

/// Running minimum of the sampled max jumps for pair (i,j); entry s is the
/// estimate after s+1 paths. The stream is seeded from (cfg.seed, min(i,j), max(i,j)).
std::vector<double> sample_running_minimum(const BaseDistanceMatrix& base, Index i, Index j,
                                           const SamplerConfig& cfg);
/// Same, reusing a prebuilt sampler (its k overrides cfg.k_neighbors).
std::vector<double> sample_running_minimum(const PathSampler& sampler, Index i, Index j, const SamplerConfig& cfg);

/// Upper bound on MMJ(i,j): the minimum over cfg.num_paths sampled paths.
double estimate_mmj_pair(const BaseDistanceMatrix& base, Index i, Index j, const SamplerConfig& cfg);
double estimate_mmj_pair(const PathSampler& sampler, Index i, Index j, const SamplerConfig& cfg);

/// Independent per-pair estimates (no copying). Symmetric, zero diagonal.
Matrix estimate_all_pairs(const BaseDistanceMatrix& base, const SamplerConfig& cfg);

/// Points reachable from i (resp. j) by hops strictly shorter than delta.
/// Every pair in near_i x near_j inherits the value delta from (i,j).
struct CopyRegion {
    std::vector<Index> near_i;
    std::vector<Index> near_j;
};

CopyRegion copy_region(const BaseDistanceMatrix& base, Index i, Index j, double delta);

/// Approximate MMJ matrix: estimate each pair, then (if enabled) copy each
/// estimate over its copy region. Conflicts resolve to the minimum.
/// Every entry is an upper bound on the exact value.
MmjMatrix mmj_by_estimation_and_copy(const BaseDistanceMatrix& base, const SamplerConfig& cfg);

} // namespace mmj
