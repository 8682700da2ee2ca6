#pragma once

#include "mmj/base_metrics.hpp"

#include <span>
#include <vector>

namespace mmj {

/// Pairwise MMJ distances under the context of all N indexed points.
/// Every off-diagonal entry is a copy of some base distance.
class MmjMatrix {
public:
    MmjMatrix() = default;
    MmjMatrix(Matrix values, bool directed) : values_(std::move(values)), directed_(directed) {}

    Index size() const noexcept { return values_.rows(); }
    double operator()(Index i, Index j) const noexcept { return values_(i, j); }
    std::span<const double> row(Index i) const noexcept { return values_.row(i); }
    const Matrix& values() const noexcept { return values_; }
    bool directed() const noexcept { return directed_; }

    bool operator==(const MmjMatrix&) const = default;

private:
    Matrix values_;
    bool directed_ = false;
};

/// MMJ distances from one source to every point of a context.
/// For a point joining an n-point context the source occupies slot n, so
/// `values` has n+1 entries and values[source_index] == 0.
struct MmjRow {
    Index source_index = 0;
    std::vector<double> values;
};

inline constexpr Index kBruteForceCap = 10;

/// Reference implementation: enumerates every simple path for every ordered
/// pair. Throws std::length_error when N exceeds `cap`.
MmjMatrix mmj_brute_force(const BaseDistanceMatrix& base, Index cap = kBruteForceCap);

/// All loop-free paths from `from` to `to`, each listed as its sequence of indices.
std::vector<std::vector<Index>> simple_paths(const BaseDistanceMatrix& base, Index from, Index to,
                                             Index cap = kBruteForceCap);

/// Largest single jump along `path`; 0 for a path of fewer than two points.
double path_max_jump(const BaseDistanceMatrix& base, std::span<const Index> path);

/// Row of a point joining the context of `current`:
/// row[r] = min_t max(d(new, t), MMJ(t, r)).
MmjRow extend_row(const MmjMatrix& current, std::span<const double> new_point_base);

/// Matrix over the context grown by the point described by `new_row`.
MmjMatrix update_pairs(const MmjMatrix& current, const MmjRow& new_row);

/// O(N^3) incremental construction for undirected bases.
MmjMatrix mmj_by_recursion(const BaseDistanceMatrix& base);

/// MMJ from an external point p to every context point under context + p.
/// `context` is not modified.
MmjRow query_external_point(const MmjMatrix& context, std::span<const double> base_to_context);

/// Same as query_external_point, evaluated only at `targets`.
std::vector<double> query_external_point_at(const MmjMatrix& context, std::span<const double> base_to_context,
                                            std::span<const Index> targets);

/// Incremental construction for an asymmetric base (a digraph). Also accepts symmetric input.
MmjMatrix mmj_by_recursion_directed(const BaseDistanceMatrix& base);

} // namespace mmj
