#pragma once

#include "mmj/matrix.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmj {

/// N points in D-dimensional space. Indices are 0-based and fixed at construction.
class PointSet {
public:
    PointSet() = default;
    /// Throws std::invalid_argument on an empty set, zero dimension, or non-finite coordinates.
    explicit PointSet(Matrix coords);

    Index size() const noexcept { return coords_.rows(); }
    Index dim() const noexcept { return coords_.cols(); }
    std::span<const double> point(Index i) const { return coords_.row(i); }
    const Matrix& coords() const noexcept { return coords_; }

    /// Subset in the given order.
    PointSet subset(std::span<const Index> indices) const;

private:
    Matrix coords_;
};

struct MetricKind {
    enum class Type { euclidean, manhattan, chebyshev, minkowski, precomputed };

    Type type = Type::euclidean;
    double p = 2.0; // minkowski exponent only

    static MetricKind euclidean() { return {Type::euclidean, 2.0}; }
    static MetricKind manhattan() { return {Type::manhattan, 1.0}; }
    static MetricKind chebyshev() { return {Type::chebyshev, 0.0}; }
    static MetricKind minkowski(double p);
    static MetricKind precomputed() { return {Type::precomputed, 0.0}; }

    /// "euclidean", "manhattan", "chebyshev", "precomputed", or "minkowski:<p>".
    static MetricKind parse(std::string_view text);
    std::string name() const;

    bool operator==(const MetricKind&) const = default;
};

/// Pairwise base distances d(i,j). Zero diagonal, non-negative finite entries,
/// symmetric unless directed.
class BaseDistanceMatrix {
public:
    BaseDistanceMatrix() = default;
    explicit BaseDistanceMatrix(Matrix values, bool directed = false);

    Index size() const noexcept { return values_.rows(); }
    double operator()(Index i, Index j) const noexcept { return values_(i, j); }
    std::span<const double> row(Index i) const noexcept { return values_.row(i); }
    const Matrix& values() const noexcept { return values_; }
    bool directed() const noexcept { return directed_; }

    /// False when two distinct indices are at distance 0 (duplicates or a
    /// precomputed graph with zero weights); positivity of MMJ then does not hold.
    bool positive_off_diagonal() const noexcept { return positive_; }

    /// Principal submatrix over `indices`, in that order.
    BaseDistanceMatrix submatrix(std::span<const Index> indices) const;

private:
    Matrix values_;
    bool directed_ = false;
    bool positive_ = true;
};

double base_distance(std::span<const double> p, std::span<const double> q, const MetricKind& kind);

BaseDistanceMatrix pairwise_base_matrix(const PointSet& points, const MetricKind& kind);

/// d(p, point t) for every t in `points`.
std::vector<double> distances_to(std::span<const double> p, const PointSet& points, const MetricKind& kind);

} // namespace mmj
