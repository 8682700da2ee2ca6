#pragma once

#include "mmj/matrix.hpp"

#include <limits>

namespace mmj {

inline constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();

/// Capacities of a (di)graph. Absent edges carry capacity 0 and every node
/// has infinite capacity to itself.
class CapacityGraph {
public:
    CapacityGraph() = default;
    CapacityGraph(Index n, bool directed);

    /// Validates: infinite diagonal, non-negative off-diagonal entries, and
    /// symmetry when undirected. A zero diagonal is promoted to infinity.
    static CapacityGraph from_matrix(Matrix cap, bool directed);

    /// Sets cap(u,v) (and cap(v,u) when undirected).
    void set_capacity(Index u, Index v, double capacity);

    Index size() const noexcept { return cap_.rows(); }
    bool directed() const noexcept { return directed_; }
    double capacity(Index u, Index v) const noexcept { return cap_(u, v); }
    const Matrix& matrix() const noexcept { return cap_; }

private:
    Matrix cap_;
    bool directed_ = false;
};

/// Widest-path value for every ordered pair: infinity on the diagonal,
/// 0 for unreachable pairs.
struct CapacityMatrix {
    Matrix values;
    bool directed = false;
};

/// Recursion engine with min and max swapped; handles directed and undirected graphs.
CapacityMatrix widest_path_matrix(const CapacityGraph& g);

/// Maximum spanning tree variant; undirected graphs only.
CapacityMatrix widest_path_by_max_spanning_tree(const CapacityGraph& g);

} // namespace mmj
