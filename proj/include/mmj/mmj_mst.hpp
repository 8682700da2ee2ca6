#pragma once

#include "mmj/mmj_exact.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace mmj {

struct TreeEdge {
    Index u = 0;
    Index v = 0;
    double w = 0.0;

    bool operator==(const TreeEdge&) const = default;
};

/// Spanning tree over N nodes, stored as an edge list plus adjacency for path queries.
class SpanningTree {
public:
    SpanningTree() = default;
    SpanningTree(Index n, std::vector<TreeEdge> edges);

    Index size() const noexcept { return n_; }
    const std::vector<TreeEdge>& edges() const noexcept { return edges_; }
    const std::vector<std::pair<Index, double>>& neighbors(Index v) const { return adjacency_[v]; }
    double total_weight() const;

private:
    Index n_ = 0;
    std::vector<TreeEdge> edges_;
    std::vector<std::vector<std::pair<Index, double>>> adjacency_;
};

/// Dense O(N^2) Prim. Ties prefer the edge with the smaller (min index, max index) pair.
SpanningTree build_mst(const BaseDistanceMatrix& base);

struct FillStats {
    std::size_t cell_writes = 0;
};

/// O(N^2) all-pairs MMJ from the minimum spanning tree. Every off-diagonal
/// cell is written exactly once; `stats` (optional) receives the write count.
MmjMatrix mmj_by_mst(const BaseDistanceMatrix& base, FillStats* stats = nullptr);

/// Largest edge on the tree path i -> j.
double mmj_pair_via_mst(const SpanningTree& tree, Index i, Index j);

} // namespace mmj
