#include "mmj/mmj_mst.hpp"

#include "tree_fill.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mmj {

SpanningTree::SpanningTree(Index n, std::vector<TreeEdge> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n) {
    if (n_ > 0 && edges_.size() != n_ - 1)
        throw std::invalid_argument("SpanningTree: expected " + std::to_string(n_ - 1) + " edges, got " +
                                    std::to_string(edges_.size()));
    for (const auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_ || e.u == e.v) throw std::invalid_argument("SpanningTree: invalid edge");
        adjacency_[e.u].emplace_back(e.v, e.w);
        adjacency_[e.v].emplace_back(e.u, e.w);
    }
}

double SpanningTree::total_weight() const {
    return std::accumulate(edges_.begin(), edges_.end(), 0.0,
                           [](double acc, const TreeEdge& e) { return acc + e.w; });
}

SpanningTree build_mst(const BaseDistanceMatrix& base) {
    if (base.directed()) throw std::invalid_argument("build_mst: requires an undirected base matrix");
    auto edges = detail::dense_prim(base.size(), [&](Index a, Index b) { return base(a, b); }, std::less<double>{});
    return SpanningTree(base.size(), std::move(edges));
}

MmjMatrix mmj_by_mst(const BaseDistanceMatrix& base, FillStats* stats) {
    const SpanningTree tree = build_mst(base);
    Matrix out = Matrix::square(base.size());
    const std::size_t writes = detail::fill_from_tree(base.size(), tree.edges(), std::less<double>{}, out);
    if (stats) stats->cell_writes = writes;
    return MmjMatrix(std::move(out), false);
}

double mmj_pair_via_mst(const SpanningTree& tree, Index i, Index j) {
    const Index n = tree.size();
    if (i >= n || j >= n) throw std::out_of_range("mmj_pair_via_mst: index out of range");
    if (i == j) return 0.0;

    // Depth-first walk from i tracking the largest edge seen so far.
    std::vector<char> seen(n, 0);
    std::vector<std::pair<Index, double>> stack{{i, 0.0}};
    seen[i] = 1;
    while (!stack.empty()) {
        const auto [v, worst] = stack.back();
        stack.pop_back();
        if (v == j) return worst;
        for (const auto& [w, weight] : tree.neighbors(v)) {
            if (seen[w]) continue;
            seen[w] = 1;
            stack.emplace_back(w, std::max(worst, weight));
        }
    }
    throw std::logic_error("mmj_pair_via_mst: tree is not connected");
}

} // namespace mmj
