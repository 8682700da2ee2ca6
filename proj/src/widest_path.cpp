#include "mmj/widest_path.hpp"

#include "tree_fill.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmj {

CapacityGraph::CapacityGraph(Index n, bool directed) : cap_(Matrix::square(n)), directed_(directed) {
    for (Index i = 0; i < n; ++i) cap_(i, i) = kInfiniteCapacity;
}

CapacityGraph CapacityGraph::from_matrix(Matrix cap, bool directed) {
    if (!cap.is_square()) throw std::invalid_argument("CapacityGraph: matrix must be square");
    const Index n = cap.rows();
    for (Index i = 0; i < n; ++i) {
        if (cap(i, i) == 0.0) cap(i, i) = kInfiniteCapacity;
        if (cap(i, i) != kInfiniteCapacity)
            throw std::invalid_argument("CapacityGraph: self capacity of node " + std::to_string(i) +
                                        " must be infinite");
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            if (std::isnan(cap(i, j)) || cap(i, j) < 0.0)
                throw std::invalid_argument("CapacityGraph: capacities must be non-negative");
            if (!directed && cap(i, j) != cap(j, i))
                throw std::invalid_argument("CapacityGraph: undirected capacities must be symmetric");
        }
    }
    CapacityGraph g;
    g.cap_ = std::move(cap);
    g.directed_ = directed;
    return g;
}

void CapacityGraph::set_capacity(Index u, Index v, double capacity) {
    if (u >= size() || v >= size()) throw std::out_of_range("CapacityGraph: node out of range");
    if (u == v) throw std::invalid_argument("CapacityGraph: self capacity is fixed at infinity");
    if (std::isnan(capacity) || capacity < 0.0) throw std::invalid_argument("CapacityGraph: negative capacity");
    cap_(u, v) = capacity;
    if (!directed_) cap_(v, u) = capacity;
}

CapacityMatrix widest_path_matrix(const CapacityGraph& g) {
    // The directed recursion with min and max exchanged and infinity as the
    // neutral self value. For symmetric input it reduces to the undirected form.
    const Index n_total = g.size();
    Matrix m = Matrix::square(n_total, kInfiniteCapacity);
    std::vector<double> forward(n_total);
    std::vector<double> backward(n_total);
    std::vector<double> into_new(n_total);

    for (Index n = 1; n < n_total; ++n) {
        std::fill(forward.begin(), forward.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
        for (Index t = 0; t < n; ++t) {
            const double ct = g.capacity(n, t);
            const auto mt = m.row(t);
            for (Index r = 0; r < n; ++r) forward[r] = std::max(forward[r], std::min(ct, mt[r]));
        }
        for (Index t = 0; t < n; ++t) into_new[t] = g.capacity(t, n);
        for (Index r = 0; r < n; ++r) {
            const auto mr = m.row(r);
            double best = 0.0;
            for (Index t = 0; t < n; ++t) best = std::max(best, std::min(mr[t], into_new[t]));
            backward[r] = best;
        }
        for (Index i = 0; i < n; ++i) {
            auto mi = m.row(i);
            const double bi = backward[i];
            for (Index j = 0; j < n; ++j) mi[j] = std::max(mi[j], std::min(bi, forward[j]));
        }
        for (Index r = 0; r < n; ++r) {
            m(n, r) = forward[r];
            m(r, n) = backward[r];
        }
    }
    return {std::move(m), g.directed()};
}

CapacityMatrix widest_path_by_max_spanning_tree(const CapacityGraph& g) {
    if (g.directed()) throw std::invalid_argument("widest_path_by_max_spanning_tree: requires an undirected graph");
    const Index n = g.size();
    // Non-edges have capacity 0, so a disconnected graph still yields a
    // spanning tree whose 0-weight edges mark unreachable pairs.
    auto edges = detail::dense_prim(n, [&](Index a, Index b) { return g.capacity(a, b); }, std::greater<double>{});
    Matrix out = Matrix::square(n, kInfiniteCapacity);
    detail::fill_from_tree(n, std::move(edges), std::greater<double>{}, out);
    return {std::move(out), false};
}

} // namespace mmj
