#pragma once

// Shared by the MST engine and the widest-path maximum spanning tree.

#include "mmj/matrix.hpp"
#include "mmj/mmj_mst.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <numeric>
#include <utility>
#include <vector>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

namespace mmj::detail {

inline std::pair<Index, Index> edge_key(Index a, Index b) { return {std::min(a, b), std::max(a, b)}; }

/// Dense Prim over a complete graph. `better(a, b)` is the strict order that
/// makes a the preferred weight (less for a minimum tree, greater for a maximum tree).
template <class Weight, class Better>
std::vector<TreeEdge> dense_prim(Index n, Weight weight, Better better) {
    std::vector<TreeEdge> edges;
    if (n <= 1) return edges;
    edges.reserve(n - 1);

    std::vector<double> key(n);
    std::vector<Index> parent(n, 0);
    for (Index v = 1; v < n; ++v) key[v] = weight(0, v);

    // Vertices outside the tree, compacted by swap-removal.
    std::vector<Index> rest(n - 1);
    std::iota(rest.begin(), rest.end(), Index{1});

    auto ahead = [&](Index a, Index b) {
        if (better(key[a], key[b])) return true;
        if (better(key[b], key[a])) return false;
        return edge_key(parent[a], a) < edge_key(parent[b], b);
    };

    Index at = 0;
    for (Index i = 1; i < rest.size(); ++i)
        if (ahead(rest[i], rest[at])) at = i;

    while (!rest.empty()) {
        const Index pick = rest[at];
        rest[at] = rest.back();
        rest.pop_back();
        edges.push_back({std::min(parent[pick], pick), std::max(parent[pick], pick), key[pick]});
        // One pass relaxes keys through `pick` and finds the next vertex.
        at = 0;
        for (Index i = 0; i < rest.size(); ++i) {
            const Index v = rest[i];
            const double w = weight(pick, v);
            if (better(w, key[v]) || (!better(key[v], w) && edge_key(pick, v) < edge_key(parent[v], v))) {
                key[v] = w;
                parent[v] = pick;
            }
            if (i > 0 && ahead(v, rest[at])) at = i;
        }
    }
    return edges;
}

// Copies a finished row to memory that is usually not cached. Non-temporal
// stores skip the read-for-ownership that ordinary stores would trigger.
inline void stream_row(double* dst, const double* src, Index n) {
    Index j = 0;
#if defined(__SSE2__)
    if (reinterpret_cast<std::uintptr_t>(dst) % 16 != 0 && n > 0) {
        dst[0] = src[0];
        j = 1;
    }
    for (; j + 1 < n; j += 2) _mm_stream_pd(dst + j, _mm_loadu_pd(src + j));
#endif
    for (; j < n; ++j) dst[j] = src[j];
}

/// Fills every cross pair with the weight of the tree edge that joins their
/// components, processing edges from most to least preferred. Equivalent to
/// removing edges in the opposite order and filling the two subtrees.
/// The diagonal of `out` is left as the caller set it. Returns the number of
/// off-diagonal cell writes.
template <class Better>
std::size_t fill_from_tree(Index n, std::vector<TreeEdge> edges, Better better, Matrix& out) {
    if (n < 2) return 0;
    std::stable_sort(edges.begin(), edges.end(), [&](const TreeEdge& a, const TreeEdge& b) {
        if (better(a.w, b.w)) return true;
        if (better(b.w, a.w)) return false;
        return edge_key(a.u, a.v) < edge_key(b.u, b.v);
    });

    // Kruskal-style merges recorded as a dendrogram: leaves 0..n-1, merge
    // nodes n..2n-2. A merge of A and B via weight w assigns w to A x B.
    const Index nodes = 2 * n - 1;
    const Index none = nodes;
    std::vector<Index> parent(nodes, none), left(nodes, none), right(nodes, none), size(nodes, 1);
    std::vector<double> weight(nodes, 0.0);
    std::vector<Index> root(n), node_of(n);
    std::iota(root.begin(), root.end(), Index{0});
    std::iota(node_of.begin(), node_of.end(), Index{0});
    auto find = [&](Index v) {
        while (root[v] != v) {
            root[v] = root[root[v]];
            v = root[v];
        }
        return v;
    };
    Index next = n;
    for (const auto& e : edges) {
        const Index a = find(e.u);
        const Index b = find(e.v);
        if (a == b) continue;
        const Index na = node_of[a], nb = node_of[b];
        left[next] = na;
        right[next] = nb;
        parent[na] = parent[nb] = next;
        weight[next] = e.w;
        size[next] = size[na] + size[nb];
        root[b] = a;
        node_of[a] = next++;
    }
    if (next != nodes) throw std::invalid_argument("fill_from_tree: edges do not span all nodes");

    // In leaf order every dendrogram node covers a contiguous segment.
    std::vector<Index> start(nodes, 0), order;
    order.reserve(n);
    std::vector<Index> stack{nodes - 1};
    while (!stack.empty()) {
        const Index v = stack.back();
        stack.pop_back();
        if (v < n) {
            order.push_back(v);
            continue;
        }
        start[left[v]] = start[v];
        start[right[v]] = start[v] + size[left[v]];
        stack.push_back(right[v]);
        stack.push_back(left[v]);
    }

    // Each row is assembled in leaf order from its ancestors' sibling
    // segments, permuted back, and written once.
    std::vector<double> leafwise(n), row(n);
    std::size_t writes = 0;
    for (Index p = 0; p < n; ++p) {
        leafwise[start[p]] = out(p, p);
        for (Index c = p; parent[c] != none; c = parent[c]) {
            const Index m = parent[c];
            const Index sib = left[m] == c ? right[m] : left[m];
            std::fill_n(leafwise.begin() + static_cast<std::ptrdiff_t>(start[sib]), size[sib], weight[m]);
        }
        for (Index j = 0; j < n; ++j) row[order[j]] = leafwise[j];
        stream_row(out.row(p).data(), row.data(), n);
        writes += n - 1;
    }
#if defined(__SSE2__)
    _mm_sfence();
#endif
    return writes;
}

} // namespace mmj::detail
