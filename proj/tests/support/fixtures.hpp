#pragma once

// Shared fixtures and independent oracles for the test suites.

#include "mmj/base_metrics.hpp"
#include "mmj/widest_path.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace mmj::testing {

// Four points a,b,c,d with the pairwise distances of the worked example.
inline constexpr Index A = 0, B = 1, C = 2, D = 3;

inline BaseDistanceMatrix fixture_f1() {
    Matrix m = Matrix::square(4);
    auto set = [&](Index i, Index j, double v) { m(i, j) = m(j, i) = v; };
    set(A, B, 19);
    set(A, C, 28);
    set(A, D, 11);
    set(B, C, 12);
    set(B, D, 10);
    set(C, D, 17);
    return BaseDistanceMatrix(std::move(m));
}

inline PointSet line_points(std::span<const double> xs) {
    Matrix m(xs.size(), 1);
    Index i = 0;
    for (const double x : xs) m(i++, 0) = x;
    return PointSet(std::move(m));
}

inline PointSet line_points(std::initializer_list<double> xs) {
    return line_points(std::span<const double>(xs.begin(), xs.size()));
}

// Symmetric random base matrix with entries uniform in (0,1).
inline BaseDistanceMatrix random_symmetric(Index n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(std::nextafter(0.0, 1.0), 1.0);
    Matrix m = Matrix::square(n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    return BaseDistanceMatrix(std::move(m));
}

// Symmetric matrix drawn from a small set of values so that ties are common.
inline BaseDistanceMatrix random_tied(Index n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> u(1, 3);
    Matrix m = Matrix::square(n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    return BaseDistanceMatrix(std::move(m));
}

inline BaseDistanceMatrix random_directed(Index n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(std::nextafter(0.0, 1.0), 1.0);
    Matrix m = Matrix::square(n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (i != j) m(i, j) = u(rng);
    return BaseDistanceMatrix(std::move(m), true);
}

// Random capacity graph: a random spanning path keeps it connected (for the
// undirected case), other edges appear with probability 1/2.
inline CapacityGraph random_capacity_graph(Index n, bool directed, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> cap(1, 9);
    std::bernoulli_distribution present(0.5);
    CapacityGraph g(n, directed);
    std::vector<Index> order(n);
    for (Index i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (Index s = 1; s < n; ++s) g.set_capacity(order[s - 1], order[s], cap(rng));
    for (Index u = 0; u < n; ++u)
        for (Index v = directed ? 0 : u + 1; v < n; ++v)
            if (u != v && g.capacity(u, v) == 0.0 && present(rng)) g.set_capacity(u, v, cap(rng));
    return g;
}

namespace detail {
inline void widest_dfs(const CapacityGraph& g, Index v, double bottleneck, std::vector<char>& on_path,
                       std::vector<double>& best) {
    best[v] = std::max(best[v], bottleneck);
    for (Index w = 0; w < g.size(); ++w) {
        if (on_path[w]) continue;
        on_path[w] = 1;
        widest_dfs(g, w, std::min(bottleneck, g.capacity(v, w)), on_path, best);
        on_path[w] = 0;
    }
}
} // namespace detail

// Enumerates all simple paths and keeps the best minimum edge capacity.
inline Matrix widest_brute_force(const CapacityGraph& g) {
    const Index n = g.size();
    Matrix out = Matrix::square(n);
    for (Index s = 0; s < n; ++s) {
        std::vector<double> best(n, 0.0);
        std::vector<char> on_path(n, 0);
        on_path[s] = 1;
        detail::widest_dfs(g, s, std::numeric_limits<double>::infinity(), on_path, best);
        for (Index t = 0; t < n; ++t) out(s, t) = best[t];
    }
    return out;
}

} // namespace mmj::testing
