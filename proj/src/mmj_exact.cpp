#include "mmj/mmj_exact.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cap(const BaseDistanceMatrix& base, Index cap) {
    if (base.size() > cap)
        throw std::length_error("brute force: N = " + std::to_string(base.size()) + " exceeds the cap of " +
                                std::to_string(cap));
}

// Visits every simple path that starts at the source and currently ends at v.
void enumerate_from(const BaseDistanceMatrix& base, Index v, double current_max, std::vector<char>& on_path,
                    std::span<double> best) {
    best[v] = std::min(best[v], current_max);
    for (Index w = 0; w < base.size(); ++w) {
        if (on_path[w]) continue;
        on_path[w] = 1;
        enumerate_from(base, w, std::max(current_max, base(v, w)), on_path, best);
        on_path[w] = 0;
    }
}

void collect_paths(const BaseDistanceMatrix& base, Index v, Index to, std::vector<Index>& path,
                   std::vector<char>& on_path, std::vector<std::vector<Index>>& out) {
    if (v == to) {
        out.push_back(path);
        return;
    }
    for (Index w = 0; w < base.size(); ++w) {
        if (on_path[w]) continue;
        on_path[w] = 1;
        path.push_back(w);
        collect_paths(base, w, to, path, on_path, out);
        path.pop_back();
        on_path[w] = 0;
    }
}

void require_undirected(const MmjMatrix& m, const char* where) {
    if (m.directed()) throw std::invalid_argument(std::string(where) + ": context must be undirected");
}

// row[r] = min_t max(b[t], M(r,t)); M symmetric so row r is read contiguously.
double minimax_through_context(const Matrix& m, std::span<const double> b, Index r, Index n) {
    const auto mr = m.row(r);
    double best = kInf;
    for (Index t = 0; t < n; ++t) best = std::min(best, std::max(b[t], mr[t]));
    return best;
}

} // namespace

MmjMatrix mmj_brute_force(const BaseDistanceMatrix& base, Index cap) {
    check_cap(base, cap);
    const Index n = base.size();
    Matrix out = Matrix::square(n, kInf);
    std::vector<char> on_path(n, 0);
    for (Index s = 0; s < n; ++s) {
        on_path[s] = 1;
        enumerate_from(base, s, 0.0, on_path, out.row(s));
        on_path[s] = 0;
    }
    return MmjMatrix(std::move(out), base.directed());
}

std::vector<std::vector<Index>> simple_paths(const BaseDistanceMatrix& base, Index from, Index to, Index cap) {
    check_cap(base, cap);
    if (from >= base.size() || to >= base.size()) throw std::out_of_range("simple_paths: index out of range");
    std::vector<std::vector<Index>> out;
    std::vector<Index> path{from};
    std::vector<char> on_path(base.size(), 0);
    on_path[from] = 1;
    collect_paths(base, from, to, path, on_path, out);
    return out;
}

double path_max_jump(const BaseDistanceMatrix& base, std::span<const Index> path) {
    double jump = 0.0;
    for (Index s = 1; s < path.size(); ++s) {
        if (path[s - 1] >= base.size() || path[s] >= base.size())
            throw std::out_of_range("path_max_jump: index out of range");
        jump = std::max(jump, base(path[s - 1], path[s]));
    }
    return jump;
}

MmjRow extend_row(const MmjMatrix& current, std::span<const double> new_point_base) {
    require_undirected(current, "extend_row");
    const Index n = current.size();
    if (new_point_base.size() != n)
        throw std::invalid_argument("extend_row: expected " + std::to_string(n) + " base distances, got " +
                                    std::to_string(new_point_base.size()));
    for (const double d : new_point_base)
        if (!(d >= 0.0)) throw std::invalid_argument("extend_row: base distances must be non-negative");

    MmjRow row{n, std::vector<double>(n + 1, 0.0)};
    for (Index r = 0; r < n; ++r) row.values[r] = minimax_through_context(current.values(), new_point_base, r, n);
    return row;
}

MmjMatrix update_pairs(const MmjMatrix& current, const MmjRow& new_row) {
    require_undirected(current, "update_pairs");
    const Index n = current.size();
    if (new_row.values.size() != n + 1 || new_row.source_index != n)
        throw std::invalid_argument("update_pairs: row does not extend a context of size " + std::to_string(n));

    Matrix out = Matrix::square(n + 1);
    const auto& v = new_row.values;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) out(i, j) = std::min(current(i, j), std::max(v[i], v[j]));
        out(i, n) = v[i];
        out(n, i) = v[i];
    }
    return MmjMatrix(std::move(out), false);
}

MmjMatrix mmj_by_recursion(const BaseDistanceMatrix& base) {
    if (base.directed()) throw std::invalid_argument("mmj_by_recursion: use mmj_by_recursion_directed for digraphs");
    const Index n_total = base.size();
    Matrix m = Matrix::square(n_total);
    if (n_total < 2) return MmjMatrix(std::move(m), false);
    std::vector<double> row(n_total);
    std::vector<double> next(n_total);

    // n = 1 is the two-point seed: row[0] = d(1, 0).
    row[0] = base(1, 0);
    for (Index n = 1; n < n_total; ++n) {
        const bool more = n + 1 < n_total;
        const auto b_next = more ? base.row(n + 1) : base.row(n);
        // One pass per step: once row i holds the updated pairs and its new
        // column n, it is final for this step, so the next point's value for
        // i is taken while the row is still in cache. The full square is
        // swept to keep row access contiguous.
        for (Index i = 0; i < n; ++i) {
            auto mi = m.row(i);
            const double ri = row[i];
            for (Index j = 0; j < n; ++j) mi[j] = std::min(mi[j], std::max(ri, row[j]));
            mi[n] = ri;
            if (more) {
                double best = std::numeric_limits<double>::infinity();
                for (Index t = 0; t <= n; ++t) best = std::min(best, std::max(b_next[t], mi[t]));
                next[i] = best;
            }
        }
        auto mn = m.row(n);
        for (Index r = 0; r < n; ++r) mn[r] = row[r];
        if (more) {
            double best = b_next[n];
            for (Index t = 0; t < n; ++t) best = std::min(best, std::max(b_next[t], mn[t]));
            next[n] = best;
            std::swap(row, next);
        }
    }
    return MmjMatrix(std::move(m), false);
}

MmjRow query_external_point(const MmjMatrix& context, std::span<const double> base_to_context) {
    if (base_to_context.size() != context.size())
        throw std::invalid_argument("query_external_point: expected " + std::to_string(context.size()) +
                                    " base distances, got " + std::to_string(base_to_context.size()));
    return extend_row(context, base_to_context);
}

std::vector<double> query_external_point_at(const MmjMatrix& context, std::span<const double> base_to_context,
                                            std::span<const Index> targets) {
    require_undirected(context, "query_external_point_at");
    const Index n = context.size();
    if (base_to_context.size() != n)
        throw std::invalid_argument("query_external_point_at: expected " + std::to_string(n) +
                                    " base distances, got " + std::to_string(base_to_context.size()));
    std::vector<double> out;
    out.reserve(targets.size());
    for (const Index r : targets) {
        if (r >= n) throw std::out_of_range("query_external_point_at: target out of range");
        out.push_back(minimax_through_context(context.values(), base_to_context, r, n));
    }
    return out;
}

MmjMatrix mmj_by_recursion_directed(const BaseDistanceMatrix& base) {
    const Index n_total = base.size();
    Matrix m = Matrix::square(n_total);
    std::vector<double> forward(n_total);  // MMJ(new -> r)
    std::vector<double> backward(n_total); // MMJ(r -> new)
    std::vector<double> into_new(n_total);

    for (Index n = 1; n < n_total; ++n) {
        // forward[r] = min_t max(d(new, t), MMJ(t, r)), accumulated row by row.
        std::fill(forward.begin(), forward.begin() + static_cast<std::ptrdiff_t>(n), kInf);
        for (Index t = 0; t < n; ++t) {
            const double dt = base(n, t);
            const auto mt = m.row(t);
            for (Index r = 0; r < n; ++r) forward[r] = std::min(forward[r], std::max(dt, mt[r]));
        }
        // backward[r] = min_t max(MMJ(r, t), d(t, new)).
        for (Index t = 0; t < n; ++t) into_new[t] = base(t, n);
        for (Index r = 0; r < n; ++r) {
            const auto mr = m.row(r);
            double best = kInf;
            for (Index t = 0; t < n; ++t) best = std::min(best, std::max(mr[t], into_new[t]));
            backward[r] = best;
        }
        for (Index i = 0; i < n; ++i) {
            auto mi = m.row(i);
            const double bi = backward[i];
            for (Index j = 0; j < n; ++j) mi[j] = std::min(mi[j], std::max(bi, forward[j]));
        }
        for (Index r = 0; r < n; ++r) {
            m(n, r) = forward[r];
            m(r, n) = backward[r];
        }
    }
    return MmjMatrix(std::move(m), true);
}

} // namespace mmj
