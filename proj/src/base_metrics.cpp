#include "mmj/base_metrics.hpp"
#include "mmj/parallel.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>
#include <string>

namespace mmj {

PointSet::PointSet(Matrix coords) : coords_(std::move(coords)) {
    if (coords_.rows() == 0) throw std::invalid_argument("PointSet: at least one point is required");
    if (coords_.cols() == 0) throw std::invalid_argument("PointSet: dimension must be at least 1");
    for (const double v : coords_.data()) {
        if (!std::isfinite(v)) throw std::invalid_argument("PointSet: coordinates must be finite");
    }
}

PointSet PointSet::subset(std::span<const Index> indices) const {
    Matrix out(indices.size(), dim());
    for (Index r = 0; r < indices.size(); ++r) {
        const auto src = point(indices[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return PointSet(std::move(out));
}

MetricKind MetricKind::minkowski(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("minkowski: p must be finite and positive");
    return {Type::minkowski, p};
}

MetricKind MetricKind::parse(std::string_view text) {
    if (text == "euclidean") return euclidean();
    if (text == "manhattan") return manhattan();
    if (text == "chebyshev") return chebyshev();
    if (text == "precomputed") return precomputed();
    constexpr std::string_view prefix = "minkowski:";
    if (text.starts_with(prefix)) {
        const auto arg = text.substr(prefix.size());
        double p = 0.0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
        if (ec != std::errc() || ptr != arg.data() + arg.size())
            throw std::invalid_argument("minkowski: cannot parse exponent '" + std::string(arg) + "'");
        return minkowski(p);
    }
    throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

std::string MetricKind::name() const {
    switch (type) {
    case Type::euclidean: return "euclidean";
    case Type::manhattan: return "manhattan";
    case Type::chebyshev: return "chebyshev";
    case Type::precomputed: return "precomputed";
    case Type::minkowski: {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, p);
        return "minkowski:" + std::string(buf, res.ptr);
    }
    }
    return "unknown";
}

BaseDistanceMatrix::BaseDistanceMatrix(Matrix values, bool directed)
    : values_(std::move(values)), directed_(directed) {
    if (!values_.is_square()) throw std::invalid_argument("BaseDistanceMatrix: matrix must be square");
    if (values_.rows() == 0) throw std::invalid_argument("BaseDistanceMatrix: empty matrix");
    const Index n = values_.rows();
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double v = values_(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("BaseDistanceMatrix: entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") must be finite and non-negative");
            if (i == j && v != 0.0)
                throw std::invalid_argument("BaseDistanceMatrix: diagonal entry " + std::to_string(i) +
                                            " must be 0");
            if (!directed_ && values_(j, i) != v)
                throw std::invalid_argument("BaseDistanceMatrix: undirected matrix is not symmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            if (i != j && v == 0.0) positive_ = false;
        }
    }
}

BaseDistanceMatrix BaseDistanceMatrix::submatrix(std::span<const Index> indices) const {
    Matrix out = Matrix::square(indices.size());
    for (Index a = 0; a < indices.size(); ++a)
        for (Index b = 0; b < indices.size(); ++b) out(a, b) = values_(indices[a], indices[b]);
    return BaseDistanceMatrix(std::move(out), directed_);
}

double base_distance(std::span<const double> p, std::span<const double> q, const MetricKind& kind) {
    if (p.size() != q.size())
        throw std::invalid_argument("base_distance: dimension mismatch (" + std::to_string(p.size()) + " vs " +
                                    std::to_string(q.size()) + ")");
    double acc = 0.0;
    for (Index d = 0; d < p.size(); ++d) {
        if (!std::isfinite(p[d]) || !std::isfinite(q[d]))
            throw std::invalid_argument("base_distance: non-finite coordinate");
        const double diff = std::abs(p[d] - q[d]);
        switch (kind.type) {
        case MetricKind::Type::euclidean: acc += diff * diff; break;
        case MetricKind::Type::manhattan: acc += diff; break;
        case MetricKind::Type::chebyshev: acc = std::max(acc, diff); break;
        case MetricKind::Type::minkowski: acc += std::pow(diff, kind.p); break;
        case MetricKind::Type::precomputed:
            throw std::invalid_argument("base_distance: precomputed metric has no coordinate form");
        }
    }
    switch (kind.type) {
    case MetricKind::Type::euclidean: return std::sqrt(acc);
    case MetricKind::Type::minkowski: return std::pow(acc, 1.0 / kind.p);
    default: return acc;
    }
}

BaseDistanceMatrix pairwise_base_matrix(const PointSet& points, const MetricKind& kind) {
    const Index n = points.size();
    Matrix out = Matrix::square(n);
    parallel_for(n, [&](Index i) {
        for (Index j = i + 1; j < n; ++j) out(i, j) = base_distance(points.point(i), points.point(j), kind);
    });
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) out(j, i) = out(i, j);
    return BaseDistanceMatrix(std::move(out), false);
}

std::vector<double> distances_to(std::span<const double> p, const PointSet& points, const MetricKind& kind) {
    std::vector<double> out(points.size());
    for (Index t = 0; t < points.size(); ++t) out[t] = base_distance(p, points.point(t), kind);
    return out;
}

} // namespace mmj
