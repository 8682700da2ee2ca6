#include "mmj/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mmj::synthetic {

LabeledPoints two_moons(Index n, double noise, double gap, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("two_moons: need at least two points");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, noise);
    const Index n_outer = n / 2;
    const Index n_inner = n - n_outer;
    Matrix coords(n, 2);
    std::vector<int> labels(n);
    auto angle = [](Index i, Index count) {
        return count > 1 ? std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
    };
    for (Index i = 0; i < n_outer; ++i) {
        const double t = angle(i, n_outer);
        coords(i, 0) = std::cos(t) + jitter(rng);
        coords(i, 1) = std::sin(t) + gap / 2.0 + jitter(rng);
        labels[i] = 0;
    }
    for (Index i = 0; i < n_inner; ++i) {
        const double t = angle(i, n_inner);
        coords(n_outer + i, 0) = 1.0 - std::cos(t) + jitter(rng);
        coords(n_outer + i, 1) = 0.5 - std::sin(t) - gap / 2.0 + jitter(rng);
        labels[n_outer + i] = 1;
    }
    return {PointSet(std::move(coords)), std::move(labels)};
}

LabeledPoints concentric_rings(Index n, double r_inner, double r_outer, double noise, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("concentric_rings: need at least two points");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, noise);
    std::uniform_real_distribution<double> theta(0.0, 2.0 * std::numbers::pi);
    Matrix coords(n, 2);
    std::vector<int> labels(n);
    for (Index i = 0; i < n; ++i) {
        const bool inner = i < n / 2;
        const double r = inner ? r_inner : r_outer;
        const double t = theta(rng);
        coords(i, 0) = r * std::cos(t) + jitter(rng);
        coords(i, 1) = r * std::sin(t) + jitter(rng);
        labels[i] = inner ? 0 : 1;
    }
    return {PointSet(std::move(coords)), std::move(labels)};
}

LabeledPoints gaussian_blobs(Index n, const std::vector<std::vector<double>>& centers, double stddev,
                             std::uint64_t seed) {
    if (centers.empty() || n < centers.size()) throw std::invalid_argument("gaussian_blobs: invalid sizes");
    const Index dim = centers.front().size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, stddev);
    Matrix coords(n, dim);
    std::vector<int> labels(n);
    for (Index i = 0; i < n; ++i) {
        const Index c = i * centers.size() / n;
        if (centers[c].size() != dim) throw std::invalid_argument("gaussian_blobs: center dimension mismatch");
        for (Index d = 0; d < dim; ++d) coords(i, d) = centers[c][d] + jitter(rng);
        labels[i] = static_cast<int>(c);
    }
    return {PointSet(std::move(coords)), std::move(labels)};
}

PointSet uniform_points(Index n, Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix coords(n, dim);
    for (Index i = 0; i < n; ++i)
        for (Index d = 0; d < dim; ++d) coords(i, d) = u(rng);
    return PointSet(std::move(coords));
}

} // namespace mmj::synthetic
