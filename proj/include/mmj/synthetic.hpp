#pragma once

#include "mmj/base_metrics.hpp"

#include <cstdint>
#include <vector>

namespace mmj::synthetic {

struct LabeledPoints {
    PointSet points;
    std::vector<int> labels;
};

/// Two interleaved half circles (evenly spaced angles plus Gaussian noise);
/// `gap` pushes the moons apart vertically.
LabeledPoints two_moons(Index n, double noise, double gap, std::uint64_t seed);

/// Two concentric circles of radii r_inner and r_outer, n/2 points each at random angles.
LabeledPoints concentric_rings(Index n, double r_inner, double r_outer, double noise, std::uint64_t seed);

/// Isotropic Gaussian blobs around fixed centers, n split evenly.
LabeledPoints gaussian_blobs(Index n, const std::vector<std::vector<double>>& centers, double stddev,
                             std::uint64_t seed);

/// n points uniform in [0,1)^dim.
PointSet uniform_points(Index n, Index dim, std::uint64_t seed);

} // namespace mmj::synthetic
