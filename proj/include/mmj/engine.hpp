#pragma once

#include "mmj/mmj_sampling.hpp"

#include <string_view>

namespace mmj {

enum class Engine { brute, recursion, mst, sample };

Engine parse_engine(std::string_view name);
std::string_view to_string(Engine engine);

/// Dispatches to the chosen engine. Directed bases go through the directed
/// recursion (or the brute-force oracle); mst and sample reject them.
MmjMatrix compute_mmj(const BaseDistanceMatrix& base, Engine engine, const SamplerConfig& sampler = {});

} // namespace mmj
