#include "mmj/engine.hpp"
#include "mmj/mmj_mst.hpp"

#include <stdexcept>
#include <string>

namespace mmj {

Engine parse_engine(std::string_view name) {
    if (name == "brute") return Engine::brute;
    if (name == "recursion") return Engine::recursion;
    if (name == "mst") return Engine::mst;
    if (name == "sample") return Engine::sample;
    throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::string_view to_string(Engine engine) {
    switch (engine) {
    case Engine::brute: return "brute";
    case Engine::recursion: return "recursion";
    case Engine::mst: return "mst";
    case Engine::sample: return "sample";
    }
    return "unknown";
}

MmjMatrix compute_mmj(const BaseDistanceMatrix& base, Engine engine, const SamplerConfig& sampler) {
    switch (engine) {
    case Engine::brute: return mmj_brute_force(base);
    case Engine::recursion:
        return base.directed() ? mmj_by_recursion_directed(base) : mmj_by_recursion(base);
    case Engine::mst:
        if (base.directed()) throw std::invalid_argument("mst engine does not support directed input");
        return mmj_by_mst(base);
    case Engine::sample:
        if (base.directed()) throw std::invalid_argument("sample engine does not support directed input");
        return mmj_by_estimation_and_copy(base, sampler);
    }
    throw std::invalid_argument("unknown engine");
}

} // namespace mmj
