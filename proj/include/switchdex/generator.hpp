#pragma once

#include <cstdint>
#include <vector>

#include "switchdex/project.hpp"

namespace switchdex {

/// Minimal 64-bit deterministic generator (splitmix64). Bitwise-portable:
/// doubles come from the top 53 bits, never from std distributions.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Order-independent stream id for (seed, instance, project, purpose).
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t k, std::uint64_t m, std::uint64_t tag);

struct CostModel {
    enum class Kind { Constant, Uniform01, PerProjectConstant };
    Kind kind = Kind::Constant;
    double value = 0.0;
    std::vector<double> values;  // per-project constants

    static CostModel constant(double v) { return {Kind::Constant, v, {}}; }
    static CostModel uniform01() { return {Kind::Uniform01, 0.0, {}}; }
    static CostModel per_project(std::vector<double> v) { return {Kind::PerProjectConstant, 0.0, std::move(v)}; }
};

struct InstanceEnsembleConfig {
    int projects = 1;
    int states = 1;
    std::uint64_t seed = 0;
    int count = 1;
    double beta = 0.9;
    CostModel startup = CostModel::constant(0.0);
    CostModel shutdown = CostModel::constant(0.0);
};

/// Instance k of the ensemble: deterministic in (seed, k). Transition rows
/// are row-normalized Uniform[0,1] draws, rewards Uniform[0,1], costs per
/// the configured models.
std::vector<ProjectSpec> generate_instance(const InstanceEnsembleConfig& cfg, int k);

}  // namespace switchdex
