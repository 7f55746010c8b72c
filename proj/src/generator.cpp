#include "switchdex/generator.hpp"

#include <stdexcept>

namespace switchdex {

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t k, std::uint64_t m, std::uint64_t tag) {
    // Two mixing rounds keep the per-(k, m, tag) streams decorrelated.
    SplitMix64 h(seed ^ 0x6a09e667f3bcc909ULL);
    h.state += k * 0x9e3779b97f4a7c15ULL;
    h.next();
    h.state += m * 0xc2b2ae3d27d4eb4fULL;
    h.next();
    h.state += tag * 0x165667b19e3779f9ULL;
    return h.next();
}

namespace {

enum StreamTag : std::uint64_t { TagTransitions = 1, TagRewards = 2, TagStartup = 3, TagShutdown = 4 };

Eigen::VectorXd draw_costs(const CostModel& model, int n, int m, SplitMix64& rng) {
    Eigen::VectorXd v(n);
    switch (model.kind) {
        case CostModel::Kind::Constant:
            v.setConstant(model.value);
            break;
        case CostModel::Kind::Uniform01:
            for (int i = 0; i < n; ++i) v(i) = rng.uniform01();
            break;
        case CostModel::Kind::PerProjectConstant:
            if (m >= static_cast<int>(model.values.size()))
                throw std::invalid_argument("perProjectConstant cost model is missing a value for project " +
                                            std::to_string(m + 1));
            v.setConstant(model.values[m]);
            break;
    }
    return v;
}

}  // namespace

std::vector<ProjectSpec> generate_instance(const InstanceEnsembleConfig& cfg, int k) {
    if (cfg.count < 1 || cfg.projects < 1 || cfg.states < 1)
        throw std::invalid_argument("ensemble config requires count >= 1, M >= 1, n >= 1");
    if (k < 0 || k >= cfg.count) throw std::invalid_argument("instance number out of range");

    const int n = cfg.states;
    std::vector<ProjectSpec> specs;
    specs.reserve(cfg.projects);
    for (int m = 0; m < cfg.projects; ++m) {
        ProjectSpec spec;
        spec.beta = cfg.beta;

        SplitMix64 pRng(derive_stream(cfg.seed, k, m, TagTransitions));
        spec.P.resize(n, n);
        for (int i = 0; i < n; ++i) {
            double rowSum = 0.0;
            for (int j = 0; j < n; ++j) {
                spec.P(i, j) = pRng.uniform01();
                rowSum += spec.P(i, j);
            }
            if (rowSum <= 0.0) {
                spec.P.row(i).setConstant(1.0 / n);
            } else {
                spec.P.row(i) /= rowSum;
            }
        }

        SplitMix64 rRng(derive_stream(cfg.seed, k, m, TagRewards));
        spec.R.resize(n);
        for (int i = 0; i < n; ++i) spec.R(i) = rRng.uniform01();

        SplitMix64 cRng(derive_stream(cfg.seed, k, m, TagStartup));
        spec.c = draw_costs(cfg.startup, n, m, cRng);
        SplitMix64 dRng(derive_stream(cfg.seed, k, m, TagShutdown));
        spec.d = draw_costs(cfg.shutdown, n, m, dRng);

        specs.push_back(std::move(spec));
    }
    return specs;
}

}  // namespace switchdex
