#pragma once

#include <vector>

#include "switchdex/project.hpp"

namespace switchdex {

enum class Stage1Mode { Reference, Fast };

/// Output of the first-stage continuation-index pass: the decreasing-index
/// state ordering, the index values along it, and the per-step marginal
/// tables (w^(k), nu^(k)) restricted to the growing active set, packed
/// triangularly (n(n+1)/2 pairs).
struct Stage1Output {
    int n = 0;
    double beta = 0.0;
    std::vector<int> order;        // i1^1..i1^n, 0-based state ids
    Eigen::VectorXd nuAlongOrder;  // nu*_{i1^k}, nonincreasing
    std::vector<double> wTri;      // w^(k)_j for j = order[0..k-1]
    std::vector<double> nuTri;     // nu^(k)_j, same layout
    long long opCount = 0;         // arithmetic-op instrumentation

    double wAt(int k1, int t) const { return wTri[static_cast<size_t>(k1) * (k1 - 1) / 2 + t]; }
    double nuAt(int k1, int t) const { return nuTri[static_cast<size_t>(k1) * (k1 - 1) / 2 + t]; }

    /// Continuation index indexed by state id.
    Eigen::VectorXd nu_by_state() const;
};

/// Adaptive-greedy continuation-index pass. Reference mode re-solves the
/// active-set system from scratch each step (O(n^4) total); Fast mode grows
/// a bordered inverse one row/column per step (O(n^3) total). Argmax ties
/// break toward the smallest state id.
Stage1Output compute_stage1(const NormalizedProjectSpec& spec, Stage1Mode mode = Stage1Mode::Fast);
Stage1Output compute_stage1(const ProjectSpec& spec, Stage1Mode mode = Stage1Mode::Fast);

/// Gittins index per state; equals the continuation index of the
/// normalized project.
Eigen::VectorXd gittins_index(const ProjectSpec& spec);
Eigen::VectorXd gittins_index(const NormalizedProjectSpec& spec);

}  // namespace switchdex
