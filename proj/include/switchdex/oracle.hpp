#pragma once

#include <string>
#include <vector>

#include "switchdex/project.hpp"

namespace switchdex {

/// Subset-enumeration ground truth for eq-style index values:
/// max over S containing i of (f_i^S - (1 - aPrev) c_i) / g_i^S.
/// Guarded to n <= 20.
double brute_force_index(const NormalizedProjectSpec& spec, int aPrev, int i);

/// Same maximum for every state in one subset sweep.
Eigen::VectorXd brute_force_index_all(const NormalizedProjectSpec& spec, int aPrev);

struct LemmaClauseResult {
    std::string clause;
    bool pass = false;
    double maxError = 0.0;
};

struct LemmaReport {
    std::vector<LemmaClauseResult> clauses;
    bool all_pass() const {
        for (const auto& c : clauses)
            if (!c.pass) return false;
        return true;
    }
};

/// Direct verification of the augmented-measure identities for one policy
/// S0 + S1 (S0 subset of S1, n <= 8). The augmented measures are computed
/// by fixed-point sweeps over the 2n states, independent of the solver
/// path, and every clause of the work/reward/productivity identities is
/// checked to 1e-9.
LemmaReport verify_measure_lemmas(const NormalizedProjectSpec& spec, const std::vector<int>& S0,
                                  const std::vector<int>& S1);

}  // namespace switchdex
