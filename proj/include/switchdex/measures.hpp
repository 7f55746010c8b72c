#pragma once

#include <vector>

#include "switchdex/project.hpp"

namespace switchdex {

/// Work and reward measures g^S, f^S of the active-set policy S.
/// Entries for states outside S are zero.
struct WorkReward {
    Eigen::VectorXd g;
    Eigen::VectorXd f;
};

/// Solves (I_S - beta P_SS) g = 1 and (I_S - beta P_SS) f = R_S.
/// S may be empty (all-zero measures). Throws NumericalError if the
/// solve residual exceeds 1e-10 * ||rhs||.
WorkReward work_reward_on_set(const NormalizedProjectSpec& spec, const std::vector<int>& S);

/// Marginal work/reward/productivity measures w^S, r^S, nu^S = r/w.
struct MarginalMeasures {
    Eigen::VectorXd w;
    Eigen::VectorXd r;
    Eigen::VectorXd nu;
};

MarginalMeasures marginal_measures(const NormalizedProjectSpec& spec, const std::vector<int>& S,
                                   const WorkReward& wr);

}  // namespace switchdex
