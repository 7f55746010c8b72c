#pragma once

#include "switchdex/project.hpp"
#include "switchdex/stage2.hpp"

namespace switchdex {

/// The 2n-state augmented project of the joint scheme: state (aPrev, i)
/// has flat id aPrev*n + i, active reward R_i - (1 - aPrev) c_i and active
/// transitions into the (1, j) block with probability p_ij. Passive
/// dynamics are irrelevant to the index computation and are not built.
struct AugmentedProjectSpec {
    Eigen::MatrixXd P;  // 2n x 2n active transition matrix
    Eigen::VectorXd R;  // active rewards on flat ids
    double beta = 0.0;

    int states() const { return static_cast<int>(R.size()); }

    NormalizedProjectSpec as_project() const {
        return {P, R, Eigen::VectorXd::Zero(R.size()), beta};
    }
};

AugmentedProjectSpec build_augmented(const NormalizedProjectSpec& spec);

/// Joint-scheme baseline: one continuation-index pass on the 2n-state
/// augmented project, split back into the two n-state index vectors.
IndexTable at_index_table(const ProjectSpec& spec, Stage1Mode mode = Stage1Mode::Fast);
IndexTable at_index_table(const NormalizedProjectSpec& spec, Stage1Mode mode = Stage1Mode::Fast);

}  // namespace switchdex
