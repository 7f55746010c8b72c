#pragma once

#include <iosfwd>
#include <vector>

#include "switchdex/project.hpp"
#include "switchdex/stage1.hpp"

namespace switchdex {

/// Continuation and switching index per state, with the two emission
/// orderings and the stage-2 arithmetic-operation count.
struct IndexTable {
    Eigen::VectorXd nuCont;    // by state id
    Eigen::VectorXd nuSwitch;  // by state id
    std::vector<int> orderCont;
    std::vector<int> orderSwitch;
    long long opCountStage1 = 0;
    long long opCountStage2 = 0;
    /// Both index streams interleaved in emission order; nonincreasing.
    std::vector<double> merged;
};

/// Second-stage switching-index pass over the stage-1 tables. Comparisons
/// are exact unless a nonzero tolerance is passed; argmax ties break toward
/// the smallest state id. Requires c >= 0 (normalized costs).
IndexTable compute_switching_index(const Stage1Output& s1, const Eigen::VectorXd& c, double beta,
                                   double tolerance = 0.0);

/// Full two-stage pipeline: normalize -> stage 1 (fast) -> stage 2.
IndexTable compute_index_table(const ProjectSpec& spec, Stage1Mode mode = Stage1Mode::Fast);
IndexTable compute_index_table(const NormalizedProjectSpec& spec, Stage1Mode mode = Stage1Mode::Fast);

/// CSV: state,nu_cont,nu_switch with 1-based states, 17-digit doubles.
void write_index_csv(std::ostream& os, const IndexTable& table);

}  // namespace switchdex
