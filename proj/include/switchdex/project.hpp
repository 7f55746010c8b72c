#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace switchdex {

/// Raised when a solve fails its residual quality check.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One bandit project: row-stochastic transitions, active rewards,
/// startup/shutdown cost vectors and a discount factor in (0,1).
/// Passive rewards are identically zero and the state freezes when passive.
struct ProjectSpec {
    Eigen::MatrixXd P;
    Eigen::VectorXd R;
    Eigen::VectorXd c;
    Eigen::VectorXd d;
    double beta = 0.0;

    int n() const { return static_cast<int>(R.size()); }
};

/// Shutdown costs folded away: d == 0, c >= 0 entrywise.
struct NormalizedProjectSpec {
    Eigen::MatrixXd P;
    Eigen::VectorXd R;
    Eigen::VectorXd c;
    double beta = 0.0;

    int n() const { return static_cast<int>(R.size()); }
};

/// (previous action, state). Flat id aPrev*n + i in the augmented model.
struct AugmentedState {
    int aPrev = 0;
    int i = 0;
};

struct Violation {
    std::string field;
    int index = -1;  // -1 when the violation is not tied to one entry
    double value = 0.0;
    std::string message;
};

/// Empty result iff all ProjectSpec invariants hold. Diagnostic only.
std::vector<Violation> validate(const ProjectSpec& spec);

/// Throws std::invalid_argument listing the first violation.
void require_valid(const ProjectSpec& spec);

/// Folds shutdown costs into startup costs and rewards:
/// c~ = c + d, R~ = R + (I - beta P) d. Rejects invalid specs.
NormalizedProjectSpec normalize(const ProjectSpec& spec);

}  // namespace switchdex
