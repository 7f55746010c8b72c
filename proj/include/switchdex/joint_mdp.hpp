#pragma once

#include <functional>
#include <vector>

#include "switchdex/project.hpp"

namespace switchdex {

/// Joint state layout for M projects under the one-incumbent restriction:
/// id = incumbent * prod(n_m) + mixed-radix(x), incumbent in {0..M}
/// (0 = nothing engaged yet, legal only as an initial condition).
struct JointLayout {
    int M = 0;
    std::vector<int> sizes;
    std::vector<long long> strides;
    long long prodN = 1;
    long long numStates = 0;

    explicit JointLayout(const std::vector<int>& sizes);

    long long id(int incumbent, const std::vector<int>& x) const;
    int incumbent_of(long long s) const { return static_cast<int>(s / prodN); }
    int coord(long long s, int m) const { return static_cast<int>((s % prodN) / strides[m] % sizes[m]); }
};

struct PolicyValue {
    Eigen::VectorXd v;    // value per joint state
    double scalar = 0.0;  // average over incumbent-0 states
};

struct OptimalSolution {
    PolicyValue value;
    std::vector<int> policy;  // engaged project per joint state, 0-based
    long long sweeps = 0;
    bool converged = true;
};

/// Value iteration to 1e-12 * (1 - beta) sup-norm change, then exact
/// evaluation of the greedy policy by a sparse linear solve. Guarded to
/// (M+1) * prod(n_m) <= 1e6 joint states.
OptimalSolution solve_optimal(const std::vector<ProjectSpec>& specs, double beta);

/// Per-project index lookup: (project m, previous action, state) -> value.
using IndexProvider = std::function<double(int m, int aPrev, int i)>;

/// Exact value of the stationary priority policy engaging the project of
/// largest index. Ties: incumbent first, then lowest project number.
PolicyValue evaluate_priority_policy(const std::vector<ProjectSpec>& specs, double beta,
                                     const IndexProvider& index);

/// The priority policy itself (for structural checks).
std::vector<int> priority_policy(const std::vector<ProjectSpec>& specs, const IndexProvider& index);

/// Exact evaluation of an arbitrary stationary policy.
PolicyValue evaluate_policy(const std::vector<ProjectSpec>& specs, double beta,
                            const std::vector<int>& policy);

struct GapMetrics {
    double delta = 0.0;  // percent
    double rho = 0.0;    // percent
    bool rhoDefined = true;
    bool equivalent = false;  // both gaps vanish
};

GapMetrics gap_metrics(double vOpt, double vMpi, double vBench);

}  // namespace switchdex
