#include "switchdex/joint_mdp.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>

namespace switchdex {

JointLayout::JointLayout(const std::vector<int>& sz) : M(static_cast<int>(sz.size())), sizes(sz) {
    strides.assign(M, 1);
    for (int m = M - 2; m >= 0; --m) strides[m] = strides[m + 1] * sizes[m + 1];
    prodN = M > 0 ? strides[0] * sizes[0] : 1;
    numStates = static_cast<long long>(M + 1) * prodN;
}

long long JointLayout::id(int incumbent, const std::vector<int>& x) const {
    long long xid = 0;
    for (int m = 0; m < M; ++m) xid += static_cast<long long>(x[m]) * strides[m];
    return incumbent * prodN + xid;
}

namespace {

constexpr long long kMaxJointStates = 1000000;
constexpr long long kMaxSweeps = 1000000;

struct JointModel {
    JointLayout layout;
    std::vector<Eigen::MatrixXd> P;
    std::vector<Eigen::VectorXd> R, c, d;
    double beta;

    JointModel(const std::vector<ProjectSpec>& specs, double beta_)
        : layout([&] {
              std::vector<int> sz;
              for (const auto& s : specs) sz.push_back(s.n());
              return sz;
          }()),
          beta(beta_) {
        if (specs.empty()) throw std::invalid_argument("joint model needs at least one project");
        if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");
        if (layout.numStates > kMaxJointStates)
            throw std::invalid_argument("joint state space exceeds the size guard");
        for (const auto& s : specs) {
            require_valid(s);
            P.push_back(s.P);
            R.push_back(s.R);
            c.push_back(s.c);
            d.push_back(s.d);
        }
    }

    // One-period net reward for engaging project m in joint state s.
    double reward(long long s, int m) const {
        const int inc = layout.incumbent_of(s);
        const int im = layout.coord(s, m);
        double rew = R[m](im);
        if (inc != m + 1) {
            rew -= c[m](im);
            if (inc >= 1) rew -= d[inc - 1](layout.coord(s, inc - 1));
        }
        return rew;
    }

    // Expected continuation value of engaging m: state moves to incumbent
    // m+1 with x_m redrawn from its transition row.
    double continuation(const Eigen::VectorXd& v, long long s, int m) const {
        const int im = layout.coord(s, m);
        const long long base = static_cast<long long>(m + 1) * layout.prodN + (s % layout.prodN) -
                               static_cast<long long>(im) * layout.strides[m];
        const int nm = layout.sizes[m];
        double acc = 0.0;
        for (int j = 0; j < nm; ++j) acc += P[m](im, j) * v(base + j * layout.strides[m]);
        return acc;
    }
};

double incumbent_zero_average(const JointLayout& layout, const Eigen::VectorXd& v) {
    double acc = 0.0;
    for (long long s = 0; s < layout.prodN; ++s) acc += v(s);
    return acc / static_cast<double>(layout.prodN);
}

PolicyValue evaluate(const JointModel& model, const std::vector<int>& policy) {
    const long long N = model.layout.numStates;
    Eigen::SparseMatrix<double> A(N, N);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(N) * (model.layout.sizes[0] + 1));
    Eigen::VectorXd rhs(N);
    for (long long s = 0; s < N; ++s) {
        const int m = policy[s];
        rhs(s) = model.reward(s, m);
        trip.emplace_back(s, s, 1.0);
        const int im = model.layout.coord(s, m);
        const long long base = static_cast<long long>(m + 1) * model.layout.prodN +
                               (s % model.layout.prodN) -
                               static_cast<long long>(im) * model.layout.strides[m];
        for (int j = 0; j < model.layout.sizes[m]; ++j) {
            const double p = model.P[m](im, j);
            if (p != 0.0)
                trip.emplace_back(s, base + j * model.layout.strides[m], -model.beta * p);
        }
    }
    A.setFromTriplets(trip.begin(), trip.end(),
                      [](const double& a, const double& b) { return a + b; });
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success) throw NumericalError("policy-evaluation factorization failed");
    PolicyValue out;
    out.v = lu.solve(rhs);
    const double res = (A * out.v - rhs).lpNorm<Eigen::Infinity>();
    if (!(res <= 1e-10 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())))
        throw NumericalError("policy-evaluation solve failed residual check");
    out.scalar = incumbent_zero_average(model.layout, out.v);
    return out;
}

// Greedy action with the incumbent-first, lowest-m tie rule.
int greedy_action(const JointModel& model, const Eigen::VectorXd& v, long long s, double* qBestOut) {
    const int inc = model.layout.incumbent_of(s);
    int bestM = -1;
    double bestQ = -std::numeric_limits<double>::infinity();
    auto consider = [&](int m) {
        const double q = model.reward(s, m) + model.beta * model.continuation(v, s, m);
        if (q > bestQ) {
            bestQ = q;
            bestM = m;
        }
    };
    if (inc >= 1) consider(inc - 1);
    for (int m = 0; m < model.layout.M; ++m)
        if (m != inc - 1) consider(m);
    if (qBestOut) *qBestOut = bestQ;
    return bestM;
}

}  // namespace

OptimalSolution solve_optimal(const std::vector<ProjectSpec>& specs, double beta) {
    JointModel model(specs, beta);
    const long long N = model.layout.numStates;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd vNew(N);

    OptimalSolution out;
    const double tol = 1e-12 * (1.0 - beta);
    out.converged = false;
    for (out.sweeps = 1; out.sweeps <= kMaxSweeps; ++out.sweeps) {
        double diff = 0.0;
        for (long long s = 0; s < N; ++s) {
            double q;
            greedy_action(model, v, s, &q);
            vNew(s) = q;
            diff = std::max(diff, std::abs(q - v(s)));
        }
        v.swap(vNew);
        if (diff <= tol) {
            out.converged = true;
            break;
        }
    }

    out.policy.resize(N);
    for (long long s = 0; s < N; ++s) out.policy[s] = greedy_action(model, v, s, nullptr);
    out.value = evaluate(model, out.policy);
    return out;
}

std::vector<int> priority_policy(const std::vector<ProjectSpec>& specs, const IndexProvider& index) {
    JointLayout layout([&] {
        std::vector<int> sz;
        for (const auto& s : specs) sz.push_back(s.n());
        return sz;
    }());
    std::vector<int> policy(layout.numStates);
    for (long long s = 0; s < layout.numStates; ++s) {
        const int inc = layout.incumbent_of(s);
        int bestM = -1;
        double best = -std::numeric_limits<double>::infinity();
        auto consider = [&](int m) {
            const double idx = index(m, inc == m + 1 ? 1 : 0, layout.coord(s, m));
            if (idx > best) {
                best = idx;
                bestM = m;
            }
        };
        if (inc >= 1) consider(inc - 1);
        for (int m = 0; m < layout.M; ++m)
            if (m != inc - 1) consider(m);
        policy[s] = bestM;
    }
    return policy;
}

PolicyValue evaluate_policy(const std::vector<ProjectSpec>& specs, double beta,
                            const std::vector<int>& policy) {
    JointModel model(specs, beta);
    if (static_cast<long long>(policy.size()) != model.layout.numStates)
        throw std::invalid_argument("policy size does not match the joint state space");
    return evaluate(model, policy);
}

PolicyValue evaluate_priority_policy(const std::vector<ProjectSpec>& specs, double beta,
                                     const IndexProvider& index) {
    return evaluate_policy(specs, beta, priority_policy(specs, index));
}

GapMetrics gap_metrics(double vOpt, double vMpi, double vBench) {
    if (vOpt < vMpi - 1e-9 || vOpt < vBench - 1e-9)
        throw NumericalError("a policy value exceeds the optimal value beyond tolerance");
    GapMetrics out;
    const double denomScale = std::max(std::abs(vOpt), 1e-300);
    out.delta = 100.0 * (vOpt - vMpi) / denomScale;
    const double num = vOpt - vMpi;
    const double den = vOpt - vBench;
    if (num < 1e-12 && den < 1e-12) {
        out.rho = 0.0;
        out.equivalent = true;
    } else if (den < 1e-12) {
        out.rhoDefined = false;
        out.rho = std::numeric_limits<double>::quiet_NaN();
    } else {
        out.rho = 100.0 * num / den;
    }
    return out;
}

}  // namespace switchdex
