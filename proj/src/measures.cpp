#include "switchdex/measures.hpp"

#include <cmath>

namespace switchdex {

namespace {
constexpr double kResidualTol = 1e-10;

void check_residual(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, const Eigen::VectorXd& rhs,
                    const char* what) {
    const double res = (A * x - rhs).lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
    if (!(res <= kResidualTol * scale))
        throw NumericalError(std::string("evaluation-equation solve failed residual check: ") + what);
}
}  // namespace

WorkReward work_reward_on_set(const NormalizedProjectSpec& spec, const std::vector<int>& S) {
    const int n = spec.n();
    WorkReward out{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    const int k = static_cast<int>(S.size());
    if (k == 0) return out;

    Eigen::MatrixXd A(k, k);
    Eigen::VectorXd rS(k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) A(a, b) = -spec.beta * spec.P(S[a], S[b]);
        A(a, a) += 1.0;
        rS(a) = spec.R(S[a]);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::VectorXd gS = lu.solve(Eigen::VectorXd::Ones(k));
    const Eigen::VectorXd fS = lu.solve(rS);
    check_residual(A, gS, Eigen::VectorXd::Ones(k), "g");
    check_residual(A, fS, rS, "f");

    for (int a = 0; a < k; ++a) {
        out.g(S[a]) = gS(a);
        out.f(S[a]) = fS(a);
    }
    return out;
}

MarginalMeasures marginal_measures(const NormalizedProjectSpec& spec, const std::vector<int>& S,
                                   const WorkReward& wr) {
    const int n = spec.n();
    std::vector<char> inS(n, 0);
    for (int s : S) inS[s] = 1;

    MarginalMeasures out{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
    const double oneMinusBeta = 1.0 - spec.beta;
    for (int i = 0; i < n; ++i) {
        if (inS[i]) {
            out.w(i) = oneMinusBeta * wr.g(i);
            out.r(i) = oneMinusBeta * wr.f(i);
        } else {
            double wg = 0.0, wf = 0.0;
            for (int j : S) {
                wg += spec.P(i, j) * wr.g(j);
                wf += spec.P(i, j) * wr.f(j);
            }
            out.w(i) = 1.0 + spec.beta * wg;
            out.r(i) = spec.R(i) + spec.beta * wf;
        }
        if (!(out.w(i) > 0.0)) throw NumericalError("marginal work measure is not positive");
        out.nu(i) = out.r(i) / out.w(i);
    }
    return out;
}

}  // namespace switchdex
