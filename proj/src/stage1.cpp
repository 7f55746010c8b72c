#include "switchdex/stage1.hpp"

#include <cmath>
#include <limits>

namespace switchdex {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kResidualTol = 1e-10;

// Grows inv(A) by one bordering row/column via the Schur complement.
// B holds inv(A_k) in its top-left k x k block.
void border_inverse(Eigen::MatrixXd& B, int k, const Eigen::VectorXd& col, const Eigen::VectorXd& row,
                    double corner) {
    if (k == 0) {
        if (corner == 0.0) throw NumericalError("bordered update hit a zero pivot");
        B(0, 0) = 1.0 / corner;
        return;
    }
    auto Bk = B.topLeftCorner(k, k);
    const Eigen::VectorXd u = Bk * col.head(k);
    const Eigen::RowVectorXd vT = row.head(k).transpose() * Bk;
    const double sc = corner - row.head(k).dot(u);
    if (!(std::abs(sc) > 1e-14)) throw NumericalError("bordered update hit a near-singular pivot");
    Bk.noalias() += (u * vT) / sc;
    B.col(k).head(k) = -u / sc;
    B.row(k).head(k) = -vT / sc;
    B(k, k) = 1.0 / sc;
}

void check_residual(const RowMat& P, double beta, const std::vector<int>& order, int k,
                    const Eigen::VectorXd& x, const Eigen::VectorXd& rhs) {
    double res = 0.0;
    for (int a = 0; a < k; ++a) {
        double acc = x(a) - rhs(a);
        const double* prow = P.row(order[a]).data();
        for (int b = 0; b < k; ++b) acc -= beta * prow[order[b]] * x(b);
        res = std::max(res, std::abs(acc));
    }
    const double scale = std::max(1.0, rhs.head(k).lpNorm<Eigen::Infinity>());
    if (!(res <= kResidualTol * scale))
        throw NumericalError("stage-1 active-set solve failed residual check");
}

}  // namespace

Eigen::VectorXd Stage1Output::nu_by_state() const {
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) out(order[k]) = nuAlongOrder(k);
    return out;
}

Stage1Output compute_stage1(const NormalizedProjectSpec& spec, Stage1Mode mode) {
    const int n = spec.n();
    const double beta = spec.beta;
    const RowMat P = spec.P;  // row-major copy for the gather loops

    Stage1Output out;
    out.n = n;
    out.beta = beta;
    out.order.reserve(n);
    out.nuAlongOrder.resize(n);
    out.wTri.resize(static_cast<size_t>(n) * (n + 1) / 2);
    out.nuTri.resize(out.wTri.size());

    std::vector<char> inS(n, 0);
    // nu^(0): S empty gives w = 1, nu = R.
    Eigen::VectorXd nuOut = spec.R;

    Eigen::MatrixXd B;  // bordered inverse of I_S - beta P_SS (fast mode)
    if (mode == Stage1Mode::Fast) B.setZero(n, n);
    Eigen::VectorXd g(n), f(n), RS(n), col(n), row(n);

    for (int k1 = 1; k1 <= n; ++k1) {
        int pick = -1;
        double best = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (!inS[j]) {
                if (nuOut(j) > best) {
                    best = nuOut(j);
                    pick = j;
                }
            }
        }
        out.order.push_back(pick);
        out.nuAlongOrder(k1 - 1) = best;
        inS[pick] = 1;
        RS(k1 - 1) = spec.R(pick);

        const int k = k1;
        if (mode == Stage1Mode::Fast) {
            for (int t = 0; t < k - 1; ++t) {
                col(t) = -beta * P(out.order[t], pick);
                row(t) = -beta * P(pick, out.order[t]);
            }
            border_inverse(B, k - 1, col, row, 1.0 - beta * P(pick, pick));
            g.head(k).noalias() = B.topLeftCorner(k, k) * Eigen::VectorXd::Ones(k);
            f.head(k).noalias() = B.topLeftCorner(k, k) * RS.head(k);
            out.opCount += 3LL * (k - 1) * (k - 1) + 4LL * k * k;
        } else {
            Eigen::MatrixXd A(k, k);
            for (int a = 0; a < k; ++a) {
                for (int b = 0; b < k; ++b) A(a, b) = -beta * P(out.order[a], out.order[b]);
                A(a, a) += 1.0;
            }
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
            g.head(k) = lu.solve(Eigen::VectorXd::Ones(k));
            f.head(k) = lu.solve(RS.head(k));
            out.opCount += 2LL * k * k * k / 3 + 4LL * k * k;
        }
        check_residual(P, beta, out.order, k, g.head(k), Eigen::VectorXd::Ones(k));
        check_residual(P, beta, out.order, k, f.head(k), RS.head(k));

        // Tables for the states inside S1^{k1}.
        const size_t off = static_cast<size_t>(k1) * (k1 - 1) / 2;
        const double oneMinusBeta = 1.0 - beta;
        for (int t = 0; t < k; ++t) {
            const double wj = oneMinusBeta * g(t);
            if (!(wj > 0.0)) throw NumericalError("nonpositive marginal work in stage 1");
            out.wTri[off + t] = wj;
            out.nuTri[off + t] = f(t) / g(t);
        }
        out.opCount += 2LL * k;

        // Exterior marginal productivity for the next argmax.
        for (int j = 0; j < n; ++j) {
            if (inS[j]) continue;
            const double* prow = P.row(j).data();
            double wg = 0.0, wf = 0.0;
            for (int t = 0; t < k; ++t) {
                const double p = prow[out.order[t]];
                wg += p * g(t);
                wf += p * f(t);
            }
            const double wj = 1.0 + beta * wg;
            if (!(wj > 0.0)) throw NumericalError("nonpositive marginal work in stage 1");
            nuOut(j) = (spec.R(j) + beta * wf) / wj;
        }
        out.opCount += 4LL * k * (n - k) + 4LL * (n - k);
    }
    return out;
}

Stage1Output compute_stage1(const ProjectSpec& spec, Stage1Mode mode) {
    return compute_stage1(normalize(spec), mode);
}

Eigen::VectorXd gittins_index(const NormalizedProjectSpec& spec) {
    return compute_stage1(spec, Stage1Mode::Fast).nu_by_state();
}

Eigen::VectorXd gittins_index(const ProjectSpec& spec) {
    return gittins_index(normalize(spec));
}

}  // namespace switchdex
