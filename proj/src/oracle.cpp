#include "switchdex/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "switchdex/measures.hpp"

namespace switchdex {

Eigen::VectorXd brute_force_index_all(const NormalizedProjectSpec& spec, int aPrev) {
    const int n = spec.n();
    if (n > 20) throw std::invalid_argument("brute-force enumeration is guarded to n <= 20");
    if (aPrev != 0 && aPrev != 1) throw std::invalid_argument("aPrev must be 0 or 1");

    Eigen::VectorXd best = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
    std::vector<int> S;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        S.clear();
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) S.push_back(i);
        const WorkReward wr = work_reward_on_set(spec, S);
        for (int i : S) {
            const double value = (wr.f(i) - (1 - aPrev) * spec.c(i)) / wr.g(i);
            best(i) = std::max(best(i), value);
        }
    }
    return best;
}

double brute_force_index(const NormalizedProjectSpec& spec, int aPrev, int i) {
    if (i < 0 || i >= spec.n()) throw std::invalid_argument("state out of range");
    return brute_force_index_all(spec, aPrev)(i);
}

namespace {

struct AugmentedMeasures {
    // indexed [aPrev][state]
    Eigen::MatrixXd g, f;  // 2 x n
    Eigen::MatrixXd w, r, nu;
};

// Fixed-point sweeps for the augmented evaluation equations under policy
// S0 + S1, stopping at sup-norm residual 1e-13. Structurally independent
// from the linear-solve path it is used to validate.
AugmentedMeasures fixed_point_measures(const NormalizedProjectSpec& spec, const std::vector<char>& in0,
                                       const std::vector<char>& in1) {
    const int n = spec.n();
    const double beta = spec.beta;
    AugmentedMeasures m;
    m.g.setZero(2, n);
    m.f.setZero(2, n);

    Eigen::MatrixXd gNew(2, n), fNew(2, n);
    for (int sweep = 0; sweep < 200000; ++sweep) {
        double diff = 0.0;
        for (int a = 0; a < 2; ++a) {
            const std::vector<char>& active = (a == 0) ? in0 : in1;
            for (int i = 0; i < n; ++i) {
                if (active[i]) {
                    double sg = 0.0, sf = 0.0;
                    for (int j = 0; j < n; ++j) {
                        sg += spec.P(i, j) * m.g(1, j);
                        sf += spec.P(i, j) * m.f(1, j);
                    }
                    gNew(a, i) = 1.0 + beta * sg;
                    fNew(a, i) = spec.R(i) - (1 - a) * spec.c(i) + beta * sf;
                } else {
                    gNew(a, i) = beta * m.g(0, i);
                    fNew(a, i) = beta * m.f(0, i);
                }
                diff = std::max(diff, std::abs(gNew(a, i) - m.g(a, i)));
                diff = std::max(diff, std::abs(fNew(a, i) - m.f(a, i)));
            }
        }
        m.g = gNew;
        m.f = fNew;
        if (diff <= 1e-13) break;
    }

    m.w.resize(2, n);
    m.r.resize(2, n);
    m.nu.resize(2, n);
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i < n; ++i) {
            double sg = 0.0, sf = 0.0;
            for (int j = 0; j < n; ++j) {
                sg += spec.P(i, j) * m.g(1, j);
                sf += spec.P(i, j) * m.f(1, j);
            }
            m.w(a, i) = 1.0 + beta * sg - beta * m.g(0, i);
            m.r(a, i) = spec.R(i) - (1 - a) * spec.c(i) + beta * sf - beta * m.f(0, i);
            m.nu(a, i) = m.r(a, i) / m.w(a, i);
        }
    }
    return m;
}

}  // namespace

LemmaReport verify_measure_lemmas(const NormalizedProjectSpec& spec, const std::vector<int>& S0,
                                  const std::vector<int>& S1) {
    const int n = spec.n();
    if (n > 8) throw std::invalid_argument("lemma verification is guarded to n <= 8");
    std::vector<char> in0(n, 0), in1(n, 0);
    for (int s : S1) in1[s] = 1;
    for (int s : S0) {
        if (!in1[s]) throw std::invalid_argument("S0 must be a subset of S1");
        in0[s] = 1;
    }

    const AugmentedMeasures m = fixed_point_measures(spec, in0, in1);
    const WorkReward wr = work_reward_on_set(spec, S1);
    const MarginalMeasures mm = marginal_measures(spec, S1, wr);

    LemmaReport report;
    auto clause = [&](const std::string& name, auto&& body) {
        LemmaClauseResult res{name, true, 0.0};
        body(res);
        res.pass = res.maxError <= 1e-9;
        report.clauses.push_back(res);
    };
    auto record = [](LemmaClauseResult& res, double lhs, double rhs) {
        res.maxError = std::max(res.maxError, std::abs(lhs - rhs));
    };
    const double beta = spec.beta;

    // work measures
    clause("work.outside-S1-zero", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (!in1[i])
                for (int a = 0; a < 2; ++a) record(res, m.g(a, i), 0.0);
    });
    clause("work.active-block-matches", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in1[i]) record(res, m.g(1, i), wr.g(i));
    });
    clause("work.passive-in-S0-matches", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in0[i]) record(res, m.g(0, i), wr.g(i));
    });
    clause("work.passive-between-zero", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in1[i] && !in0[i]) record(res, m.g(0, i), 0.0);
    });

    // marginal work measures
    clause("marginal-work.unchanged", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in0[i] || !in1[i])
                for (int a = 0; a < 2; ++a) record(res, m.w(a, i), mm.w(i));
    });
    clause("marginal-work.scaled-between", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in1[i] && !in0[i])
                for (int a = 0; a < 2; ++a) record(res, m.w(a, i), mm.w(i) / (1.0 - beta));
    });

    // reward measures
    clause("reward.outside-S1-zero", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (!in1[i])
                for (int a = 0; a < 2; ++a) record(res, m.f(a, i), 0.0);
    });
    clause("reward.active-block-matches", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in1[i]) record(res, m.f(1, i), wr.f(i));
    });
    clause("reward.passive-in-S0-startup-shift", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in0[i]) record(res, m.f(0, i), wr.f(i) - spec.c(i));
    });
    clause("reward.passive-between-zero", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in1[i] && !in0[i]) record(res, m.f(0, i), 0.0);
    });

    // marginal reward measures
    clause("marginal-reward.startup-shift", [&](auto& res) {
        for (int i = 0; i < n; ++i) record(res, m.r(0, i), m.r(1, i) - spec.c(i));
    });
    clause("marginal-reward.outside-S1", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (!in1[i]) record(res, m.r(1, i), mm.r(i));
    });
    clause("marginal-reward.in-S0", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in0[i]) record(res, m.r(1, i), mm.r(i) + beta * spec.c(i));
    });
    clause("marginal-reward.scaled-between", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in1[i] && !in0[i]) record(res, m.r(1, i), mm.r(i) / (1.0 - beta));
    });

    // marginal productivity measures
    clause("productivity.startup-shift", [&](auto& res) {
        for (int i = 0; i < n; ++i) record(res, m.nu(0, i), m.nu(1, i) - spec.c(i) / m.w(1, i));
    });
    clause("productivity.outside-S0", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (!in0[i]) record(res, m.nu(1, i), mm.nu(i));
    });
    clause("productivity.in-S0", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in0[i]) record(res, m.nu(1, i), mm.nu(i) + beta * spec.c(i) / mm.w(i));
    });
    clause("productivity.switch-between", [&](auto& res) {
        for (int i = 0; i < n; ++i)
            if (in1[i] && !in0[i])
                record(res, m.nu(0, i), mm.nu(i) - (1.0 - beta) * spec.c(i) / mm.w(i));
    });

    return report;
}

}  // namespace switchdex
