#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "switchdex/generator.hpp"
#include "switchdex/measures.hpp"
#include "switchdex/oracle.hpp"

using namespace switchdex;

namespace {

NormalizedProjectSpec demo3(double c) {
    ProjectSpec s;
    s.P.resize(3, 3);
    s.P << 0.8061, 0.1574, 0.0365,
           0.1957, 0.0067, 0.7976,
           0.1378, 0.5959, 0.2663;
    s.R.resize(3);
    s.R << 0.7221, 0.9685, 0.1557;
    s.c = Eigen::VectorXd::Constant(3, c);
    s.d = Eigen::VectorXd::Zero(3);
    s.beta = 0.95;
    return normalize(s);
}

NormalizedProjectSpec random_instance(int n, std::uint64_t seed, int k, double beta) {
    InstanceEnsembleConfig cfg;
    cfg.projects = 1;
    cfg.states = n;
    cfg.seed = seed;
    cfg.count = k + 1;
    cfg.startup = CostModel::uniform01();
    ProjectSpec p = generate_instance(cfg, k)[0];
    p.beta = beta;
    return normalize(p);
}

}  // namespace

TEST_CASE("absorbing-state values by hand") {
    NormalizedProjectSpec s;
    s.P = Eigen::MatrixXd::Ones(1, 1);
    s.R = Eigen::VectorXd::Constant(1, 1.0);
    s.c = Eigen::VectorXd::Constant(1, 0.2);
    s.beta = 0.5;
    CHECK(brute_force_index(s, 1, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(brute_force_index(s, 0, 0) == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("brute force maximizes over every subset") {
    // Cross-check one ratio by hand on the 3-state instance: the value for
    // state 1 with S = {1, 2} (0-based {0, 1}).
    const NormalizedProjectSpec s = demo3(0.1);
    const WorkReward wr = work_reward_on_set(s, {0, 1});
    double best = -1e300;
    for (int mask = 1; mask < 8; ++mask) {
        if (!(mask & 1)) continue;
        std::vector<int> S;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) S.push_back(i);
        const WorkReward w2 = work_reward_on_set(s, S);
        best = std::max(best, (w2.f(0) - s.c(0)) / w2.g(0));
    }
    CHECK(brute_force_index(s, 0, 0) == doctest::Approx(best).epsilon(1e-13));
    CHECK(best >= (wr.f(0) - s.c(0)) / wr.g(0) - 1e-13);
}

TEST_CASE("hysteresis: switching index never exceeds continuation index") {
    for (int k = 0; k < 40; ++k) {
        const NormalizedProjectSpec s = random_instance(2 + k % 6, 555, k, 0.9);
        for (int i = 0; i < s.n(); ++i)
            CHECK(brute_force_index(s, 0, i) <= brute_force_index(s, 1, i) + 1e-12);
    }
}

TEST_CASE("vector and scalar brute-force entries agree") {
    const NormalizedProjectSpec s = demo3(0.3);
    for (int ap : {0, 1}) {
        const Eigen::VectorXd all = brute_force_index_all(s, ap);
        for (int i = 0; i < 3; ++i)
            CHECK(all(i) == doctest::Approx(brute_force_index(s, ap, i)).epsilon(1e-14));
    }
}

TEST_CASE("brute force is guarded against exponential blowups") {
    const NormalizedProjectSpec s = random_instance(21, 1, 0, 0.9);
    CHECK_THROWS_AS(brute_force_index(s, 0, 0), std::invalid_argument);
}

TEST_CASE("measure lemmas hold on the 3-state instance") {
    const LemmaReport rep = verify_measure_lemmas(demo3(0.25), {0}, {0, 2});
    for (const auto& c : rep.clauses) {
        INFO(c.clause, " maxError=", c.maxError);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass());
}

TEST_CASE("measure lemmas hold on random instances and policies") {
    for (int k = 0; k < 30; ++k) {
        const int n = 2 + k % 5;
        const NormalizedProjectSpec s = random_instance(n, 888, k, 0.4 + 0.5 * (k % 7) / 7.0);
        // nested policy pair: thirds of the state space
        std::vector<int> S0, S1;
        for (int i = 0; i < n; ++i) {
            if (i % 3 == 0) S0.push_back(i);
            if (i % 3 != 2) S1.push_back(i);
        }
        const LemmaReport rep = verify_measure_lemmas(s, S0, S1);
        INFO("instance ", k);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("lemma verifier rejects non-nested policies") {
    CHECK_THROWS_AS(verify_measure_lemmas(demo3(0.1), {1}, {0, 2}), std::invalid_argument);
}
