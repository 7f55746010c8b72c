#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "switchdex/at_scheme.hpp"
#include "switchdex/generator.hpp"
#include "switchdex/oracle.hpp"
#include "switchdex/stage1.hpp"

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

}  // namespace

TEST_CASE("augmented project layout") {
    const NormalizedProjectSpec s = demo3(0.2);
    const AugmentedProjectSpec a = build_augmented(s);
    REQUIRE(a.states() == 6);
    for (int ap = 0; ap < 2; ++ap) {
        for (int i = 0; i < 3; ++i) {
            const int id = ap * 3 + i;
            CHECK(a.R(id) == doctest::Approx(s.R(i) - (1 - ap) * s.c(i)).epsilon(1e-15));
            for (int j = 0; j < 3; ++j) {
                CHECK(a.P(id, 3 + j) == s.P(i, j));  // active moves into the (1,.) block
                CHECK(a.P(id, j) == 0.0);
            }
        }
    }
}

TEST_CASE("single absorbing state") {
    NormalizedProjectSpec s;
    s.P = Eigen::MatrixXd::Ones(1, 1);
    s.R = Eigen::VectorXd::Constant(1, 1.0);
    s.c = Eigen::VectorXd::Constant(1, 0.2);
    s.beta = 0.5;
    const IndexTable t = at_index_table(s);
    CHECK(t.nuCont(0) == doctest::Approx(1.0).epsilon(1e-14));
    // (f^N - c) / g^N = (2 - 0.2) / 2
    CHECK(t.nuSwitch(0) == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("zero switching cost duplicates the plain Gittins index") {
    const NormalizedProjectSpec s = demo3(0.0);
    const IndexTable t = at_index_table(s);
    const Eigen::VectorXd nu = gittins_index(s);
    CHECK((t.nuCont - nu).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK((t.nuSwitch - nu).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("3-state instance matches the subset-enumeration oracle") {
    for (double c : {0.0, 0.1, 0.4, 1.5}) {
        const NormalizedProjectSpec s = demo3(c);
        const IndexTable t = at_index_table(s);
        CHECK((t.nuCont - brute_force_index_all(s, 1)).lpNorm<Eigen::Infinity>() <= 1e-11);
        CHECK((t.nuSwitch - brute_force_index_all(s, 0)).lpNorm<Eigen::Infinity>() <= 1e-11);
    }
}

TEST_CASE("joint-scheme emission stream is nonincreasing") {
    InstanceEnsembleConfig cfg;
    cfg.projects = 1;
    cfg.states = 7;
    cfg.seed = 1001;
    cfg.count = 20;
    cfg.startup = CostModel::uniform01();
    for (int k = 0; k < cfg.count; ++k) {
        ProjectSpec p = generate_instance(cfg, k)[0];
        p.beta = 0.85;
        const IndexTable t = at_index_table(normalize(p));
        REQUIRE(t.merged.size() == 14u);
        for (size_t i = 1; i < t.merged.size(); ++i)
            CHECK(t.merged[i] <= t.merged[i - 1] + 1e-12);
        for (int i = 0; i < 7; ++i) CHECK(t.nuSwitch(i) <= t.nuCont(i) + 1e-12);
    }
}

TEST_CASE("reference and fast modes agree on the augmented project") {
    const NormalizedProjectSpec s = demo3(0.3);
    const IndexTable a = at_index_table(s, Stage1Mode::Fast);
    const IndexTable b = at_index_table(s, Stage1Mode::Reference);
    CHECK((a.nuCont - b.nuCont).lpNorm<Eigen::Infinity>() <= 1e-11);
    CHECK((a.nuSwitch - b.nuSwitch).lpNorm<Eigen::Infinity>() <= 1e-11);
}
