#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "switchdex/generator.hpp"

using namespace switchdex;

TEST_CASE("splitmix64 doubles live in [0,1) and are reproducible") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform01();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(x == b.uniform01());
    }
}

TEST_CASE("derive_stream separates instances, projects and tags") {
    const std::uint64_t base = derive_stream(7, 0, 0, 1);
    CHECK(base != derive_stream(7, 1, 0, 1));
    CHECK(base != derive_stream(7, 0, 1, 1));
    CHECK(base != derive_stream(7, 0, 0, 2));
    CHECK(base != derive_stream(8, 0, 0, 1));
    CHECK(base == derive_stream(7, 0, 0, 1));
}

TEST_CASE("generated instances are bitwise deterministic") {
    InstanceEnsembleConfig cfg;
    cfg.projects = 3;
    cfg.states = 7;
    cfg.seed = 20070101;
    cfg.count = 5;
    cfg.startup = CostModel::uniform01();
    const auto a = generate_instance(cfg, 2);
    const auto b = generate_instance(cfg, 2);
    REQUIRE(a.size() == b.size());
    for (size_t m = 0; m < a.size(); ++m) {
        CHECK((a[m].P - b[m].P).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK((a[m].R - b[m].R).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK((a[m].c - b[m].c).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK((a[m].d - b[m].d).lpNorm<Eigen::Infinity>() == 0.0);
    }
}

TEST_CASE("instance k does not depend on how many instances are requested") {
    InstanceEnsembleConfig a, b;
    a.projects = b.projects = 2;
    a.states = b.states = 5;
    a.seed = b.seed = 99;
    a.count = 3;
    b.count = 50;
    const auto x = generate_instance(a, 1);
    const auto y = generate_instance(b, 1);
    for (size_t m = 0; m < x.size(); ++m)
        CHECK((x[m].P - y[m].P).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("transition rows are stochastic and specs validate") {
    InstanceEnsembleConfig cfg;
    cfg.projects = 2;
    cfg.states = 12;
    cfg.seed = 5;
    cfg.count = 20;
    cfg.startup = CostModel::uniform01();
    cfg.shutdown = CostModel::constant(0.05);
    for (int k = 0; k < cfg.count; ++k) {
        for (const auto& spec : generate_instance(cfg, k)) {
            CHECK(validate(spec).empty());
            for (int i = 0; i < spec.n(); ++i)
                CHECK(std::abs(spec.P.row(i).sum() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("cost models") {
    InstanceEnsembleConfig cfg;
    cfg.projects = 3;
    cfg.states = 4;
    cfg.seed = 11;

    SUBCASE("constant") {
        cfg.startup = CostModel::constant(0.35);
        for (const auto& s : generate_instance(cfg, 0)) {
            CHECK((s.c.array() == 0.35).all());
            CHECK((s.d.array() == 0.0).all());
        }
    }
    SUBCASE("per-project constant") {
        cfg.startup = CostModel::per_project({0.1, 0.2, 0.3});
        const auto specs = generate_instance(cfg, 0);
        CHECK(specs[0].c(0) == 0.1);
        CHECK(specs[1].c(0) == 0.2);
        CHECK(specs[2].c(0) == 0.3);
        cfg.projects = 4;  // one value short
        CHECK_THROWS_AS(generate_instance(cfg, 0), std::invalid_argument);
    }
    SUBCASE("state-dependent uniform") {
        cfg.startup = CostModel::uniform01();
        const auto specs = generate_instance(cfg, 0);
        bool anyDistinct = false;
        for (const auto& s : specs) {
            CHECK((s.c.array() >= 0.0).all());
            CHECK((s.c.array() < 1.0).all());
            if (s.c.maxCoeff() != s.c.minCoeff()) anyDistinct = true;
        }
        CHECK(anyDistinct);
    }
}

TEST_CASE("bad configs are rejected") {
    InstanceEnsembleConfig cfg;
    cfg.projects = 0;
    CHECK_THROWS_AS(generate_instance(cfg, 0), std::invalid_argument);
    cfg.projects = 1;
    cfg.states = 2;
    cfg.count = 2;
    CHECK_THROWS_AS(generate_instance(cfg, 2), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(cfg, -1), std::invalid_argument);
}
