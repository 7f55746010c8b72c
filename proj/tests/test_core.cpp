#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "switchdex/generator.hpp"
#include "switchdex/project.hpp"

using namespace switchdex;

namespace {

// The 3-state instance used throughout the tests.
ProjectSpec demo3(double c = 0.0, double d = 0.0) {
    ProjectSpec s;
    s.P.resize(3, 3);
    s.P << 0.8061, 0.1574, 0.0365,
           0.1957, 0.0067, 0.7976,
           0.1378, 0.5959, 0.2663;
    s.R.resize(3);
    s.R << 0.7221, 0.9685, 0.1557;
    s.c = Eigen::VectorXd::Constant(3, c);
    s.d = Eigen::VectorXd::Constant(3, d);
    s.beta = 0.95;
    return s;
}

}  // namespace

TEST_CASE("valid spec passes validation") {
    CHECK(validate(demo3(0.1, 0.05)).empty());
    CHECK_NOTHROW(require_valid(demo3()));
}

TEST_CASE("row sums off by more than 1e-12 are flagged") {
    ProjectSpec s = demo3();
    s.P(1, 2) += 1e-9;
    const auto v = validate(s);
    REQUIRE(!v.empty());
    CHECK(v[0].field == "P");
    CHECK_THROWS_AS(require_valid(s), std::invalid_argument);
}

TEST_CASE("negative transition probabilities are flagged") {
    ProjectSpec s = demo3();
    s.P(0, 0) -= 0.05;
    s.P(0, 1) += 0.05;  // keep the row sum intact
    s.P(0, 0) = -0.01;
    CHECK(!validate(s).empty());
}

TEST_CASE("c + d >= 0 is enforced entrywise") {
    ProjectSpec s = demo3(0.1, 0.0);
    s.d(2) = -0.2;  // c + d = -0.1 < 0 at state 2
    const auto v = validate(s);
    REQUIRE(!v.empty());
    CHECK_THROWS_AS(normalize(s), std::invalid_argument);
    s.d(2) = -0.1;  // boundary: c + d = 0 is fine
    CHECK(validate(s).empty());
}

TEST_CASE("discount factor outside (0,1) is rejected") {
    ProjectSpec s = demo3();
    s.beta = 1.0;
    CHECK(!validate(s).empty());
    s.beta = 0.0;
    CHECK(!validate(s).empty());
    s.beta = -0.3;
    CHECK(!validate(s).empty());
}

TEST_CASE("mismatched vector lengths are rejected") {
    ProjectSpec s = demo3();
    s.c.resize(2);
    s.c << 0.1, 0.1;
    CHECK(!validate(s).empty());
}

TEST_CASE("normalization on a 1-state project") {
    ProjectSpec s;
    s.P = Eigen::MatrixXd::Ones(1, 1);
    s.R = Eigen::VectorXd::Constant(1, 1.0);
    s.c = Eigen::VectorXd::Constant(1, 0.1);
    s.d = Eigen::VectorXd::Constant(1, 0.3);
    s.beta = 0.5;
    const NormalizedProjectSpec t = normalize(s);
    // c~ = c + d, R~ = R + (I - beta P) d = 1 + (1 - 0.5) * 0.3
    CHECK(t.c(0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(t.R(0) == doctest::Approx(1.15).epsilon(1e-15));
    CHECK(t.beta == 0.5);
}

TEST_CASE("normalization is the identity when d = 0") {
    const ProjectSpec s = demo3(0.25, 0.0);
    const NormalizedProjectSpec t = normalize(s);
    CHECK((t.R - s.R).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((t.c - s.c).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((t.P - s.P).lpNorm<Eigen::Infinity>() == 0.0);
}

// Independent check of the shutdown-cost folding: for any stopping set S,
// the total reward of "run while in S, pay the shutdown cost of the state
// you exit from" under the original data must equal f~^S - d on S, where
// f~ is the reward measure of the normalized project. The left side is
// solved here from its own defining linear system.
TEST_CASE("folded rewards reproduce exit-charged net earnings") {
    const ProjectSpec s = demo3(0.3, 0.2);
    const NormalizedProjectSpec t = normalize(s);
    const int n = s.n();
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> S;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) S.push_back(i);
        const int k = static_cast<int>(S.size());
        Eigen::MatrixXd A(k, k);
        Eigen::VectorXd b(k);
        for (int a = 0; a < k; ++a) {
            b(a) = s.R(S[a]);
            for (int j = 0; j < n; ++j)
                if (!(mask & (1 << j))) b(a) -= s.beta * s.P(S[a], j) * s.d(j);
            for (int bcol = 0; bcol < k; ++bcol)
                A(a, bcol) = (a == bcol ? 1.0 : 0.0) - s.beta * s.P(S[a], S[bcol]);
        }
        const Eigen::VectorXd F = A.partialPivLu().solve(b);

        // Reward measure of the normalized project on the same set.
        Eigen::VectorXd bn(k);
        for (int a = 0; a < k; ++a) bn(a) = t.R(S[a]);
        const Eigen::VectorXd fTilde = A.partialPivLu().solve(bn);
        for (int a = 0; a < k; ++a)
            CHECK(F(a) == doctest::Approx(fTilde(a) - s.d(S[a])).epsilon(1e-12));
    }
}
