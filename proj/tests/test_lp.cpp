#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "posreal/error.hpp"
#include "posreal/lp.hpp"

using namespace posreal;
using namespace posreal::lp;

namespace {

Eigen::RowVectorXd row(std::initializer_list<double> v) {
    Eigen::RowVectorXd r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) r(i++) = x;
    return r;
}

}  // namespace

TEST_CASE("interval feasibility") {
    auto p = LinearFeasibilityProblem::with_vars(1);
    p.add_inequality(row({1.0}), 1.0);
    p.add_inequality(row({-1.0}), 0.0);
    const auto out = solve_feasibility(p);
    REQUIRE(out.feasible());
    CHECK(out.point(0) >= -1e-9);
    CHECK(out.point(0) <= 1.0 + 1e-9);
}

TEST_CASE("contradictory equality and inequality") {
    auto p = LinearFeasibilityProblem::with_vars(1);
    p.add_equality(row({1.0}), 1.0);
    p.add_inequality(row({1.0}), 0.0);
    const auto out = solve_feasibility(p);
    CHECK_FALSE(out.feasible());
    CHECK(out.max_violation > 1e-9);
    CHECK(out.point.size() == 0);
}

TEST_CASE("single-variable convolution system for z^3 - 1 at dimension 3") {
    // rows (a*q)_1..3 with q scalar: coefficients 0, 0, -1
    auto p = LinearFeasibilityProblem::with_vars(1);
    p.add_inequality(row({0.0}), 0.0);
    p.add_inequality(row({0.0}), 0.0);
    p.add_inequality(row({-1.0}), 0.0);
    p.add_equality(row({1.0}), 1.0);
    const auto out = solve_feasibility(p);
    REQUIRE(out.feasible());
    CHECK(out.point(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("free variables may go negative") {
    auto p = LinearFeasibilityProblem::with_vars(2);
    p.add_equality(row({1.0, 1.0}), -3.0);
    p.add_inequality(row({1.0, 0.0}), -2.0);
    const auto out = solve_feasibility(p);
    REQUIRE(out.feasible());
    CHECK(out.point(0) <= -2.0 + 1e-9);
    CHECK(out.point(0) + out.point(1) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("shape validation") {
    auto p = LinearFeasibilityProblem::with_vars(2);
    p.ineq_matrix = Eigen::MatrixXd::Zero(1, 3);
    p.ineq_rhs = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(solve_feasibility(p), Error);
    auto q = LinearFeasibilityProblem::with_vars(1);
    q.ineq_matrix = Eigen::MatrixXd::Zero(2, 1);
    q.ineq_rhs = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("fuzz: systems feasible by construction") {
    auto g = oracle::rng(2024);
    std::uniform_int_distribution<int> nv(1, 30), extra(0, 30), neq(0, 3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> slack(0.0, 1.0);
    int with_slack_zero = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = nv(g);
        const int m = n / 2 + extra(g);
        const int e = std::min(neq(g), n);
        Eigen::VectorXd x0(n);
        for (int i = 0; i < n; ++i) x0(i) = gauss(g);
        auto p = LinearFeasibilityProblem::with_vars(n);
        for (int r = 0; r < m; ++r) {
            Eigen::RowVectorXd a(n);
            for (int i = 0; i < n; ++i) a(i) = gauss(g);
            // a quarter of the rows are tight at x0
            const double s = trial % 4 == 0 && r % 2 == 0 ? 0.0 : slack(g);
            with_slack_zero += s == 0.0;
            p.add_inequality(a, a.dot(x0) + s);
        }
        for (int r = 0; r < e; ++r) {
            Eigen::RowVectorXd a(n);
            for (int i = 0; i < n; ++i) a(i) = gauss(g);
            p.add_equality(a, a.dot(x0));
        }
        const auto out = solve_feasibility(p);
        REQUIRE_MESSAGE(out.feasible(), "trial " << trial);
        CHECK(out.max_violation <= 1e-9);
        CHECK(max_violation(p, out.point) <= 1e-9);
    }
    CHECK(with_slack_zero > 0);
}

TEST_CASE("fuzz: infeasible strips") {
    // c.x <= -1 together with c.x >= 1 on top of random feasible rows
    auto g = oracle::rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 20;
        auto p = LinearFeasibilityProblem::with_vars(n);
        Eigen::RowVectorXd c(n);
        for (int i = 0; i < n; ++i) c(i) = gauss(g);
        p.add_inequality(c, -1.0);
        p.add_inequality(-c, -1.0);
        for (int r = 0; r < n; ++r) {
            Eigen::RowVectorXd a(n);
            for (int i = 0; i < n; ++i) a(i) = gauss(g);
            p.add_inequality(a, 1.0);
        }
        CHECK_FALSE(solve_feasibility(p).feasible());
    }
}

TEST_CASE("identical inputs give identical outcomes") {
    auto g = oracle::rng(8);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 10;
        auto p = LinearFeasibilityProblem::with_vars(n);
        for (int r = 0; r < 15; ++r) {
            Eigen::RowVectorXd a(n);
            for (int i = 0; i < n; ++i) a(i) = gauss(g);
            p.add_inequality(a, gauss(g));
        }
        const auto a = solve_feasibility(p), b = solve_feasibility(p);
        CHECK(a.status == b.status);
        CHECK(a.iterations == b.iterations);
        REQUIRE(a.point.size() == b.point.size());
        for (Eigen::Index i = 0; i < a.point.size(); ++i) CHECK(a.point(i) == b.point(i));
    }
}
