#include <catch_amalgamated.hpp>

#include "odeinv/euler_lagrange.hpp"
#include "odeinv/pair3.hpp"
#include "testutil.hpp"

using namespace odeinv;
using testutil::num;
using testutil::var;

TEST_CASE("scalar Euler-Lagrange basics") {
    Expr q = var("q"), y = var("y");
    CHECK(el_ode4(q * q * num(1, 2)).is_zero_literal());
    CHECK(is_zero(el_ode4(q * q * num(1, 2) + y * y * num(1, 2)) + y).zero);
    CHECK_THROWS_AS(el_ode4(var("p") * var("p")), DegenerateLagrangianError);
}

TEST_CASE("scalar Euler-Lagrange matches the closed form for opaque L") {
    Expr L = Expr::jet("L", {"x", "y", "p", "q"}, {});
    // the cross-check inside el_ode4 asserts the closed form
    Expr f = el_ode4(L);
    CHECK(!f.is_zero_literal());
}

TEST_CASE("el output is quadratic in r") {
    SplitMix64 rng(5);
    for (int i = 0; i < 4; ++i) {
        Expr L = testutil::random_poly(rng, {"x", "y", "p", "q"}, 4, 3) +
                 Expr::pow(var("q"), 3) + var("q") * var("q");
        Expr f = el_ode4(L, ZeroTestConfig{}, false);
        CHECK(is_zero(diff(diff(diff(f, "r"), "r"), "r")).zero);
    }
}

TEST_CASE("divergence-equivalent Lagrangians give the same ODE") {
    Expr L = Expr::jet("L", {"x", "y", "p", "q"}, {});
    Expr F = Expr::jet("F", {"x", "y", "p"}, {});
    Expr DF = diff(F, "x") + var("p") * diff(F, "y") + var("q") * diff(F, "p");
    Expr f1 = el_ode4(L, ZeroTestConfig{}, false);
    Expr f2 = el_ode4(num(5) * L + DF, ZeroTestConfig{}, false);
    CHECK(is_zero(f1 - f2).zero);
}

TEST_CASE("pair Euler-Lagrange basics") {
    Expr p1 = var("p1"), p2 = var("p2");
    auto [f1, f2] = el_pair3(p2, -p1, num(0));
    CHECK(f1.is_zero_literal());
    CHECK(f2.is_zero_literal());
    CHECK_THROWS_AS(el_pair3(p1, p2, num(0)), DegenerateLagrangianError);
}

TEST_CASE("pair Euler-Lagrange of the first-derivative family") {
    // L1 = g(p1,p2), L2 = h(p1,p2): operator derivation gives
    // f1 = q1 ((h_11 - g_12) q1 + (h_12 - g_22) q2) / (g_2 - h_1)
    std::vector<std::string> pp = {"p1", "p2"};
    auto jet = [&](const char* f, std::vector<std::string> ix) {
        return Expr::jet(f, pp, std::move(ix));
    };
    auto [f1, f2] = el_pair3(jet("g", {}), jet("h", {}), num(0));
    Expr mu = jet("g", {"p2"}) - jet("h", {"p1"});
    Expr q1 = var("q1"), q2 = var("q2");
    Expr expect1 = Expr::div(
        q1 * ((jet("h", {"p1", "p1"}) - jet("g", {"p1", "p2"})) * q1 +
              (jet("h", {"p1", "p2"}) - jet("g", {"p2", "p2"})) * q2),
        mu);
    Expr expect2 = Expr::div(
        q2 * ((jet("h", {"p1", "p1"}) - jet("g", {"p1", "p2"})) * q1 +
              (jet("h", {"p1", "p2"}) - jet("g", {"p2", "p2"})) * q2),
        mu);
    CHECK(is_zero(f1 - expect1).zero);
    CHECK(is_zero(f2 - expect2).zero);
}

TEST_CASE("pair Euler-Lagrange closure (oracle)") {
    std::vector<std::string> a = {"x", "y1", "y2", "p1", "p2"};
    Expr L1 = Expr::jet("La", a, {});
    Expr L2 = Expr::jet("Lb", a, {});
    Expr L0 = Expr::jet("Lc", a, {});
    auto [f1, f2] = el_pair3(L1, L2, L0);
    auto v = is_variational_pair(f1, f2);
    CHECK(v.variational);
}
