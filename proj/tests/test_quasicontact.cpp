#include <catch_amalgamated.hpp>

#include "odeinv/quasicontact.hpp"
#include "testutil.hpp"

using namespace odeinv;
using testutil::num;
using testutil::var;

TEST_CASE("symmetry norm") {
    CHECK(symmetry_norm_ode4(num(0)).null_symmetry);
    Expr sub = Expr::div(num(4) * var("r") * var("r"), num(3) * var("q"));
    auto rep = symmetry_norm_ode4(sub);
    CHECK(!rep.null_symmetry);
    CHECK(is_zero(rep.c0 + Expr::div(num(20, 9), var("q") * var("q"))).zero);
    CHECK_THROWS_AS(symmetry_norm_ode4(Expr::pow(var("r"), 3)),
                    NotVariationalError);
}

TEST_CASE("Monge metric component") {
    Expr q = var("q");
    CHECK(monge_metric(q * q * num(1, 2)).is_zero_literal());
    CHECK_THROWS_AS(monge_metric(q), DegenerateMongeError);
    // null family instance F = 1/q
    CHECK(is_zero(monge_metric(Expr::div(num(1), q))).zero);
}

TEST_CASE("Monge / c0 consistency for an opaque Monge form") {
    Expr F = Expr::jet("F", {"x", "y", "p", "q"}, {});
    Expr f = el_ode4(F, ZeroTestConfig{}, false);
    Expr Fqq = Expr::jet("F", {"x", "y", "p", "q"}, {"q", "q"});
    Expr resid =
        invariants_ode4(f).c0 + num(40) * Fqq * Fqq * monge_metric(F);
    CHECK(is_zero(resid).zero);
}

TEST_CASE("Monge / c0 consistency on random polynomial forms (property)") {
    SplitMix64 rng(314);
    int done = 0;
    for (int i = 0; i < 6 && done < 3; ++i) {
        Expr F = testutil::random_poly(rng, {"x", "y", "p", "q"}, 4, 2) +
                 Expr::pow(var("q"), 3);
        Expr Fqq = diff(diff(F, "q"), "q");
        if (is_zero(Fqq).zero) continue;
        ++done;
        Expr f = el_ode4(F, ZeroTestConfig{}, false);
        Expr resid = invariants_ode4(f).c0 + num(40) * Fqq * Fqq * monge_metric(F);
        CHECK(is_zero(resid).zero);
    }
    CHECK(done >= 1);
}

TEST_CASE("null-symmetry Lagrangian family") {
    CHECK_THROWS_AS(null_family_lagrangian(num(0), num(0), num(0), num(0)),
                    DegenerateFamilyError);
    // L = 1/q: c0 vanishes
    Expr L1 = null_family_lagrangian(num(1), num(0), num(0), num(0));
    CHECK(is_zero(invariants_ode4(el_ode4(L1, ZeroTestConfig{}, false)).c0).zero);
    // opaque h1..h4
    std::vector<std::string> a = {"x", "y", "p"};
    Expr L = null_family_lagrangian(Expr::jet("h1", a, {}), Expr::jet("h2", a, {}),
                                    Expr::jet("h3", a, {}), Expr::jet("h4", a, {}));
    Expr f = el_ode4(L, ZeroTestConfig{}, false);
    CHECK(is_zero(invariants_ode4(f).c0).zero);
    // and the ODE is variational with null symmetry
    auto rep = symmetry_norm_ode4(f);
    CHECK(rep.null_symmetry);
}

TEST_CASE("null family with polynomial data classifies as null (property)") {
    SplitMix64 rng(2718);
    for (int i = 0; i < 2; ++i) {
        Expr h1 = testutil::random_poly(rng, {"x", "y", "p"}, 2, 1) + num(1);
        Expr h2 = testutil::random_poly(rng, {"x", "y", "p"}, 2, 1);
        Expr h3 = testutil::random_poly(rng, {"x", "y", "p"}, 2, 1);
        Expr h4 = testutil::random_poly(rng, {"x", "y", "p"}, 2, 1);
        if (is_zero(h1).zero) continue;
        Expr L = null_family_lagrangian(h1, h2, h3, h4);
        Expr f = el_ode4(L, ZeroTestConfig{}, false);
        auto cls = classify_235(f);
        CHECK(cls.variational);
        CHECK(cls.null_symmetry);
    }
}
