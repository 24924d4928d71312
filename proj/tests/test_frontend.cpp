#include <catch_amalgamated.hpp>

#include "odeinv/parse.hpp"
#include "odeinv/problem.hpp"
#include "testutil.hpp"

using namespace odeinv;
using testutil::num;
using testutil::var;

namespace {

ParseContext ode4_ctx() {
    ParseContext ctx;
    ctx.variables = {"x", "y", "p", "q", "r"};
    ctx.functions["L"] = {"x", "y", "p", "q"};
    ctx.functions["g"] = {"y", "p"};
    return ctx;
}

}  // namespace

TEST_CASE("expression grammar") {
    auto ctx = ode4_ctx();
    Expr sub = Expr::div(num(4) * Expr::pow(var("r"), 2), num(3) * var("q"));
    CHECK(equal(parse_expr("(4*r^2)/(3*q)", ctx), sub));
    CHECK(equal(parse_expr("4*r^2/(3*q)", ctx), sub));
    CHECK(equal(parse_expr("L[q,q,q]^2", ctx),
                Expr::pow(Expr::jet("L", {"x", "y", "p", "q"}, {"q", "q", "q"}), 2)));
    CHECK(equal(parse_expr("L[]", ctx), Expr::jet("L", {"x", "y", "p", "q"}, {})));
    CHECK(equal(parse_expr(" 7 / 2 ", ctx), num(7, 2)));
    CHECK(equal(parse_expr("-x^2", ctx), -Expr::pow(var("x"), 2)));
    CHECK(equal(parse_expr("x^-2", ctx), Expr::pow(var("x"), -2)));
    CHECK(equal(parse_expr("2^3", ctx), num(8)));
    // multi-index order is irrelevant
    CHECK(equal(parse_expr("L[q,p]", ctx), parse_expr("L[p,q]", ctx)));
}

TEST_CASE("parse errors carry positions") {
    auto ctx = ode4_ctx();
    try {
        parse_expr("q +\n z", ctx);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column >= 2);
    }
    CHECK_THROWS_AS(parse_expr("L[z]", ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("(q", ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("q + ", ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("h[p]", ctx), ParseError);  // undeclared function
    CHECK_THROWS_AS(parse_expr("L", ctx), ParseError);     // function w/o index
}

TEST_CASE("print / parse round trip (property)") {
    auto ctx = ode4_ctx();
    SplitMix64 rng(2024);
    std::vector<std::string> vars(ctx.variables.begin(), ctx.variables.end());
    std::vector<Expr> jets = {Expr::jet("g", {"y", "p"}, {"p"}),
                              Expr::jet("L", {"x", "y", "p", "q"}, {"q", "q"})};
    for (int i = 0; i < 30; ++i) {
        Expr e = testutil::random_expr(rng, vars, jets, 3);
        Expr back = parse_expr(to_string(e), ctx);
        CHECK(equal(e, back));
    }
}

TEST_CASE("problem files") {
    auto p = parse_problem("kind = ode4\nf = (4*r^2)/(3*q)\n");
    CHECK(p.kind == ProblemKind::Ode4);
    CHECK_THROWS_AS(parse_problem("kind = ode4\n"), SchemaError);
    CHECK_THROWS_AS(parse_problem("f = q\n"), SchemaError);
    CHECK_THROWS_AS(parse_problem("kind = ode4\nf = q\ng = q\n"), SchemaError);
    CHECK_THROWS_AS(parse_problem("kind = bogus\n"), SchemaError);

    auto lp = parse_problem(
        "kind = lagrangian2\ndeclare h1(x,y,p)\nL = h1[]/(q+1)\n");
    CHECK(lp.kind == ProblemKind::Lagrangian2ndScalar);
    CHECK(lp.ctx.functions.count("h1") == 1);

    auto pair = parse_problem("kind = ode3pair\nf1 = q1^2\nf2 = 0\n");
    CHECK(pair.kind == ProblemKind::Ode3Pair);

    // comments and blank lines
    auto c = parse_problem("# a comment\nkind = monge\n\nF = q^2/2  # tail\n");
    CHECK(c.kind == ProblemKind::MongeForm);

    // declarations must use coordinates of the kind
    CHECK_THROWS_AS(parse_problem("kind = ode4\ndeclare g(z)\nf = 0\n"),
                    SchemaError);
}

TEST_CASE("orthopath problem files") {
    auto p = parse_problem(
        "kind = orthopath\n"
        "signature = (1,1)\n"
        "declare kappa()\n"
        "R[1,1] = kappa[]\n"
        "R[2,2] = -kappa[]\n"
        "I[1,1,2] = 3\n"
        "J[1] = 1/2\n");
    REQUIRE(p.finsler.has_value());
    CHECK(p.finsler->sig.plus == 1);
    CHECK(p.finsler->sig.minus == 1);
    // symmetric fill of I
    CHECK(equal(p.finsler->I.at({1, 0, 0}), testutil::num(3)));
    CHECK(equal(p.finsler->I.at({0, 1, 0}), testutil::num(3)));
    CHECK_THROWS_AS(parse_problem("kind = orthopath\nI[1,1,1] = 1\n"), SchemaError);
    CHECK_THROWS_AS(
        parse_problem("kind = orthopath\nsignature = (1,1)\nI[1,3,1] = 1\n"),
        SchemaError);
    CHECK_THROWS_AS(parse_problem("kind = orthopath\nsignature = (1,1)\n"
                                  "I[1,1,2] = 1\nI[1,2,1] = 2\n"),
                    SchemaError);
}
