#pragma once

// Euler-Lagrange derivation.  E(L) is computed from the operator
// definition and solved for the top derivative; the closed-form display
// for the 4th-order case is kept as a cross-check.

#include <stdexcept>
#include <string>
#include <utility>

#include "odeinv/jet.hpp"
#include "odeinv/zerotest.hpp"

namespace odeinv {

struct DegenerateLagrangianError : std::runtime_error {
    explicit DegenerateLagrangianError(const std::string& msg)
        : std::runtime_error(msg) {}
};

namespace detail {

// truncated total derivative on the 4-jet (x,y,p,q,r,u)
inline Expr d4(const Expr& e) {
    return diff(e, "x") + Expr::variable("p") * diff(e, "y") +
           Expr::variable("q") * diff(e, "p") + Expr::variable("r") * diff(e, "q") +
           Expr::variable("u") * diff(e, "r");
}

// truncated total derivative on the pair 3-jet (x,y^s,p^s,q^s,r^s)
inline Expr d3pair(const Expr& e) {
    return diff(e, "x") + Expr::variable("p1") * diff(e, "y1") +
           Expr::variable("p2") * diff(e, "y2") +
           Expr::variable("q1") * diff(e, "p1") +
           Expr::variable("q2") * diff(e, "p2") +
           Expr::variable("r1") * diff(e, "q1") +
           Expr::variable("r2") * diff(e, "q2");
}

inline Expr el_ode4_closed_form(const Expr& L) {
    Expr p = Expr::variable("p"), q = Expr::variable("q"), r = Expr::variable("r");
    auto d = [&](const Expr& e, const char* v) { return diff(e, v); };
    Expr Lq = d(L, "q");
    Expr Lqq = d(Lq, "q"), Lqqq = d(Lqq, "q");
    Expr Lqp = d(Lq, "p"), Lqpp = d(Lqp, "p"), Lqy = d(Lq, "y");
    Expr Lqyy = d(Lqy, "y"), Lqqp = d(Lqq, "p"), Lqqy = d(Lqq, "y");
    Expr Lqqx = d(Lqq, "x"), Lqpy = d(Lqp, "y"), Lqpx = d(Lqp, "x");
    Expr Lp = d(L, "p"), Lpp = d(Lp, "p"), Lpy = d(Lp, "y"), Lpx = d(Lp, "x");
    Expr Lqyx = d(Lqy, "x"), Lqxx = d(d(Lq, "x"), "x");
    Expr bracket =
        Lqqq * r * r + Lqpp * q * q + Lqyy * p * p +
        Expr::number(2) * (Lqqp * q + Lqqy * p + Lqqx) * r +
        (Expr::number(2) * Lqpy * p + Expr::number(2) * Lqpx + Lqy - Lpp) * q +
        (Expr::number(2) * Lqyx - Lpy) * p + Lqxx - Lpx + diff(L, "y");
    return Expr::div(-bracket, Lqq);
}

}  // namespace detail

// Euler-Lagrange ODE of a non-degenerate 2nd-order Lagrangian L(x,y,p,q):
// returns f with y'''' = f(x,y,p,q,r)
inline Expr el_ode4(const Expr& L, const ZeroTestConfig& cfg = {},
                    bool cross_check = true) {
    Expr E = diff(L, "y") - detail::d4(diff(L, "p")) +
             detail::d4(detail::d4(diff(L, "q")));
    Expr cu = diff(E, "u");  // = L_qq
    if (is_zero(cu, cfg).zero)
        throw DegenerateLagrangianError("L_qq vanishes identically");
    Expr f = Expr::div(-substitute(E, "u", Expr::number(0)), cu);
    if (cross_check) {
        Expr resid = f - detail::el_ode4_closed_form(L);
        if (!is_zero(resid, cfg).zero)
            throw std::logic_error("el_ode4: closed-form cross-check failed");
    }
    return f;
}

// Euler-Lagrange pair of a degenerate 2nd-order Lagrangian
// L = L1 q1 + L2 q2 + L0 with L1,L2,L0 over (x,y1,y2,p1,p2)
inline std::pair<Expr, Expr> el_pair3(const Expr& L1, const Expr& L2,
                                      const Expr& L0,
                                      const ZeroTestConfig& cfg = {}) {
    Expr L = L1 * Expr::variable("q1") + L2 * Expr::variable("q2") + L0;
    auto D = detail::d3pair;
    Expr E1 = diff(L, "y1") - D(diff(L, "p1")) + D(D(L1));
    Expr E2 = diff(L, "y2") - D(diff(L, "p2")) + D(D(L2));
    Expr mu = diff(E1, "r2");  // = L1_{p2} - L2_{p1}
    if (is_zero(mu, cfg).zero)
        throw DegenerateLagrangianError("L1_{p2} - L2_{p1} vanishes identically");
    std::map<std::string, Expr> zero_r{{"r1", Expr::number(0)},
                                       {"r2", Expr::number(0)}};
    Expr G1 = substitute(E1, zero_r);
    Expr G2 = substitute(E2, zero_r);
    // E1 = mu r2 + G1, E2 = -mu r1 + G2
    Expr f1 = Expr::div(G2, mu);
    Expr f2 = Expr::div(-G1, mu);
    return {f1, f2};
}

}  // namespace odeinv
