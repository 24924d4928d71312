#pragma once

// Built-in golden-example checks, runnable via the CLI `selftest`
// subcommand.  Each case throws on mismatch; the runner stops at the
// first failure and names the case.

#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "odeinv/coframe.hpp"
#include "odeinv/euler_lagrange.hpp"
#include "odeinv/jet.hpp"
#include "odeinv/ode4.hpp"
#include "odeinv/orthopath.hpp"
#include "odeinv/pair3.hpp"
#include "odeinv/parse.hpp"
#include "odeinv/problem.hpp"
#include "odeinv/quasicontact.hpp"
#include "odeinv/zerotest.hpp"

namespace odeinv {

struct SelftestCase {
    std::string name;
    std::function<void(const ZeroTestConfig&)> run;
};

namespace selftest_detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

inline void require_zero(const Expr& e, const ZeroTestConfig& cfg,
                         const std::string& what) {
    auto z = is_zero(e, cfg);
    if (!z.zero)
        throw std::runtime_error(what + ": expected zero, witness value " +
                                 rational_str(z.witness->value));
}

inline void require_nonzero(const Expr& e, const ZeroTestConfig& cfg,
                            const std::string& what) {
    if (is_zero(e, cfg).zero)
        throw std::runtime_error(what + ": expected nonzero, verdict was zero");
}

inline Expr submax_f() {
    Expr r = Expr::variable("r"), q = Expr::variable("q");
    return Expr::div(Expr::number(4) * r * r, Expr::number(3) * q);
}

inline Expr opaque(const std::string& name, std::vector<std::string> args,
                   std::vector<std::string> index = {}) {
    return Expr::jet(name, std::move(args), std::move(index));
}

// f = (q/p) g_p + g_y for an opaque g(y,p)
inline Expr family_type_n() {
    Expr q = Expr::variable("q"), p = Expr::variable("p");
    Expr gp = opaque("g", {"y", "p"}, {"p"});
    Expr gy = opaque("g", {"y", "p"}, {"y"});
    return Expr::div(q, p) * gp + gy;
}

}  // namespace selftest_detail

inline std::vector<SelftestCase> selftest_cases() {
    using namespace selftest_detail;
    std::vector<SelftestCase> cases;
    auto add = [&](const std::string& name,
                   std::function<void(const ZeroTestConfig&)> fn) {
        cases.push_back({name, std::move(fn)});
    };
    auto n = [](std::int64_t a, std::int64_t b = 1) { return Expr::number(a, b); };

    // --- expression engine ---
    add("diff.leibniz", [n](const ZeroTestConfig& cfg) {
        Expr q = Expr::variable("q");
        Expr f = opaque("f", {"x", "y", "p", "q", "r"}, {"q"});
        Expr fqq = opaque("f", {"x", "y", "p", "q", "r"}, {"q", "q"});
        require_zero(diff(q * f, "q") - (f + q * fqq), cfg, "leibniz");
    });
    add("diff.power-rule", [n](const ZeroTestConfig& cfg) {
        Expr r = Expr::variable("r"), q = Expr::variable("q");
        require_zero(diff(submax_f(), "r") - Expr::div(n(8) * r, n(3) * q), cfg,
                     "power rule");
    });
    add("diff.constant", [n](const ZeroTestConfig&) {
        require(diff(n(7, 3), "y").is_zero_literal(), "constant rule");
    });
    add("substitute.basic", [n](const ZeroTestConfig& cfg) {
        Expr u = Expr::variable("u"), r = Expr::variable("r");
        Expr f0 = opaque("f", {});
        require_zero(substitute(u + r, "u", f0) - (f0 + r), cfg, "substitute");
        Expr q = Expr::variable("q");
        require(substitute(q * q, "q", n(0)).is_zero_literal(), "q^2 | q=0");
        require(equal(substitute(Expr::variable("x"), "y", f0), Expr::variable("x")),
                "no-occurrence substitution");
    });
    add("eval.rational", [n](const ZeroTestConfig&) {
        Assignment a;
        a.vars["r"] = make_rational(2);
        a.vars["q"] = make_rational(3);
        require(eval(submax_f(), a) == make_rational(16, 9), "16/9");
        a.vars["q"] = make_rational(0);
        bool poled = false;
        try {
            eval(submax_f(), a);
        } catch (const PoleError&) {
            poled = true;
        }
        require(poled, "pole at q=0");
        Assignment b;
        b.jets["f[q]"] = make_rational(7, 2);
        b.vars["p"] = make_rational(2);
        require(eval(opaque("f", {"x", "y", "p", "q", "r"}, {"q"}) *
                         Expr::variable("p"),
                     b) == make_rational(7),
                "jet symbol evaluation");
    });
    add("is_zero.basic", [](const ZeroTestConfig& cfg) {
        Expr q = Expr::variable("q");
        require(is_zero(q - q, cfg).zero, "q - q");
        require(!is_zero(opaque("f", {"x", "y", "p", "q", "r"}, {"r", "r", "r"}),
                         cfg)
                     .zero,
                "independent jet symbol");
    });
    add("normalize.examples", [n](const ZeroTestConfig&) {
        Expr x = Expr::variable("x"), y = Expr::variable("y"), q = Expr::variable("q");
        require(equal(normalize(n(1) * x + n(0)), x), "1*x + 0");
        require(equal(normalize(n(2, 4) * q), n(1, 2) * q), "(2/4)*q");
        require(equal(normalize(Expr::div(x * y, x)), y), "x*y/x");
    });

    // --- jet contexts ---
    add("jet.total-derivative", [n](const ZeroTestConfig& cfg) {
        Expr fop = opaque("f", {"x", "y", "p", "q", "r"});
        auto ctx = JetContext::ode4(fop);
        require_zero(total_derivative(ctx, Expr::variable("y")) -
                         Expr::variable("p"),
                     cfg, "D(y) = p");
        require_zero(total_derivative(ctx, Expr::variable("r")) - fop, cfg,
                     "D(r) = f");
        auto sub = JetContext::ode4(submax_f());
        Expr r = Expr::variable("r"), q = Expr::variable("q");
        require_zero(total_derivative(sub, diff(submax_f(), "r")) -
                         Expr::div(n(8) * r * r, n(9) * q * q),
                     cfg, "D(f_r) on the submaximal ODE");
    });

    // --- coframe ---
    add("coframe.flat-rows", [n](const ZeroTestConfig& cfg) {
        auto c = adapted_coframe_ode4(n(0));
        require(equal(c.rows[4][4], n(-9, 4)), "theta1 | dr = -9/4");
        for (int j = 0; j < 4; ++j)
            require(c.rows[4][j].is_zero_literal(), "theta1 other entries vanish");
        require(equal(c.rows[3][0], n(1, 3)), "w0 = 1/3 dx");
        Expr fop = opaque("f", {"x", "y", "p", "q", "r"});
        auto cg = adapted_coframe_ode4(fop);
        require(equal(cg.rows[0][0], -Expr::variable("p")) &&
                    equal(cg.rows[0][1], n(1)),
                "w3 = dy - p dx");
        require_zero(coframe_determinant(cg) - n(-9, 16), cfg,
                     "coframe determinant");
    });
    add("coframe.flat-duals", [n](const ZeroTestConfig& cfg) {
        auto fr = invert_coframe(adapted_coframe_ode4(n(0)));
        // dual of theta1 = -4/9 d/dr
        require(equal(fr.cols[4][4], n(-4, 9)), "dual(theta1) = -4/9 dr");
        for (int k = 0; k < 4; ++k)
            require(fr.cols[k][4].is_zero_literal(), "dual(theta1) pure dr");
        // dual of w0 = 3 dx + 3p dy + 3q dp + 3r dq
        require(equal(fr.cols[0][3], n(3)), "dual(w0) x-component");
        require_zero(fr.cols[1][3] - n(3) * Expr::variable("p"), cfg, "3p");
        require_zero(fr.cols[2][3] - n(3) * Expr::variable("q"), cfg, "3q");
        require_zero(fr.cols[3][3] - n(3) * Expr::variable("r"), cfg, "3r");
        require(equal(coframe_derivative(fr, Expr::variable("q"), CoframeSlot::Theta1),
                      n(0)),
                "theta1-derivative of q vanishes");
        require(equal(coframe_derivative(fr, Expr::variable("r"), CoframeSlot::Theta1),
                      n(-4, 9)),
                "theta1-derivative of r");
    });
    add("coframe.inverse-pairing", [n](const ZeroTestConfig& cfg) {
        Expr fop = opaque("f", {"x", "y", "p", "q", "r"});
        auto c = adapted_coframe_ode4(fop);
        auto fr = invert_coframe(c);
        // <theta1-dual, w3> = 0
        Expr pair = Expr::number(0);
        for (int k = 0; k < 5; ++k) pair = pair + c.rows[0][k] * fr.cols[k][4];
        require_zero(pair, cfg, "pairing dual(theta1) with w3");
    });

    // --- 4th-order invariants ---
    add("ode4.flat", [n](const ZeroTestConfig&) {
        auto inv = invariants_ode4(n(0));
        require(inv.c1.is_zero_literal() && inv.c0.is_zero_literal() &&
                    inv.w1.is_zero_literal() && inv.w0.is_zero_literal(),
                "flat ODE invariants vanish");
    });
    add("ode4.submaximal", [n](const ZeroTestConfig& cfg) {
        auto inv = invariants_ode4(submax_f());
        require_zero(inv.c1, cfg, "c1");
        require_zero(inv.w1, cfg, "w1");
        require_zero(inv.w0, cfg, "w0");
        Expr q = Expr::variable("q");
        require_zero(inv.c0 + Expr::div(n(20, 9), q * q), cfg,
                     "c0 = -20/(9 q^2) (calibrated; see README)");
    });
    add("ode4.el-closure", [](const ZeroTestConfig& cfg) {
        Expr L = opaque("L", {"x", "y", "p", "q"});
        Expr f = el_ode4(L, cfg);
        auto inv = invariants_ode4(f);
        require_zero(inv.c1, cfg, "c1 of an Euler-Lagrange ODE");
        require_zero(inv.w1, cfg, "w1 of an Euler-Lagrange ODE");
    });
    add("ode4.c0-closed-form", [n](const ZeroTestConfig& cfg) {
        Expr L = opaque("L", {"x", "y", "p", "q"});
        Expr f = el_ode4(L, cfg, /*cross_check=*/false);
        Expr Lqq = opaque("L", {"x", "y", "p", "q"}, {"q", "q"});
        Expr Lqqq = opaque("L", {"x", "y", "p", "q"}, {"q", "q", "q"});
        Expr Lqqqq = opaque("L", {"x", "y", "p", "q"}, {"q", "q", "q", "q"});
        Expr closed = Expr::div(n(4) * Lqqq * Lqqq - n(3) * Lqqqq * Lqq, Lqq * Lqq);
        require_zero(invariants_ode4(f).c0 - closed, cfg, "c0 closed form");
    });
    add("ode4.variational-verdicts", [n](const ZeroTestConfig& cfg) {
        require(is_variational_ode4(n(0), cfg).variational, "flat is variational");
        require(is_variational_ode4(submax_f(), cfg).variational,
                "submaximal ODE is variational");
        Expr r = Expr::variable("r"), y = Expr::variable("y");
        auto v1 = is_variational_ode4(Expr::pow(r, 3), cfg);
        require(!v1.variational && v1.failed_on == "c1", "r^3: witness on c1");
        auto v2 = is_variational_ode4(r * r + y, cfg);
        require(!v2.variational && v2.failed_on == "w1", "r^2 + y: witness on w1");
    });
    add("ode4.w1-family-witness", [n](const ZeroTestConfig& cfg) {
        // w1(r^2 + y) = 2p - 2ry
        Expr r = Expr::variable("r"), y = Expr::variable("y"), p = Expr::variable("p");
        auto inv = invariants_ode4(r * r + y);
        require_zero(inv.w1 - (n(2) * p - n(2) * r * y), cfg, "w1 closed form");
    });
    add("ode4.quartic-flat", [n](const ZeroTestConfig& cfg) {
        auto qc = cartan_quartic(n(0), cfg);
        require(qc.a0.is_zero_literal() && qc.a4.is_zero_literal(),
                "flat quartic vanishes");
    });
    add("ode4.type-n-family", [n](const ZeroTestConfig& cfg) {
        Expr f = family_type_n();
        auto chain = w0_theta_chain(f, 2);
        Expr p = Expr::variable("p");
        Expr gpp = opaque("g", {"y", "p"}, {"p", "p"});
        Expr gp = opaque("g", {"y", "p"}, {"p"});
        require_zero(invariants_ode4(f).c0, cfg, "c0 of the family");
        require_zero(chain[1] - Expr::div(gpp * p - gp, p * p), cfg,
                     "w0;1 of the family");
        require_zero(chain[2], cfg, "w0;11 of the family");
    });
    add("ode4.quartic-fifth-derivative", [](const ZeroTestConfig& cfg) {
        auto chain = w0_theta_chain(family_type_n(), 5);
        require_zero(chain[5], cfg, "w0;1^5 for a variational ODE");
    });
    add("ode4.multiplicity", [n](const ZeroTestConfig&) {
        auto mult = [](std::vector<Rational> c) {
            return binary_form_max_multiplicity(c);
        };
        require(mult({Rational(1), Rational(0), Rational(0), Rational(0),
                      Rational(0)}) == 4,
                "t^4 has multiplicity 4");
        require(mult({Rational(0), Rational(0), Rational(6), Rational(0),
                      Rational(0)}) == 2,
                "6 t^2 s^2 has multiplicity 2");
        require(mult({Rational(0), Rational(0), Rational(0), Rational(0),
                      Rational(0)}) == 5,
                "zero quartic is infinitely degenerate");
    });
    add("ode4.classification", [n](const ZeroTestConfig& cfg) {
        auto cls = classify_235(family_type_n(), cfg);
        require(cls.variational, "family is variational");
        require(cls.descends_to_j2, "descends to J2");
        require(!cls.holonomy_reduced, "holonomy not reduced for generic g");
        // g = h1(y) p^2 + h2(y): holonomy reduced, multiplicity >= 4
        Expr p = Expr::variable("p"), q = Expr::variable("q");
        Expr h1 = opaque("h1", {"y"});
        Expr h1y = opaque("h1", {"y"}, {"y"});
        Expr h2y = opaque("h2", {"y"}, {"y"});
        // f = (q/p) g_p + g_y with g = h1 p^2 + h2
        Expr fhol = Expr::div(q, p) * (n(2) * h1 * p) + (h1y * p * p + h2y);
        auto cls2 = classify_235(fhol, cfg);
        require(cls2.holonomy_reduced, "reduced for g = h1 p^2 + h2");
        for (int m : cls2.sampled_multiplicities)
            require(m >= 4, "sampled multiplicity >= 4");
    });

    // --- pairs of 3rd-order ODEs ---
    add("pair.trivial", [n](const ZeroTestConfig& cfg) {
        auto inv = invariants_pair(n(0), n(0));
        for (const Expr* e : {&inv.b10, &inv.b13, &inv.b20, &inv.b21, &inv.b22,
                              &inv.b30, &inv.b40, &inv.b41, &inv.b42, &inv.b50,
                              &inv.b60, &inv.b61, &inv.b62})
            require(e->is_zero_literal(), "trivial pair invariants vanish");
        require(is_variational_pair(n(0), n(0), cfg).variational,
                "trivial pair is variational");
    });
    add("pair.second-derivative-block", [n](const ZeroTestConfig& cfg) {
        Expr q1 = Expr::variable("q1");
        auto B = pair_building_blocks(q1 * q1, n(0));
        require_zero(B.E[0][0][0] - n(2), cfg, "E^1_11 = 2");
        require(B.E[1][0][0].is_zero_literal() && B.E[0][1][1].is_zero_literal(),
                "other second derivatives vanish");
    });
    add("pair.el-closure", [](const ZeroTestConfig& cfg) {
        std::vector<std::string> a = {"x", "y1", "y2", "p1", "p2"};
        Expr L1 = opaque("La", a), L2 = opaque("Lb", a), L0 = opaque("Lc", a);
        auto [f1, f2] = el_pair3(L1, L2, L0, cfg);
        auto v = is_variational_pair(f1, f2, cfg);
        require(v.variational,
                "Euler-Lagrange pair is variational (failed on " + v.failed_on + ")");
    });
    add("pair.degenerate-family", [n](const ZeroTestConfig& cfg) {
        std::vector<std::string> a = {"p1", "p2"};
        Expr g = opaque("g", a), h = opaque("h", a);
        auto [f1, f2] = el_pair3(g, h, n(0), cfg);
        auto v = is_variational_pair(f1, f2, cfg);
        require(v.variational, "degenerate-Lagrangian family is variational");
        auto inv = invariants_pair(f1, f2);
        require_nonzero(inv.b40 + inv.b41 + inv.b42, cfg,
                        "b4 generically nonzero on the family");
    });
    add("pair.divergence-family", [n](const ZeroTestConfig& cfg) {
        // f^s = g1 p^s + g_{2,3} with the divergence constraint
        // dy1 g2 + dy2 g3 - dx g1 = 0, realized exactly by
        // g1 = a(x), g2 = a'(x) y1 + c(x,y2), g3 = d(x,y1)
        Expr p1 = Expr::variable("p1"), p2 = Expr::variable("p2");
        Expr y1 = Expr::variable("y1");
        Expr g1 = opaque("a", {"x"});
        Expr g2 = opaque("a", {"x"}, {"x"}) * y1 + opaque("c", {"x", "y2"});
        Expr g3 = opaque("d", {"x", "y1"});
        Expr f1 = g1 * p1 + g2;
        Expr f2 = g1 * p2 + g3;
        auto v = is_variational_pair(f1, f2, cfg);
        require(v.variational, "divergence-constrained family is variational");
        auto inv = invariants_pair(f1, f2);
        require_zero(inv.b60, cfg, "b60 vanishes");
        require_zero(inv.b61, cfg, "b61 vanishes");
        require_zero(inv.b62, cfg, "b62 vanishes");
        require_nonzero(inv.b40, cfg, "b4 generically nonzero");
    });
    add("pair.nonvariational-witness", [n](const ZeroTestConfig& cfg) {
        Expr q1 = Expr::variable("q1");
        auto v = is_variational_pair(Expr::pow(q1, 3), n(0), cfg);
        require(!v.variational, "q1^3 pair is not variational");
        require(v.failed_on.rfind("b1", 0) == 0, "witness lies in the cubic b1");
    });
    add("pair.symmetry-nullity", [n](const ZeroTestConfig& cfg) {
        auto rep = pair_symmetry_nullity(n(0), n(0), cfg);
        require(rep.b50_zero && rep.variational && rep.null_symmetry_applicable,
                "trivial pair: null symmetry applies");
        Expr q1 = Expr::variable("q1");
        auto rep2 = pair_symmetry_nullity(Expr::pow(q1, 3), n(0), cfg);
        require(rep2.b50_zero && !rep2.null_symmetry_applicable,
                "non-variational pair: not applicable");
    });

    // --- Euler-Lagrange ---
    add("el.scalar-basics", [n](const ZeroTestConfig& cfg) {
        Expr q = Expr::variable("q"), y = Expr::variable("y");
        require(el_ode4(q * q * n(1, 2), cfg).is_zero_literal(), "L = q^2/2");
        require_zero(el_ode4(q * q * n(1, 2) + y * y * n(1, 2), cfg) + y, cfg,
                     "L = q^2/2 + y^2/2 gives f = -y");
        bool degenerate = false;
        try {
            el_ode4(Expr::variable("p") * Expr::variable("p"), cfg);
        } catch (const DegenerateLagrangianError&) {
            degenerate = true;
        }
        require(degenerate, "L = p^2 is degenerate");
    });
    add("el.divergence-invariance", [n](const ZeroTestConfig& cfg) {
        // el(L) == el(c L + D0 F) for constant c != 0 and F = F(x,y,p)
        Expr L = opaque("L", {"x", "y", "p", "q"});
        Expr F = opaque("F", {"x", "y", "p"});
        Expr DF = diff(F, "x") + Expr::variable("p") * diff(F, "y") +
                  Expr::variable("q") * diff(F, "p");
        Expr f1 = el_ode4(L, cfg, false);
        Expr f2 = el_ode4(n(3) * L + DF, cfg, false);
        require_zero(f1 - f2, cfg, "divergence-equivalent Lagrangians");
    });
    add("el.pair-basics", [n](const ZeroTestConfig& cfg) {
        Expr p1 = Expr::variable("p1"), p2 = Expr::variable("p2");
        auto [f1, f2] = el_pair3(p2, -p1, n(0), cfg);
        require(f1.is_zero_literal() && f2.is_zero_literal(),
                "L = p2 q1 - p1 q2 generates the trivial pair");
        bool degenerate = false;
        try {
            el_pair3(p1, p2, n(0), cfg);
        } catch (const DegenerateLagrangianError&) {
            degenerate = true;
        }
        require(degenerate, "mu = L1_p2 - L2_p1 = 0 rejected");
    });
    add("el.pair-displayed-family", [n](const ZeroTestConfig& cfg) {
        // L1 = g(p1,p2), L2 = h(p1,p2): f1 = q1 D(h_p1 - g_p2)/mu with
        // mu = g_p2 - h_p1 (operator-derived; the printed display swaps
        // the function subscripts)
        std::vector<std::string> pp = {"p1", "p2"};
        Expr g2 = opaque("g", pp, {"p2"}), h1 = opaque("h", pp, {"p1"});
        Expr g12 = opaque("g", pp, {"p1", "p2"}), g22 = opaque("g", pp, {"p2", "p2"});
        Expr h11 = opaque("h", pp, {"p1", "p1"}), h12 = opaque("h", pp, {"p1", "p2"});
        Expr q1 = Expr::variable("q1"), q2 = Expr::variable("q2");
        Expr mu = g2 - h1;
        auto [f1, f2] = el_pair3(opaque("g", pp), opaque("h", pp), n(0), cfg);
        Expr expect1 = Expr::div(q1 * ((h11 - g12) * q1 + (h12 - g22) * q2), mu);
        require_zero(f1 - expect1, cfg, "f1 of the degenerate family");
    });

    // --- quasi-contactification ---
    add("qc.monge-basics", [n](const ZeroTestConfig& cfg) {
        Expr q = Expr::variable("q");
        require(monge_metric(q * q * n(1, 2), cfg).is_zero_literal(),
                "F = q^2/2 gives zero metric component");
        bool degenerate = false;
        try {
            monge_metric(q, cfg);
        } catch (const DegenerateMongeError&) {
            degenerate = true;
        }
        require(degenerate, "F_qq = 0 rejected");
    });
    add("qc.monge-c0-consistency", [n](const ZeroTestConfig& cfg) {
        Expr F = opaque("F", {"x", "y", "p", "q"});
        Expr f = el_ode4(F, cfg, false);
        Expr Fqq = opaque("F", {"x", "y", "p", "q"}, {"q", "q"});
        Expr resid = invariants_ode4(f).c0 +
                     n(40) * Fqq * Fqq * monge_metric(F, cfg);
        require_zero(resid, cfg, "c0 + 40 F_qq^2 g(dz,dz)");
    });
    add("qc.null-family", [n](const ZeroTestConfig& cfg) {
        Expr q = Expr::variable("q");
        Expr L = Expr::div(n(1), q);  // h1=1, h2=h3=h4=0
        require_zero(invariants_ode4(el_ode4(L, cfg, false)).c0, cfg,
                     "c0 of L = 1/q");
        std::vector<std::string> hargs = {"x", "y", "p"};
        Expr Lfam = null_family_lagrangian(opaque("h1", hargs), opaque("h2", hargs),
                                           opaque("h3", hargs), opaque("h4", hargs),
                                           cfg);
        require_zero(invariants_ode4(el_ode4(Lfam, cfg, false)).c0, cfg,
                     "c0 of the null family");
        bool degenerate = false;
        try {
            null_family_lagrangian(n(0), n(0), n(0), n(0), cfg);
        } catch (const DegenerateFamilyError&) {
            degenerate = true;
        }
        require(degenerate, "h1 = 0 rejected");
    });
    add("qc.symmetry-norm", [n](const ZeroTestConfig& cfg) {
        require(symmetry_norm_ode4(n(0), cfg).null_symmetry, "flat: null");
        require(!symmetry_norm_ode4(submax_f(), cfg).null_symmetry,
                "submaximal: not null");
    });

    // --- orthopath ---
    add("orthopath.riemannian", [n](const ZeroTestConfig& cfg) {
        SignatureEps sig{2, 1};
        auto d = FinslerData::zero(sig);
        Expr kappa = opaque("kappa", {});
        for (int a = 0; a < 3; ++a)
            d.R.at({a, a}) = n(sig.eps(a)) * kappa;
        auto inv = orthopath_from_finsler(d, cfg);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                require_zero(inv.T.at({a, b}), cfg, "T vanishes");
                require_zero(inv.N.at({a, b}), cfg, "N vanishes");
                for (int c = 0; c < 3; ++c)
                    require_zero(inv.A.at({a, b, c}), cfg, "A vanishes");
            }
        require_zero(inv.q + n(1), cfg, "q = -1");
    });
    add("orthopath.zero-data", [n](const ZeroTestConfig& cfg) {
        auto d = FinslerData::zero(SignatureEps{1, 1});
        auto inv = orthopath_from_finsler(d, cfg);
        require_zero(inv.q + n(1), cfg, "q = -1 for vanishing data");
    });
    add("orthopath.minimal-indicatrix", [n](const ZeroTestConfig& cfg) {
        SignatureEps sig{2, 0};
        auto d = FinslerData::zero(sig);
        // choose I with eps^{ab} I_a I_b = 1/2: put I_1 = 1/sqrt(2)?  stay
        // rational: scale I so that I_1 = 1/2, I_2 = 1/2: norm = 1/2.
        // I_a = eps^{bc} I_{abc} / (n+1), n = 3: choose I_{111} = 2 - 3s,
        // simpler: set I_{111} = x1 etc. so that traces give (1/2, 1/2):
        // I_a = (I_{a11} + I_{a22}) / 4
        d.I.at({0, 0, 0}) = n(2);  // I_1 gets (2 + 0)/4 = 1/2
        d.I.at({1, 1, 1}) = n(2);  // I_2 gets (0 + 2)/4 = 1/2
        auto rep = check_minimal_indicatrix(d, cfg);
        require(rep.minimal && rep.half_norm && rep.q_zero,
                "minimal indicatrix with half norm gives q = 0");
        auto d0 = FinslerData::zero(sig);
        auto rep0 = check_minimal_indicatrix(d0, cfg);
        require(rep0.minimal && !rep0.half_norm && !rep0.q_zero,
                "I = 0 is minimal but q = -1");
    });
    add("orthopath.holonomy-flags", [n](const ZeroTestConfig& cfg) {
        SignatureEps sig{1, 1};
        auto d = FinslerData::zero(sig);
        d.R.at({0, 1}) = n(3);
        d.R.at({1, 0}) = n(3);  // trace-free for eps = diag(1,-1)
        d.Idot.at({0, 1}) = n(7);  // Idot does not affect the flags
        auto rep = holonomy_reduction_flags(d, cfg);
        require(rep.mean_torsion_zero && rep.flag_trace_zero && rep.reduced,
                "affine-sphere + trace-free curvature reduces holonomy");
        auto d2 = FinslerData::zero(sig);
        Expr kappa = opaque("kappa", {});
        d2.R.at({0, 0}) = kappa;
        d2.R.at({1, 1}) = -kappa;  // R = kappa eps: trace = 2 kappa != 0
        auto rep2 = holonomy_reduction_flags(d2, cfg);
        require(!rep2.reduced, "constant curvature with kappa != 0 not reduced");
    });

    // --- calibration regressions ---
    add("calibration.w1-cubic-term", [n](const ZeroTestConfig& cfg) {
        // with the printed (1/4) f_r^2 the Euler-Lagrange closure fails on
        // L = m(x) q^2 / 2; with (1/4) f_r^3 it holds
        Expr L = opaque("m", {"x"}) * Expr::variable("q") * Expr::variable("q") *
                 n(1, 2);
        Expr f = el_ode4(L, cfg, false);
        auto ctx = JetContext::ode4(f);
        Expr fr = diff(f, "r"), fq = diff(f, "q"), fp = diff(f, "p");
        Expr Dfr = total_derivative(ctx, fr);
        Expr common = total_derivative(ctx, Dfr) - n(3, 2) * fr * Dfr -
                      n(2) * total_derivative(ctx, fq) + fr * fq + n(2) * fp;
        require_zero(common + n(1, 4) * Expr::pow(fr, 3), cfg,
                     "cubic-term w1 vanishes on the family");
        require_nonzero(common + n(1, 4) * fr * fr, cfg,
                        "printed square-term w1 does not vanish");
    });
    add("calibration.c0-coefficients", [n](const ZeroTestConfig& cfg) {
        // the printed (2/9) f_rr^2 + (4/3) f_qrr misses the closed form by
        // a global factor 8/9 on Euler-Lagrange equations
        Expr L = opaque("L", {"x", "y", "p", "q"});
        Expr f = el_ode4(L, cfg, false);
        auto ctx = JetContext::ode4(f);
        Expr fr = diff(f, "r");
        Expr frr = diff(fr, "r"), frrr = diff(frr, "r");
        Expr fqrr = diff(diff(diff(f, "q"), "r"), "r");
        Expr printed = total_derivative(ctx, frrr) + n(3, 2) * fr * frrr +
                       n(2, 9) * frr * frr + n(4, 3) * fqrr;
        Expr Lqq = opaque("L", {"x", "y", "p", "q"}, {"q", "q"});
        Expr Lqqq = opaque("L", {"x", "y", "p", "q"}, {"q", "q", "q"});
        Expr Lqqqq = opaque("L", {"x", "y", "p", "q"}, {"q", "q", "q", "q"});
        Expr closed = Expr::div(n(4) * Lqqq * Lqqq - n(3) * Lqqqq * Lqq, Lqq * Lqq);
        require_nonzero(printed - closed, cfg, "printed c0 misses the closed form");
        require_zero(n(9, 8) * printed - closed, cfg,
                     "printed c0 is exactly 8/9 of the closed form");
    });

    // --- frontend ---
    add("frontend.parse-expr", [n](const ZeroTestConfig& cfg) {
        ParseContext ctx;
        ctx.variables = {"x", "y", "p", "q", "r"};
        ctx.functions["L"] = {"x", "y", "p", "q"};
        require_zero(parse_expr("(4*r^2)/(3*q)", ctx) - submax_f(), cfg,
                     "submaximal rhs parses");
        Expr e = parse_expr("L[q,q,q]^2", ctx);
        Expr expect = Expr::pow(opaque("L", {"x", "y", "p", "q"}, {"q", "q", "q"}), 2);
        require(equal(e, expect), "jet symbol power parses");
        bool failed = false;
        try {
            parse_expr("L[z]", ctx);
        } catch (const ParseError&) {
            failed = true;
        }
        require(failed, "L[z] rejected");
    });
    add("frontend.parse-problem", [](const ZeroTestConfig& cfg) {
        auto prob = parse_problem("kind = ode4\nf = (4*r^2)/(3*q)\n");
        require(prob.kind == ProblemKind::Ode4, "kind parses");
        require_zero(prob.exprs.at("f") - submax_f(), cfg, "payload parses");
        bool missing = false;
        try {
            parse_problem("kind = ode4\n");
        } catch (const SchemaError&) {
            missing = true;
        }
        require(missing, "missing f rejected");
        auto lp = parse_problem(
            "kind = lagrangian2\ndeclare h1(x,y,p)\nL = h1[]/(q+1)\n");
        require(lp.kind == ProblemKind::Lagrangian2ndScalar, "lagrangian kind");
    });
    add("frontend.round-trip", [](const ZeroTestConfig& cfg) {
        ParseContext ctx;
        ctx.variables = {"x", "y", "p", "q", "r"};
        ctx.functions["g"] = {"y", "p"};
        std::vector<std::string> samples = {
            "(4*r^2)/(3*q)", "q/p*g[p] + g[y]", "1/q + q*g[] - 7/3",
            "x^2 - 2*x*y + y^2 - 1/2", "g[p,p]*p - g[p]"};
        for (const auto& s : samples) {
            Expr e = parse_expr(s, ctx);
            Expr back = parse_expr(to_string(e), ctx);
            require(equal(e, back), "round trip through printer: " + s);
        }
    });

    return cases;
}

inline int run_selftest(std::ostream& os, const ZeroTestConfig& cfg = {}) {
    auto cases = selftest_cases();
    for (const auto& c : cases) {
        try {
            c.run(cfg);
            os << "ok   " << c.name << "\n";
        } catch (const std::exception& ex) {
            os << "FAIL " << c.name << ": " << ex.what() << "\n";
            return 1;
        }
    }
    os << cases.size() << " checks passed\n";
    return 0;
}

}  // namespace odeinv
