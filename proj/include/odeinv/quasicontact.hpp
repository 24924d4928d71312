#pragma once

// Quasi-contactification quantities: the symmetry-norm component c0 of
// the induced (2,3,5) conformal structure, the Monge-form metric
// component, and the null-symmetry Lagrangian family.

#include <stdexcept>
#include <string>

#include "odeinv/euler_lagrange.hpp"
#include "odeinv/ode4.hpp"

namespace odeinv {

struct DegenerateMongeError : std::runtime_error {
    explicit DegenerateMongeError(const std::string& msg)
        : std::runtime_error(msg) {}
};
struct DegenerateFamilyError : std::runtime_error {
    explicit DegenerateFamilyError(const std::string& msg)
        : std::runtime_error(msg) {}
};

struct SymmetryNormReport {
    Expr c0;
    bool null_symmetry = false;
};

// g(d/dw4, d/dw4) of the quasi-contactified metric is c0; the symmetry is
// null iff c0 vanishes
inline SymmetryNormReport symmetry_norm_ode4(const Expr& f,
                                             const ZeroTestConfig& cfg = {}) {
    auto v = is_variational_ode4(f, cfg);
    if (!v.variational)
        throw NotVariationalError("symmetry norm requires a variational ODE (" +
                                  v.failed_on + " nonzero)");
    SymmetryNormReport rep;
    rep.c0 = invariants_ode4(f).c0;
    rep.null_symmetry = is_zero(rep.c0, cfg).zero;
    return rep;
}

// g~(dz,dz) = -(1/40) (4 F_qqq^2 - 3 F_qq F_qqqq) / F_qq^4 for the Monge
// normal form z' = F(x,y,p,q)
inline Expr monge_metric(const Expr& F, const ZeroTestConfig& cfg = {}) {
    Expr Fqq = diff(diff(F, "q"), "q");
    if (is_zero(Fqq, cfg).zero)
        throw DegenerateMongeError("F_qq vanishes identically");
    Expr Fqqq = diff(Fqq, "q"), Fqqqq = diff(Fqqq, "q");
    Expr bracket = Expr::number(4) * Fqqq * Fqqq - Expr::number(3) * Fqq * Fqqqq;
    return Expr::div(Expr::number(-1, 40) * bracket, Expr::pow(Fqq, 4));
}

// L = h1/(h2 + q) + q h3 + h4 generates the variational 4th-order ODEs
// whose quasi-contactification has a null transversal symmetry
inline Expr null_family_lagrangian(const Expr& h1, const Expr& h2, const Expr& h3,
                                   const Expr& h4, const ZeroTestConfig& cfg = {}) {
    if (is_zero(h1, cfg).zero)
        throw DegenerateFamilyError("h1 vanishes identically");
    Expr q = Expr::variable("q");
    return Expr::div(h1, h2 + q) + q * h3 + h4;
}

}  // namespace odeinv
