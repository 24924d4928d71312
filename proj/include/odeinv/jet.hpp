#pragma once

// Jet-coordinate contexts and total-derivative operators for the two
// equation geometries: scalar 4th-order ODEs and pairs of 3rd-order ODEs.

#include <stdexcept>
#include <string>
#include <vector>

#include "odeinv/expr.hpp"

namespace odeinv {

enum class JetKind { Ode4, Ode3Pair };

struct JetContext {
    JetKind kind;
    std::vector<std::string> coords;
    // pairs (coordinate, velocity): D = d/dx + sum velocity * d/d(coord)
    std::vector<std::pair<std::string, Expr>> flow;

    static JetContext ode4(const Expr& f) {
        JetContext c;
        c.kind = JetKind::Ode4;
        c.coords = {"x", "y", "p", "q", "r"};
        c.check_rhs(f);
        c.flow = {{"y", Expr::variable("p")},
                  {"p", Expr::variable("q")},
                  {"q", Expr::variable("r")},
                  {"r", f}};
        return c;
    }

    static JetContext ode3pair(const Expr& f1, const Expr& f2) {
        JetContext c;
        c.kind = JetKind::Ode3Pair;
        c.coords = {"x", "y1", "y2", "p1", "p2", "q1", "q2"};
        c.check_rhs(f1);
        c.check_rhs(f2);
        c.flow = {{"y1", Expr::variable("p1")}, {"y2", Expr::variable("p2")},
                  {"p1", Expr::variable("q1")}, {"p2", Expr::variable("q2")},
                  {"q1", f1},                   {"q2", f2}};
        return c;
    }

private:
    void check_rhs(const Expr& f) const {
        for (const auto& v : leaves(f).vars)
            if (std::find(coords.begin(), coords.end(), v) == coords.end())
                throw std::invalid_argument("right-hand side uses '" + v +
                                            "', not a coordinate of this context");
    }
};

inline Expr total_derivative(const JetContext& ctx, const Expr& e) {
    std::vector<Expr> parts;
    parts.push_back(diff(e, "x"));
    for (const auto& [coord, vel] : ctx.flow)
        parts.push_back(vel * diff(e, coord));
    return Expr::add(parts);
}

inline Expr total_derivative(const JetContext& ctx, const Expr& e, int order) {
    Expr out = e;
    for (int k = 0; k < order; ++k) out = total_derivative(ctx, out);
    return out;
}

}  // namespace odeinv
