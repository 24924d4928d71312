#pragma once

// The b-invariant table for pairs of 3rd-order ODEs under point
// equivalence, and the variationality test (b1, b2, b3 vanishing).
//
// The G block carries two calibrations relative to the printed display
// (validated against pushforwards of the trivial pair and Euler-Lagrange
// pairs; see README): the middle terms are -(4/3) DA.A - (2/3) A.DA, and
// the first-order products are the matrix products A.P + P.A.  The one
// scaling-inconsistent term of the H display is implemented as
// -(27/5) trA * (sum_u f^u_{q^u q^r q^s}).

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odeinv/jet.hpp"
#include "odeinv/zerotest.hpp"

namespace odeinv {

using Mat2 = std::array<std::array<Expr, 2>, 2>;

struct PairBlocks {
    Expr E[2][2][2];   // E^r_{st}
    Expr Eo[2][2][2];  // trace-corrected E
    Mat2 F, G, H;
    Mat2 A, P;  // first derivatives in q and p
    Expr trA, detA;
};

namespace detail {

inline Mat2 matmul2(const Mat2& a, const Mat2& b) {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return out;
}

}  // namespace detail

inline PairBlocks pair_building_blocks(const Expr& f1, const Expr& f2) {
    const std::array<Expr, 2> f = {f1, f2};
    static const std::array<std::string, 2> qs = {"q1", "q2"};
    static const std::array<std::string, 2> ps = {"p1", "p2"};
    static const std::array<std::string, 2> ys = {"y1", "y2"};
    auto ctx = JetContext::ode3pair(f1, f2);
    auto D = [&](const Expr& e) { return total_derivative(ctx, e); };
    auto n = [](std::int64_t a, std::int64_t b) { return Expr::number(a, b); };

    PairBlocks B;
    Mat2 Y;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            B.A[r][s] = diff(f[r], qs[s]);
            B.P[r][s] = diff(f[r], ps[s]);
            Y[r][s] = diff(f[r], ys[s]);
        }
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) B.E[r][s][t] = diff(B.A[r][s], qs[t]);

    B.trA = B.A[0][0] + B.A[1][1];
    B.detA = B.A[0][0] * B.A[1][1] - B.A[0][1] * B.A[1][0];
    Expr trP = B.P[0][0] + B.P[1][1];
    Mat2 A2 = detail::matmul2(B.A, B.A);
    Expr trA2 = A2[0][0] + A2[1][1];

    Mat2 DA, DP;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            DA[r][s] = D(B.A[r][s]);
            DP[r][s] = D(B.P[r][s]);
        }
    Mat2 DAA = detail::matmul2(DA, B.A);
    Mat2 ADA = detail::matmul2(B.A, DA);
    Mat2 AP = detail::matmul2(B.A, B.P);
    Mat2 PA = detail::matmul2(B.P, B.A);

    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            B.F[r][s] = DA[r][s] - n(1, 3) * A2[r][s] - B.P[r][s];
            B.G[r][s] = D(DA[r][s]) - n(4, 3) * DAA[r][s] - n(2, 3) * ADA[r][s] -
                        Expr::number(3) * DP[r][s] +
                        n(2, 9) * B.A[r][s] * (trA2 + B.trA * B.trA) + AP[r][s] +
                        PA[r][s] + Expr::number(6) * Y[r][s];
        }

    // trace correction with symmetrization weight 1/2:
    // Eo^r_{st} = E^r_{st} - (2/3) E^u_{u(s} delta^r_{t)}
    Expr trE[2];
    for (int s = 0; s < 2; ++s) trE[s] = B.E[0][0][s] + B.E[1][1][s];
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
                Expr corr = Expr::number(0);
                if (r == t) corr = corr + trE[s];
                if (r == s) corr = corr + trE[t];
                B.Eo[r][s][t] = B.E[r][s][t] - n(1, 3) * corr;
            }

    // curvature block H (symmetric part feeds b6)
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            Expr tqq = diff(B.E[0][0][r], qs[s]) + diff(B.E[1][1][r], qs[s]);
            Expr tqp = diff(B.E[0][0][r], ps[s]) + diff(B.E[1][1][r], ps[s]);
            // t4 = d/dq^r ( A^u_s * E^v_{vu} ), t5 = d/dq^r ( A^u_v * E^v_{us} )
            Expr t6 = Expr::number(0), t7 = Expr::number(0);
            Expr inner4 = Expr::number(0), inner5 = Expr::number(0);
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v) {
                    inner4 = inner4 + B.A[u][s] * B.E[v][v][u];
                    inner5 = inner5 + B.A[u][v] * B.E[v][u][s];
                }
            Expr t4 = diff(inner4, qs[r]);
            Expr t5 = diff(inner5, qs[r]);
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v) {
                    t6 = t6 + B.E[u][r][s] * B.E[v][v][u];
                    t7 = t7 + B.E[u][r][u] * B.E[v][v][s];
                }
            B.H[r][s] = D(tqq) + n(32, 5) * tqp - n(27, 5) * B.trA * tqq +
                        n(74, 15) * t4 - n(18, 5) * t5 + n(29, 15) * t6 +
                        n(14, 45) * t7;
        }
    return B;
}

struct PairInvariants {
    Expr b10, b11, b12, b13;  // cubic b1
    Expr b20, b21, b22;       // b2
    Expr b30;                 // b3
    Expr b40, b41, b42;       // b4
    Expr b50;                 // identically zero for genuine pairs
    Expr b60, b61, b62;       // b6
};

inline PairInvariants invariants_pair(const Expr& f1, const Expr& f2) {
    PairBlocks B = pair_building_blocks(f1, f2);
    auto n = [](std::int64_t a, std::int64_t b) { return Expr::number(a, b); };
    PairInvariants out;
    out.b10 = B.Eo[1][0][0];
    out.b11 = B.Eo[1][1][0];
    out.b12 = B.Eo[1][1][1];
    out.b13 = B.Eo[0][1][1];
    out.b20 = -B.F[1][0];
    out.b21 = n(1, 2) * (B.F[0][0] - B.F[1][1]);
    out.b22 = B.F[0][1];
    // antisymmetrized cubic term with weight 1/2 equals -(8/9) trA detA
    out.b30 = B.G[0][0] + B.G[1][1] - n(8, 9) * B.trA * B.detA;
    out.b40 = -B.G[1][0];
    out.b41 = n(1, 2) * (B.G[0][0] - B.G[1][1]);
    out.b42 = B.G[0][1];
    out.b50 = Expr::number(0);
    out.b60 = B.H[0][0];
    out.b61 = n(1, 2) * (B.H[0][1] + B.H[1][0]);
    out.b62 = B.H[1][1];
    return out;
}

struct PairVariationalVerdict {
    bool variational = false;
    std::string failed_on;
    std::optional<Witness> witness;
};

inline PairVariationalVerdict is_variational_pair(const Expr& f1, const Expr& f2,
                                                  const ZeroTestConfig& cfg = {}) {
    PairInvariants inv = invariants_pair(f1, f2);
    const std::pair<const char*, const Expr*> checks[] = {
        {"b10", &inv.b10}, {"b11", &inv.b11}, {"b12", &inv.b12},
        {"b13", &inv.b13}, {"b20", &inv.b20}, {"b21", &inv.b21},
        {"b22", &inv.b22}, {"b30", &inv.b30}};
    for (const auto& [name, e] : checks) {
        auto z = is_zero(*e, cfg);
        if (!z.zero) return {false, name, z.witness};
    }
    return {true, "", std::nullopt};
}

struct PairSymmetryReport {
    bool b50_zero = true;  // structural for genuine pairs
    bool variational = false;
    // null symmetry of the quasi-contactified (3,6) geometry holds
    // whenever the pair is variational (b50 = 0 makes the symmetry null)
    bool null_symmetry_applicable = false;
    std::string note;
};

inline PairSymmetryReport pair_symmetry_nullity(const Expr& f1, const Expr& f2,
                                                const ZeroTestConfig& cfg = {}) {
    PairSymmetryReport rep;
    auto v = is_variational_pair(f1, f2, cfg);
    rep.variational = v.variational;
    rep.null_symmetry_applicable = v.variational;
    rep.note = v.variational
                   ? "variational pair: the transversal symmetry of the "
                     "quasi-contactification is null"
                   : "not variational: nullity statement not applicable";
    return rep;
}

}  // namespace odeinv
