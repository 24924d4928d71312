#pragma once

// The adapted coframe of a scalar 4th-order ODE, its exact symbolic
// inverse, and coframe derivatives.  Rows are (w3, w2, w1, w0, th1) in
// the basis (dx, dy, dp, dq, dr).

#include <array>
#include <stdexcept>
#include <string>

#include "odeinv/jet.hpp"
#include "odeinv/zerotest.hpp"

namespace odeinv {

struct SingularityError : std::runtime_error {
    explicit SingularityError(const std::string& msg) : std::runtime_error(msg) {}
};

using Matrix5 = std::array<std::array<Expr, 5>, 5>;

enum class CoframeSlot { W3 = 0, W2 = 1, W1 = 2, W0 = 3, Theta1 = 4 };

struct Coframe {
    Matrix5 rows;  // rows[slot][coordinate], coordinates (x,y,p,q,r)
};

struct Frame {
    Matrix5 cols;  // cols[coordinate][slot]: dual vector fields
};

inline Coframe adapted_coframe_ode4(const Expr& f) {
    auto ctx = JetContext::ode4(f);
    auto D = [&](const Expr& e) { return total_derivative(ctx, e); };
    Expr p = Expr::variable("p"), q = Expr::variable("q"), r = Expr::variable("r");
    Expr fr = diff(f, "r"), fq = diff(f, "q"), fp = diff(f, "p");
    Expr frr = diff(fr, "r"), fqr = diff(fq, "r");
    Expr Dfr = D(fr), D2fr = D(Dfr), Dfrr = D(frr), Dfq = D(fq);
    auto n = [](std::int64_t a, std::int64_t b) { return Expr::number(a, b); };

    Expr A = n(-3, 20) * Dfr + n(9, 40) * fq + n(11, 160) * fr * fr;
    Expr B = n(-1, 15) * Dfrr + n(1, 30) * fqr + n(-1, 180) * fr * frr;
    Expr C = n(-27, 40) * Dfr + n(63, 40) * fq + n(57, 160) * fr * fr;
    Expr E = n(9, 80) * D2fr + n(-9, 20) * Dfq + n(-9, 32) * fr * Dfr +
             n(23, 320) * Expr::pow(fr, 3) + n(27, 80) * fr * fq + n(8, 9) * fp;

    Coframe c;
    auto zero = Expr::number(0);
    // w3 = dy - p dx
    c.rows[0] = {-p, Expr::number(1), zero, zero, zero};
    // w2 = dp - q dx
    c.rows[1] = {-q, zero, Expr::number(1), zero, zero};
    // w1 = -3/4 rho1 + 1/8 fr rho2 + A rho3
    c.rows[2] = {n(3, 4) * r - n(1, 8) * fr * q - A * p, A, n(1, 8) * fr,
                 n(-3, 4), zero};
    // w0 = 1/3 rho0 + 1/18 frr rho2 + B rho3
    c.rows[3] = {n(1, 3) - n(1, 18) * frr * q - B * p, B, n(1, 18) * frr, zero,
                 zero};
    // th1 = -9/4 sigma1 + 9/8 fr rho1 + C rho2 + E rho3
    c.rows[4] = {n(9, 4) * f - n(9, 8) * fr * r - C * q - E * p, E, C,
                 n(9, 8) * fr, n(-9, 4)};
    return c;
}

// exact symbolic inverse by Gaussian elimination with syntactic pivots
inline Frame invert_coframe(const Coframe& c) {
    std::array<std::array<Expr, 10>, 5> m;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            m[i][j] = c.rows[i][j];
            m[i][5 + j] = Expr::number(i == j ? 1 : 0);
        }
    }
    for (int col = 0; col < 5; ++col) {
        int piv = -1;
        for (int i = col; i < 5; ++i) {
            if (!m[i][col].is_zero_literal() && m[i][col].is_number()) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            for (int i = col; i < 5; ++i)
                if (!m[i][col].is_zero_literal()) {
                    piv = i;
                    break;
                }
        }
        if (piv < 0) throw SingularityError("coframe matrix has a zero pivot column");
        std::swap(m[col], m[piv]);
        Expr inv = Expr::pow(m[col][col], -1);
        for (int j = 0; j < 10; ++j) m[col][j] = m[col][j] * inv;
        for (int i = 0; i < 5; ++i) {
            if (i == col || m[i][col].is_zero_literal()) continue;
            Expr factor = m[i][col];
            for (int j = 0; j < 10; ++j)
                m[i][j] = m[i][j] - factor * m[col][j];
        }
    }
    Frame fr;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) fr.cols[i][j] = m[i][5 + j];
    return fr;
}

inline Expr coframe_determinant(const Coframe& c) {
    // row expansion; 5x5 with many literal zeros stays small
    std::array<std::array<Expr, 5>, 5> a = c.rows;
    Expr det = Expr::number(1);
    for (int col = 0; col < 5; ++col) {
        int piv = -1;
        for (int i = col; i < 5; ++i)
            if (!a[i][col].is_zero_literal()) {
                piv = i;
                break;
            }
        if (piv < 0) return Expr::number(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det = det * a[col][col];
        Expr inv = Expr::pow(a[col][col], -1);
        for (int i = col + 1; i < 5; ++i) {
            if (a[i][col].is_zero_literal()) continue;
            Expr factor = a[i][col] * inv;
            for (int j = col; j < 5; ++j) a[i][j] = a[i][j] - factor * a[col][j];
        }
    }
    return normalize(det);
}

// directional derivative of e along the frame vector dual to `slot`
inline Expr coframe_derivative(const Frame& fr, const Expr& e, CoframeSlot slot) {
    static const std::array<std::string, 5> kCoords = {"x", "y", "p", "q", "r"};
    int j = static_cast<int>(slot);
    std::vector<Expr> parts;
    for (int k = 0; k < 5; ++k) {
        if (fr.cols[k][j].is_zero_literal()) continue;
        parts.push_back(fr.cols[k][j] * diff(e, kCoords[k]));
    }
    return Expr::add(parts);
}

}  // namespace odeinv
