#pragma once

// Orthopath invariants A, T, N, q from (pseudo-)Finsler Cartan-torsion
// and flag-curvature component data.  Indices a,b,c run over 1..n-1 with
// the diagonal signature matrix eps; components are expressions (usually
// rational constants or opaque symbols).

#include <stdexcept>
#include <string>
#include <vector>

#include "odeinv/zerotest.hpp"

namespace odeinv {

struct SymmetryViolationError : std::runtime_error {
    explicit SymmetryViolationError(const std::string& msg)
        : std::runtime_error(msg) {}
};

struct SignatureEps {
    int plus = 0;   // number of +1 entries
    int minus = 0;  // number of -1 entries
    int dim() const { return plus + minus; }  // = n - 1
    int eps(int a) const { return a < plus ? 1 : -1; }
};

class Tensor {
public:
    Tensor() = default;
    Tensor(int dim, int rank)
        : dim_(dim), rank_(rank), data_(static_cast<std::size_t>(ipow(dim, rank)),
                                        Expr::number(0)) {}
    Expr& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
    const Expr& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }
    int dim() const { return dim_; }
    int rank() const { return rank_; }

private:
    static std::size_t ipow(int b, int e) {
        std::size_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
        return r;
    }
    std::size_t offset(const std::vector<int>& idx) const {
        std::size_t off = 0;
        for (int i : idx) off = off * static_cast<std::size_t>(dim_) +
                                static_cast<std::size_t>(i);
        return off;
    }
    int dim_ = 0;
    int rank_ = 0;
    std::vector<Expr> data_;
};

struct FinslerData {
    SignatureEps sig;
    Tensor I;     // I_abc, totally symmetric
    Tensor Idot;  // I_{a;b}
    Tensor Ibar;  // I_{a;b-bar}
    Tensor J;     // J_a
    Tensor R;     // R_ab, symmetric

    static FinslerData zero(const SignatureEps& sig) {
        FinslerData d;
        d.sig = sig;
        int n1 = sig.dim();
        d.I = Tensor(n1, 3);
        d.Idot = Tensor(n1, 2);
        d.Ibar = Tensor(n1, 2);
        d.J = Tensor(n1, 1);
        d.R = Tensor(n1, 2);
        return d;
    }
};

struct OrthopathInvariants {
    Tensor A;  // trace-free cubic
    Tensor T;  // symmetric trace-free bilinear
    Tensor N;  // antisymmetric bilinear
    Expr q;    // scalar
    Tensor mean_torsion;  // I_a, for reports
};

namespace detail {

inline void check_finsler_symmetries(const FinslerData& d,
                                     const ZeroTestConfig& cfg) {
    int n1 = d.sig.dim();
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            if (!is_zero(d.R.at({a, b}) - d.R.at({b, a}), cfg).zero)
                throw SymmetryViolationError("R_ab not symmetric");
            for (int c = 0; c < n1; ++c) {
                if (!is_zero(d.I.at({a, b, c}) - d.I.at({b, a, c}), cfg).zero ||
                    !is_zero(d.I.at({a, b, c}) - d.I.at({a, c, b}), cfg).zero)
                    throw SymmetryViolationError("I_abc not totally symmetric");
            }
        }
}

}  // namespace detail

inline OrthopathInvariants orthopath_from_finsler(const FinslerData& d,
                                                  const ZeroTestConfig& cfg = {}) {
    detail::check_finsler_symmetries(d, cfg);
    const int n1 = d.sig.dim();
    const int n = n1 + 1;
    auto eps = [&](int a) { return Expr::number(d.sig.eps(a)); };

    // mean Cartan torsion I_a = eps^{bc} I_{abc} / (n+1)
    Tensor Ia(n1, 1);
    for (int a = 0; a < n1; ++a) {
        Expr s = Expr::number(0);
        for (int b = 0; b < n1; ++b) s = s + eps(b) * d.I.at({a, b, b});
        Ia.at({a}) = Expr::number(1, n + 1) * s;
    }

    // flag-curvature trace R = eps^{ab} R_ab / (n-1)
    Expr Rtr = Expr::number(0);
    for (int a = 0; a < n1; ++a) Rtr = Rtr + eps(a) * d.R.at({a, a});
    Rtr = Expr::number(1, n - 1) * Rtr;

    OrthopathInvariants out;
    out.mean_torsion = Ia;
    out.A = Tensor(n1, 3);
    out.T = Tensor(n1, 2);
    out.N = Tensor(n1, 2);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            for (int c = 0; c < n1; ++c) {
                Expr corr = Expr::number(0);
                if (b == c) corr = corr + eps(b) * Ia.at({a});
                if (a == c) corr = corr + eps(a) * Ia.at({b});
                if (a == b) corr = corr + eps(a) * Ia.at({c});
                out.A.at({a, b, c}) = d.I.at({a, b, c}) - corr;
            }
            Expr tcorr = (a == b) ? eps(a) * Rtr : Expr::number(0);
            out.T.at({a, b}) = d.R.at({a, b}) - tcorr;
            // N_ab = -2 I_{[a;b]} + 4 J_{[a} I_{b]}, weight-1/2 brackets
            out.N.at({a, b}) = -(d.Idot.at({a, b}) - d.Idot.at({b, a})) +
                               Expr::number(2) * (d.J.at({a}) * Ia.at({b}) -
                                                  d.J.at({b}) * Ia.at({a}));
        }

    Expr norm2 = Expr::number(0), ibar_tr = Expr::number(0);
    for (int a = 0; a < n1; ++a) {
        norm2 = norm2 + eps(a) * Ia.at({a}) * Ia.at({a});
        ibar_tr = ibar_tr + eps(a) * d.Ibar.at({a, a});
    }
    out.q = Expr::number(2) * norm2 - Expr::number(1) -
            Expr::number(2, n - 1) * ibar_tr;
    return out;
}

struct MinimalIndicatrixReport {
    bool minimal = false;          // eps^{ab} I_{a;b-bar} = 0
    bool half_norm = false;        // eps^{ab} I_a I_b = 1/2
    bool q_zero = false;           // q vanishes
};

inline MinimalIndicatrixReport check_minimal_indicatrix(const FinslerData& d,
                                                        const ZeroTestConfig& cfg = {}) {
    auto inv = orthopath_from_finsler(d, cfg);
    const int n1 = d.sig.dim();
    auto eps = [&](int a) { return Expr::number(d.sig.eps(a)); };
    Expr ibar_tr = Expr::number(0), norm2 = Expr::number(0);
    for (int a = 0; a < n1; ++a) {
        ibar_tr = ibar_tr + eps(a) * d.Ibar.at({a, a});
        norm2 = norm2 + eps(a) * inv.mean_torsion.at({a}) * inv.mean_torsion.at({a});
    }
    MinimalIndicatrixReport rep;
    rep.minimal = is_zero(ibar_tr, cfg).zero;
    rep.half_norm = is_zero(norm2 - Expr::number(1, 2), cfg).zero;
    rep.q_zero = is_zero(inv.q, cfg).zero;
    return rep;
}

struct HolonomyReductionReport {
    bool mean_torsion_zero = false;  // affine-sphere indicatrices
    bool flag_trace_zero = false;
    bool reduced = false;  // holonomy in R^n x| SO(p+1,q)
};

inline HolonomyReductionReport holonomy_reduction_flags(const FinslerData& d,
                                                        const ZeroTestConfig& cfg = {}) {
    auto inv = orthopath_from_finsler(d, cfg);
    const int n1 = d.sig.dim();
    HolonomyReductionReport rep;
    rep.mean_torsion_zero = true;
    for (int a = 0; a < n1; ++a)
        rep.mean_torsion_zero &= is_zero(inv.mean_torsion.at({a}), cfg).zero;
    Expr rtr = Expr::number(0);
    for (int a = 0; a < n1; ++a)
        rtr = rtr + Expr::number(d.sig.eps(a)) * d.R.at({a, a});
    rep.flag_trace_zero = is_zero(rtr, cfg).zero;
    rep.reduced = rep.mean_torsion_zero && rep.flag_trace_zero;
    return rep;
}

}  // namespace odeinv
