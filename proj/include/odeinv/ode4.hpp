#pragma once

// Fundamental invariants of scalar 4th-order ODEs under contact
// equivalence, the variationality test, the Cartan quartic of the
// quasi-contactified (2,3,5)-distribution, and the classification flags.
//
// Two coefficient calibrations relative to the printed parametric
// formulas (both validated against the Euler-Lagrange and coframe
// identities; see README):
//   * w1 carries (1/4) f_r^3 where the display prints (1/4) f_r^2;
//   * c0 carries (1/4) f_rr^2 + (3/2) f_qrr where the display prints
//     (2/9) f_rr^2 + (4/3) f_qrr.
// The theta^1-slot derivative used for the w0-chain carries the section
// normalization factor -3/8 so that the printed w0;1 of the reference
// family is reproduced exactly.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "odeinv/coframe.hpp"
#include "odeinv/jet.hpp"
#include "odeinv/polyroot.hpp"
#include "odeinv/zerotest.hpp"

namespace odeinv {

struct NotVariationalError : std::runtime_error {
    explicit NotVariationalError(const std::string& msg)
        : std::runtime_error(msg) {}
};

struct Ode4Invariants {
    Expr c1, c0, w1, w0;
};

namespace detail {

inline Expr theta1_direction(const Frame& fr, const Expr& e) {
    // calibrated theta^1-slot derivative for the w0 chain
    return Expr::number(-3, 8) * coframe_derivative(fr, e, CoframeSlot::Theta1);
}

}  // namespace detail

inline Ode4Invariants invariants_ode4(const Expr& f) {
    auto ctx = JetContext::ode4(f);
    auto D = [&](const Expr& e) { return total_derivative(ctx, e); };
    auto n = [](std::int64_t a, std::int64_t b) { return Expr::number(a, b); };
    Expr fr = diff(f, "r"), fq = diff(f, "q"), fp = diff(f, "p"), fy = diff(f, "y");
    Expr frr = diff(fr, "r"), frrr = diff(frr, "r");
    Expr fqrr = diff(diff(fq, "r"), "r");
    Expr Dfr = D(fr), D2fr = D(Dfr), D3fr = D(D2fr);
    Expr Dfq = D(fq), D2fq = D(Dfq), Dfp = D(fp);

    Ode4Invariants out;
    out.c1 = frrr;
    out.c0 = D(frrr) + n(3, 2) * fr * frrr + n(1, 4) * frr * frr +
             n(3, 2) * fqrr;
    out.w1 = D2fr - n(3, 2) * fr * Dfr - Expr::number(2) * Dfq +
             n(1, 4) * Expr::pow(fr, 3) + fr * fq + Expr::number(2) * fp;
    out.w0 = D3fr - Expr::number(4) * D2fq - Expr::number(3) * fr * D2fr -
             n(33, 10) * Dfr * Dfr + Expr::number(10) * Dfp +
             Expr::number(5) * fr * Dfq + n(27, 5) * fq * Dfr +
             n(39, 10) * fr * fr * Dfr - n(13, 5) * fr * fr * fq -
             Expr::number(5) * fr * fp - n(39, 80) * Expr::pow(fr, 4) -
             n(9, 5) * fq * fq - Expr::number(20) * fy;
    return out;
}

// iterated w0-chain: w0, w0;1, w0;11, ... (calibrated theta^1 slot)
inline std::vector<Expr> w0_theta_chain(const Expr& f, int depth) {
    Ode4Invariants inv = invariants_ode4(f);
    Frame fr = invert_coframe(adapted_coframe_ode4(f));
    std::vector<Expr> chain;
    chain.push_back(inv.w0);
    for (int k = 0; k < depth; ++k)
        chain.push_back(detail::theta1_direction(fr, chain.back()));
    return chain;
}

struct VariationalVerdict {
    bool variational = false;
    std::string failed_on;  // "c1" or "w1" when not variational
    std::optional<Witness> witness;
};

inline VariationalVerdict is_variational_ode4(const Expr& f,
                                              const ZeroTestConfig& cfg = {}) {
    Ode4Invariants inv = invariants_ode4(f);
    auto zc1 = is_zero(inv.c1, cfg);
    if (!zc1.zero) return {false, "c1", zc1.witness};
    auto zw1 = is_zero(inv.w1, cfg);
    if (!zw1.zero) return {false, "w1", zw1.witness};
    return {true, "", std::nullopt};
}

struct QuarticCoefficients {
    Expr a0, a1, a2, a3, a4;
};

inline QuarticCoefficients cartan_quartic(const Expr& f,
                                          const ZeroTestConfig& cfg = {}) {
    auto v = is_variational_ode4(f, cfg);
    if (!v.variational)
        throw NotVariationalError("Cartan quartic requires a variational ODE (" +
                                  v.failed_on + " nonzero)");
    auto chain = w0_theta_chain(f, 4);
    QuarticCoefficients qc;
    qc.a0 = chain[0];
    qc.a1 = Expr::number(1, 4) * chain[1];
    qc.a2 = Expr::number(1, 12) * chain[2];
    qc.a3 = Expr::number(1, 24) * chain[3];
    qc.a4 = Expr::number(1, 24) * chain[4];
    return qc;
}

// maximal root multiplicity of a0 t^4 + 4 a1 t^3 + 6 a2 t^2 + 4 a3 t + a4
// evaluated at a rational sample; 5 encodes "identically zero" (infinity)
inline int quartic_multiplicity(const QuarticCoefficients& qc,
                                const Assignment& sample) {
    std::vector<Rational> coeffs = {
        eval(qc.a0, sample), Rational(4) * eval(qc.a1, sample),
        Rational(6) * eval(qc.a2, sample), Rational(4) * eval(qc.a3, sample),
        eval(qc.a4, sample)};
    return binary_form_max_multiplicity(coeffs);
}

struct Classification235 {
    bool variational = false;
    bool null_symmetry = false;           // c0 = 0
    bool descends_to_j2 = false;          // c0 = w0;11 = 0
    bool holonomy_reduced = false;        // c0 = w0;1 = 0
    bool flat_quasicontactification = false;  // c1 = w1 = w0 = 0
    // (sample point, multiplicity) pairs; empty unless variational
    std::vector<std::pair<Assignment, int>> samples;
    std::vector<int> sampled_multiplicities;
    std::vector<std::string> notes;
};

inline Classification235 classify_235(const Expr& f, const ZeroTestConfig& cfg = {}) {
    Classification235 out;
    Ode4Invariants inv = invariants_ode4(f);
    auto v = is_variational_ode4(f, cfg);
    out.variational = v.variational;
    bool c0_zero = is_zero(inv.c0, cfg).zero;
    out.null_symmetry = c0_zero;
    auto chain = w0_theta_chain(f, 2);
    bool w01_zero = is_zero(chain[1], cfg).zero;
    bool w011_zero = is_zero(chain[2], cfg).zero;
    out.descends_to_j2 = c0_zero && w011_zero;
    out.holonomy_reduced = c0_zero && w01_zero;
    bool w0_zero = is_zero(chain[0], cfg).zero;
    bool w1_zero = is_zero(inv.w1, cfg).zero;
    bool c1_zero = is_zero(inv.c1, cfg).zero;
    out.flat_quasicontactification = c1_zero && w1_zero && w0_zero;
    if (!out.variational) {
        out.notes.push_back("not variational: quartic multiplicities not sampled");
        return out;
    }
    QuarticCoefficients qc = cartan_quartic(f, cfg);
    Expr all = qc.a0 + qc.a1 + qc.a2 + qc.a3 + qc.a4;
    Leaves lv = leaves(all);
    for (int s = 0; s < 3; ++s) {
        SplitMix64 rng(cfg.seed + 0x5eed0000ULL + static_cast<std::uint64_t>(s));
        int mult = -1;
        Assignment used;
        for (int retry = 0; retry < cfg.max_retries_per_trial + 1; ++retry) {
            Assignment a = sample_assignment(lv, rng, cfg);
            try {
                mult = quartic_multiplicity(qc, a);
                used = std::move(a);
                break;
            } catch (const PoleError&) {
                continue;
            }
        }
        if (mult < 0) {
            out.notes.push_back("multiplicity sample hit poles repeatedly");
            continue;
        }
        out.samples.emplace_back(std::move(used), mult);
        out.sampled_multiplicities.push_back(mult);
    }
    bool agree = true;
    for (std::size_t i = 1; i < out.sampled_multiplicities.size(); ++i)
        agree &= out.sampled_multiplicities[i] == out.sampled_multiplicities[0];
    if (!agree) out.notes.push_back("non-generic stratification detected");
    // corollary consistency: sampled multiplicity bounds per flags
    if (!out.sampled_multiplicities.empty() && agree) {
        int m = out.sampled_multiplicities[0];
        int m_eff = m;  // 5 means identically zero quartic
        if (out.null_symmetry && m_eff < 2)
            out.notes.push_back("inconsistency: null symmetry but multiplicity < 2");
        if (out.descends_to_j2 && m_eff < 3)
            out.notes.push_back("inconsistency: descends to J2 but multiplicity < 3");
        if (out.holonomy_reduced && m_eff < 4)
            out.notes.push_back("inconsistency: holonomy reduced but multiplicity < 4");
    }
    return out;
}

}  // namespace odeinv
