#pragma once

// Exact univariate polynomial helpers over the rationals: gcd-based
// maximal root multiplicity of a binary quartic, including the root at
// infinity.

#include <vector>

#include "odeinv/rational.hpp"

namespace odeinv {

// polynomials as coefficient vectors, highest degree first
namespace poly {

inline void trim(std::vector<Rational>& p) {
    std::size_t lead = 0;
    while (lead + 1 < p.size() && p[lead] == 0) ++lead;
    if (lead) p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
    if (p.empty()) p.push_back(Rational(0));
}

inline int degree(const std::vector<Rational>& p) {
    // -1 for the zero polynomial
    if (p.size() == 1 && p[0] == 0) return -1;
    return static_cast<int>(p.size()) - 1;
}

inline std::vector<Rational> derivative(const std::vector<Rational>& p) {
    int d = degree(p);
    if (d <= 0) return {Rational(0)};
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        out.push_back(p[static_cast<std::size_t>(i)] * Rational(d - i));
    return out;
}

inline std::vector<Rational> rem(std::vector<Rational> a,
                                 const std::vector<Rational>& b) {
    trim(a);
    int db = degree(b);
    while (degree(a) >= db && degree(a) >= 0) {
        Rational factor = a[0] / b[0];
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i)] -= factor * b[static_cast<std::size_t>(i)];
        trim(a);
        if (degree(a) < 0) break;
    }
    return a;
}

inline std::vector<Rational> gcd(std::vector<Rational> a, std::vector<Rational> b) {
    trim(a);
    trim(b);
    while (degree(b) >= 0) {
        auto r = rem(a, b);
        a = b;
        b = r;
    }
    if (degree(a) >= 0) {
        Rational lead = a[0];
        for (auto& c : a) c /= lead;
    }
    return a;
}

}  // namespace poly

// maximal multiplicity of a root of p over the complex numbers
inline int max_root_multiplicity(std::vector<Rational> p) {
    poly::trim(p);
    if (poly::degree(p) <= 0) return 0;  // constants have no roots
    auto g = poly::gcd(p, poly::derivative(p));
    if (poly::degree(g) <= 0) return 1;
    return 1 + max_root_multiplicity(g);
}

// binary form of degree 4 given by coefficients [c4..c0] of
// c4 t^4 + c3 t^3 + ... + c0; roots live on the projective line, so a
// degree drop counts as a root at infinity.  Returns 5 when identically 0.
inline int binary_form_max_multiplicity(const std::vector<Rational>& coeffs) {
    bool allzero = true;
    for (const auto& c : coeffs) allzero &= (c == 0);
    if (allzero) return 5;
    std::size_t lead = 0;
    while (coeffs[lead] == 0) ++lead;
    int mult_inf = static_cast<int>(lead);
    std::vector<Rational> p(coeffs.begin() + static_cast<std::ptrdiff_t>(lead),
                            coeffs.end());
    int mult_fin = max_root_multiplicity(p);
    return mult_inf > mult_fin ? mult_inf : mult_fin;
}

}  // namespace odeinv
