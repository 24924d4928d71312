#include <catch_amalgamated.hpp>

#include "odeinv/orthopath.hpp"
#include "testutil.hpp"

using namespace odeinv;
using testutil::num;
using testutil::var;

namespace {

FinslerData random_admissible(SplitMix64& rng, const SignatureEps& sig) {
    auto d = FinslerData::zero(sig);
    int n1 = sig.dim();
    auto draw = [&]() { return num(rng.range(-6, 6), rng.range(1, 4)); };
    for (int a = 0; a < n1; ++a) {
        d.J.at({a}) = draw();
        for (int b = 0; b < n1; ++b) {
            d.Idot.at({a, b}) = draw();
            d.Ibar.at({a, b}) = draw();
        }
        for (int b = a; b < n1; ++b) {
            Expr v = draw();
            d.R.at({a, b}) = v;
            d.R.at({b, a}) = v;
            for (int c = b; c < n1; ++c) {
                Expr w = draw();
                std::vector<int> idx = {a, b, c};
                std::sort(idx.begin(), idx.end());
                do {
                    d.I.at(idx) = w;
                } while (std::next_permutation(idx.begin(), idx.end()));
            }
        }
    }
    return d;
}

Expr eps_trace2(const Tensor& t, const SignatureEps& sig) {
    Expr out = Expr::number(0);
    for (int a = 0; a < sig.dim(); ++a)
        out = out + num(sig.eps(a)) * t.at({a, a});
    return out;
}

}  // namespace

TEST_CASE("Riemannian data: constant-curvature input") {
    for (SignatureEps sig : {SignatureEps{2, 0}, SignatureEps{1, 1},
                             SignatureEps{2, 1}}) {
        auto d = FinslerData::zero(sig);
        Expr kappa = Expr::jet("kappa", {}, {});
        for (int a = 0; a < sig.dim(); ++a)
            d.R.at({a, a}) = num(sig.eps(a)) * kappa;
        auto inv = orthopath_from_finsler(d);
        for (int a = 0; a < sig.dim(); ++a)
            for (int b = 0; b < sig.dim(); ++b) {
                CHECK(is_zero(inv.T.at({a, b})).zero);
                CHECK(is_zero(inv.N.at({a, b})).zero);
                for (int c = 0; c < sig.dim(); ++c)
                    CHECK(is_zero(inv.A.at({a, b, c})).zero);
            }
        CHECK(is_zero(inv.q + num(1)).zero);
    }
}

TEST_CASE("all-zero data gives q = -1") {
    auto inv = orthopath_from_finsler(FinslerData::zero(SignatureEps{1, 1}));
    CHECK(is_zero(inv.q + num(1)).zero);
}

TEST_CASE("trace-free random I with Ibar = 0 keeps q = -1") {
    SplitMix64 rng(11);
    SignatureEps sig{2, 0};
    for (int t = 0; t < 5; ++t) {
        auto d = FinslerData::zero(sig);
        // symmetric I with eps-trace zero in every slot: dimension 2 means
        // I_a11 + I_a22 = 0
        Expr a0 = num(rng.range(-5, 5), rng.range(1, 3));
        Expr a1 = num(rng.range(-5, 5), rng.range(1, 3));
        // free symmetric components: I_111 = a0, I_112 = a1,
        // trace conditions force I_122 = -a0, I_222 = -a1
        auto setI = [&](int i, int j, int k, const Expr& v) {
            std::vector<int> idx = {i, j, k};
            std::sort(idx.begin(), idx.end());
            do {
                d.I.at(idx) = v;
            } while (std::next_permutation(idx.begin(), idx.end()));
        };
        setI(0, 0, 0, a0);
        setI(0, 0, 1, a1);
        setI(0, 1, 1, -a0);
        setI(1, 1, 1, -a1);
        auto inv = orthopath_from_finsler(d);
        CHECK(is_zero(inv.q + num(1)).zero);
    }
}

TEST_CASE("output traces vanish on randomized admissible inputs (property)") {
    SplitMix64 rng(20260810);
    for (SignatureEps sig : {SignatureEps{1, 1}, SignatureEps{2, 0},
                             SignatureEps{2, 1}}) {
        for (int t = 0; t < 50; ++t) {
            auto d = random_admissible(rng, sig);
            auto inv = orthopath_from_finsler(d);
            int n1 = sig.dim();
            // eps-trace of A in each slot
            for (int c = 0; c < n1; ++c) {
                Expr tr = Expr::number(0);
                for (int a = 0; a < n1; ++a)
                    tr = tr + num(sig.eps(a)) * inv.A.at({a, a, c});
                CHECK(is_zero(tr).zero);
            }
            CHECK(is_zero(eps_trace2(inv.T, sig)).zero);
            for (int a = 0; a < n1; ++a)
                for (int b = 0; b < n1; ++b) {
                    CHECK(is_zero(inv.T.at({a, b}) - inv.T.at({b, a})).zero);
                    CHECK(is_zero(inv.N.at({a, b}) + inv.N.at({b, a})).zero);
                }
        }
    }
}

TEST_CASE("scaling covariance at verdict level (property)") {
    SplitMix64 rng(505);
    SignatureEps sig{2, 1};
    auto d = random_admissible(rng, sig);
    auto lam = num(3, 7);
    auto d2 = d;
    int n1 = sig.dim();
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            d2.R.at({a, b}) = lam * d.R.at({a, b});
            for (int c = 0; c < n1; ++c)
                d2.I.at({a, b, c}) = lam * d.I.at({a, b, c});
            d2.Idot.at({a, b}) = lam * d.Idot.at({a, b});
            d2.Ibar.at({a, b}) = lam * d.Ibar.at({a, b});
        }
    for (int a = 0; a < n1; ++a) d2.J.at({a}) = lam * d.J.at({a});
    auto i1 = orthopath_from_finsler(d);
    auto i2 = orthopath_from_finsler(d2);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            CHECK(is_zero(i1.T.at({a, b})).zero == is_zero(i2.T.at({a, b})).zero);
            for (int c = 0; c < n1; ++c)
                CHECK(is_zero(i1.A.at({a, b, c})).zero ==
                      is_zero(i2.A.at({a, b, c})).zero);
        }
    // N is quadratic in the scaled data but its verdict pattern survives
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b)
            CHECK(is_zero(i1.N.at({a, b})).zero == is_zero(i2.N.at({a, b})).zero);
}

TEST_CASE("minimal indicatrix checks") {
    SignatureEps sig{2, 0};
    auto d = FinslerData::zero(sig);
    d.I.at({0, 0, 0}) = num(2);
    d.I.at({1, 1, 1}) = num(2);
    auto rep = check_minimal_indicatrix(d);
    CHECK(rep.minimal);
    CHECK(rep.half_norm);
    CHECK(rep.q_zero);

    auto rep0 = check_minimal_indicatrix(FinslerData::zero(sig));
    CHECK(rep0.minimal);
    CHECK(!rep0.half_norm);
    CHECK(!rep0.q_zero);

    auto d2 = FinslerData::zero(sig);
    d2.Ibar.at({0, 0}) = num(1);
    CHECK(!check_minimal_indicatrix(d2).minimal);
}

TEST_CASE("holonomy reduction flags") {
    SignatureEps sig{1, 1};
    auto d = FinslerData::zero(sig);
    d.R.at({0, 1}) = num(3);
    d.R.at({1, 0}) = num(3);   // trace-free for eps = diag(1,-1)
    d.Idot.at({0, 1}) = num(7);  // irrelevant to the flags
    auto rep = holonomy_reduction_flags(d);
    CHECK(rep.mean_torsion_zero);
    CHECK(rep.flag_trace_zero);
    CHECK(rep.reduced);

    auto d2 = FinslerData::zero(sig);
    Expr kappa = Expr::jet("kappa", {}, {});
    d2.R.at({0, 0}) = kappa;
    d2.R.at({1, 1}) = -kappa;
    CHECK(!holonomy_reduction_flags(d2).reduced);
}

TEST_CASE("symmetry violations are rejected") {
    SignatureEps sig{2, 0};
    auto d = FinslerData::zero(sig);
    d.R.at({0, 1}) = num(1);  // not symmetric: R_10 stays 0
    CHECK_THROWS_AS(orthopath_from_finsler(d), SymmetryViolationError);
    auto d2 = FinslerData::zero(sig);
    d2.I.at({0, 0, 1}) = num(1);  // symmetric orbit not filled
    CHECK_THROWS_AS(orthopath_from_finsler(d2), SymmetryViolationError);
}
