#include "doctest.h"

#include <random>
#include <vector>

#include "breuil/dd.hpp"
#include "breuil/gauge.hpp"
#include "breuil/rand.hpp"

#include "naive_embedding.hpp"

using namespace breuil;
// Oracle helpers live in naive_embedding.hpp, shared with the acceptance binary.
using namespace naive_embed;

namespace {

PrimeCtx default_ctx() { return PrimeCtx(13, {0, 4, 8}, 8, 11); }

} // namespace

TEST_CASE("descent-data products match the naive twisted-polynomial embedding") {
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(101);
    for (int it = 0; it < 40; ++it) {
        DDMatR X = dd_zero(cx, r_zero(cx)), Y = dd_zero(cx, r_zero(cx));
        for (auto& m : X.m) m = rand_relem(cx, rng);
        for (auto& m : Y.m) m = rand_relem(cx, rng);
        DDMatR Z = dd_mul(X, Y);
        CHECK(naive_eq(embed_matrix(Z), naive_mul(cx, embed_matrix(X), embed_matrix(Y))));
    }
}

TEST_CASE("descent-data adjugate and determinant match the naive embedding") {
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(103);
    for (int it = 0; it < 40; ++it) {
        DDMatR X = dd_zero(cx, r_zero(cx));
        for (auto& m : X.m) m = rand_relem(cx, rng);
        DDMatR A = dd_adjugate(X);
        CHECK(naive_eq(embed_matrix(A), naive_adjugate(cx, embed_matrix(X))));
        // X * adj(X) = det(X) * Id as actual matrices.
        RElem det = dd_det(X);
        DDMatR D = dd_zero(cx, r_zero(cx));
        for (int i = 0; i < 3; ++i) D.at(i, i) = det;
        CHECK(dd_eq(dd_mul(X, A), D));
        CHECK(dd_eq(dd_mul(A, X), D));
    }
}

TEST_CASE("mod-p descent-data products match the naive embedding") {
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(107);
    for (int it = 0; it < 40; ++it) {
        DDMatS<Fp> X = dd_zero(cx, Sbar0<Fp>(cx)), Y = dd_zero(cx, Sbar0<Fp>(cx));
        for (auto& m : X.m) m = rand_sbar0<Fp>(cx, rng);
        for (auto& m : Y.m) m = rand_sbar0<Fp>(cx, rng);
        DDMatS<Fp> Z = dd_mul(X, Y);
        auto ez = embed_matrix_modp(Z);
        auto ex = embed_matrix_modp(X);
        auto ey = embed_matrix_modp(Y);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                SbarPoly<Fp> acc(cx);
                for (int k = 0; k < 3; ++k)
                    acc = sp_add(acc, sp_mul(ex[3 * i + k], ey[3 * k + j]));
                CHECK(sp_eq(ez[3 * i + j], acc));
            }
        // Adjugate in the same lane.
        DDMatS<Fp> A = dd_adjugate(X);
        auto ea = embed_matrix_modp(A);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int j1 = (j + 1) % 3, j2 = (j + 2) % 3, i1 = (i + 1) % 3, i2 = (i + 2) % 3;
                SbarPoly<Fp> want = sp_sub(sp_mul(ex[3 * j1 + i1], ex[3 * j2 + i2]),
                                           sp_mul(ex[3 * j1 + i2], ex[3 * j2 + i1]));
                CHECK(sp_eq(ea[3 * i + j], want));
            }
    }
}

TEST_CASE("lower-unipotent product formula, 200 instances") {
    // For strictly-lower unipotent W the product picks up u^e exactly on the
    // below-diagonal terms that wrap: all of them when j >= i, only k > j when j < i.
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(109);
    for (int it = 0; it < 200; ++it) {
        DDMatR A = dd_zero(cx, r_zero(cx));
        for (auto& m : A.m) m = rand_relem(cx, rng);
        DDMatR W = dd_identity(cx);
        W.at(1, 0) = rand_relem(cx, rng);
        W.at(2, 0) = rand_relem(cx, rng);
        W.at(2, 1) = rand_relem(cx, rng);
        DDMatR Z = dd_mul(W, A);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                RElem want = A.at(i, j);
                if (j >= i) {
                    RElem s = r_zero(cx);
                    for (int k = 0; k < i; ++k) s = r_add(s, r_mul(W.at(i, k), A.at(k, j)));
                    want = r_add(want, r_mul_ue(s));
                } else {
                    RElem s = r_zero(cx);
                    for (int k = j + 1; k < i; ++k) s = r_add(s, r_mul(W.at(i, k), A.at(k, j)));
                    want = r_add(want, r_mul_ue(s));
                    for (int k = 0; k <= j; ++k)
                        want = r_add(want, r_mul(W.at(i, k), A.at(k, j)));
                }
                CHECK(r_eq(Z.at(i, j), want));
            }
    }
}

TEST_CASE("unipotent adjugate keeps the E-degree bounds, 200 instances") {
    // Inputs at the bounds the gauge steps actually produce: constants below the
    // diagonal except slot (2,0), which may carry an E-linear part.
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(113);
    auto degree_at_most = [&](const RElem& m, std::uint32_t dmax) {
        for (std::uint32_t k = dmax + 1; k < m.fil_known; ++k)
            if (m.c[k] != 0) return false;
        return true;
    };
    for (int it = 0; it < 200; ++it) {
        DDMatR W = dd_identity(cx);
        W.at(1, 0) = r_const(cx, rng() % cx.pN);
        W.at(2, 1) = r_const(cx, rng() % cx.pN);
        W.at(2, 0) = r_add(r_const(cx, rng() % cx.pN), r_scal(rng() % cx.pN, r_E(cx)));
        DDMatR A = dd_adjugate(W);
        // Strictly lower unipotent again.
        CHECK(r_eq(A.at(0, 0), r_one(cx)));
        CHECK(r_eq(A.at(1, 1), r_one(cx)));
        CHECK(r_eq(A.at(2, 2), r_one(cx)));
        CHECK(r_is_zero(A.at(0, 1)));
        CHECK(r_is_zero(A.at(0, 2)));
        CHECK(r_is_zero(A.at(1, 2)));
        // E-degree of slot (i,j) stays at most i-j.
        CHECK(degree_at_most(A.at(1, 0), 1));
        CHECK(degree_at_most(A.at(2, 1), 1));
        CHECK(degree_at_most(A.at(2, 0), 2));
        // The closed form of the lower slots.
        CHECK(r_eq(A.at(1, 0), r_neg(W.at(1, 0))));
        CHECK(r_eq(A.at(2, 1), r_neg(W.at(2, 1))));
        CHECK(r_eq(A.at(2, 0),
                   r_sub(r_mul_ue(r_mul(W.at(1, 0), W.at(2, 1))), W.at(2, 0))));
    }
    // At one degree higher below the diagonal the bound genuinely breaks: an E^3
    // component appears in slot (2,0).
    DDMatR W = dd_identity(cx);
    W.at(1, 0) = r_E(cx);
    W.at(2, 1) = r_E(cx);
    W.at(2, 0) = r_zero(cx);
    DDMatR A = dd_adjugate(W);
    CHECK(A.at(2, 0).c[3] != 0);
}

TEST_CASE("diagonal adjugate example") {
    PrimeCtx cx = default_ctx();
    DDMatR D = dd_zero(cx, r_zero(cx));
    D.at(0, 0) = r_one(cx);
    D.at(1, 1) = r_E(cx);
    D.at(2, 2) = r_mul(r_E(cx), r_E(cx));
    DDMatR A = dd_adjugate(D);
    CHECK(r_eq(A.at(0, 0), r_pow(r_E(cx), 3)));
    CHECK(r_eq(A.at(1, 1), r_pow(r_E(cx), 2)));
    CHECK(r_eq(A.at(2, 2), r_E(cx)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(r_is_zero(A.at(i, j)));
    CHECK(r_eq(dd_det(D), r_pow(r_E(cx), 3)));
}

TEST_CASE("matrix division by E-powers") {
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(127);
    // divide(E * Id, 1) = Id.
    DDMatR EI = dd_zero(cx, r_zero(cx));
    for (int i = 0; i < 3; ++i) EI.at(i, i) = r_E(cx);
    DDMatR I1 = dd_divide_by_E(EI, 1);
    CHECK(dd_eq(I1, dd_identity(cx)));
    // adj(V) * V = E^3 * Id for V = U * Diag(1, E, E^2): divides down to Id.
    DDMatR V = dd_identity(cx);
    V.at(1, 0) = r_const(cx, rng() % cx.pN);
    V.at(2, 0) = rand_relem(cx, rng);
    V.at(2, 1) = r_const(cx, rng() % cx.pN);
    DDMatR D = dd_zero(cx, r_zero(cx));
    D.at(0, 0) = r_one(cx);
    D.at(1, 1) = r_E(cx);
    D.at(2, 2) = r_mul(r_E(cx), r_E(cx));
    V = dd_mul(V, D);
    DDMatR prod = dd_mul(dd_adjugate(V), V);
    DDMatR I3 = dd_divide_by_E(prod, 3);
    CHECK(dd_eq(I3, dd_identity(cx)));
    // Id is not divisible by E.
    CHECK_THROWS_AS(dd_divide_by_E(dd_identity(cx), 1), computation_error);
}

TEST_CASE("invertibility predicate") {
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(131);
    CHECK(dd_is_gl(dd_identity(cx)));
    DDMatR D = dd_zero(cx, r_zero(cx));
    D.at(0, 0) = r_one(cx);
    D.at(1, 1) = r_E(cx);
    D.at(2, 2) = r_mul(r_E(cx), r_E(cx));
    CHECK(!dd_is_gl(D)); // det = E^3 is not a unit
    for (int it = 0; it < 10; ++it) CHECK(dd_is_gl(rand_gl3_near_diagonal(cx, rng)));
}

TEST_CASE("Frobenius contraction part one, 200 instances") {
    // Any invertible matrix at n = 0, and Diag(units) + p^n * (anything) at n >= 1:
    // the Frobenius image lands in constants plus p^n J + p^n I + p^{n+1} R, and
    // moving to the image changes nothing mod p^n.
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(137);
    for (std::uint32_t n = 0; n <= 3; ++n)
        for (int it = 0; it < 50; ++it) {
            DDMatR X;
            if (n == 0) {
                X = rand_gl3(cx, rng);
            } else {
                X = dd_zero(cx, r_zero(cx));
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        RElem m = r_scal(cx.ppow[n], rand_relem(cx, rng));
                        if (i == j) m = r_add(m, r_const(cx, rand_unit_modpN(cx, rng)));
                        X.at(i, j) = m;
                    }
            }
            DDMatR F = dd_frobenius(X);
            CHECK(dd_in_T_plus_M_sum(F, n));
            CHECK(dd_eq_mod(X, F, n));
        }
}

TEST_CASE("Frobenius contraction part two, 200 instances") {
    // Constants plus p^n (p, Fil^1) contracts one full p-power: the image is
    // constants plus p^{n+1} R.
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(139);
    for (std::uint32_t n = 0; n <= 3; ++n)
        for (int it = 0; it < 50; ++it) {
            DDMatR X = dd_zero(cx, r_zero(cx));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    RElem m = r_add(r_scal(cx.ppow[n + 1], rand_relem(cx, rng)),
                                    r_scal(cx.ppow[n], r_mul(r_E(cx), rand_relem(cx, rng))));
                    if (i == j) m = r_add(m, r_const(cx, rand_unit_modpN(cx, rng)));
                    X.at(i, j) = m;
                }
            DDMatR F = dd_frobenius(X);
            CHECK(dd_in_T_plus_M_pnR(F, n + 1));
            CHECK(dd_eq_mod(X, F, n));
        }
}

TEST_CASE("Frobenius fixes scalar diagonals and demands generic twists") {
    PrimeCtx cx = default_ctx();
    CHECK(dd_eq(dd_frobenius(dd_identity(cx)), dd_identity(cx)));
    DDMatR D = dd_scalar_diag(cx, {3, 7, 11});
    CHECK(dd_eq(dd_frobenius(D), D));
    // A weight triple with a bracket below 3 is rejected.
    PrimeCtx tight(13, {0, 1, 8}, 8, 11); // [a0 - a1] = 1
    CHECK_THROWS_AS(dd_frobenius(dd_identity(tight)), computation_error);
}

TEST_CASE("congruence-class predicates") {
    PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(149);
    // Id + p * X0 sits in constants + p R.
    DDMatR X = dd_identity(cx);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            X.at(i, j) = r_add(X.at(i, j), r_scal(cx.p, rand_relem(cx, rng)));
    CHECK(dd_in_T_plus_M_pnR(X, 1));
    CHECK(!dd_in_T_plus_M_pnR(X, 2));
    // The diagonal constant is absorbed: any unit diagonal works.
    DDMatR Y = dd_scalar_diag(cx, {5, 1, 9});
    CHECK(dd_in_T_plus_M_pnR(Y, 4));
    CHECK(dd_in_T_plus_M_sum(Y, 2));
    CHECK(dd_in_T_plus_M_pn_pfil1(Y, 3));
    // An off-diagonal unit breaks every class.
    DDMatR Z = dd_identity(cx);
    Z.at(0, 1) = r_one(cx);
    CHECK(!dd_in_T_plus_M_pnR(Z, 1));
    CHECK(!dd_in_T_plus_M_sum(Z, 0));
    CHECK(!dd_in_T_plus_M_pn_pfil1(Z, 0));
}
