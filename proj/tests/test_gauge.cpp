// Gauge diagonalization: exact fixed points, hand-solved single steps, convergence
// with per-step verified identities, precision coherence, and the mod-p sweep.

#include <array>
#include <cstdint>
#include <random>

#include "doctest.h"

#include "breuil/coeff.hpp"
#include "breuil/dd.hpp"
#include "breuil/errors.hpp"
#include "breuil/gauge.hpp"
#include "breuil/gauge_modp.hpp"
#include "breuil/rand.hpp"
#include "breuil/relem.hpp"
#include "breuil/sbar.hpp"

using namespace breuil;

namespace {

PrimeCtx default_ctx() { return PrimeCtx(13, {0, 4, 8}, 8, 11); }

// Diag(units) * (Id + p * random), the well-conditioned input family.
DDMatR rand_ordinary_frobenius(const PrimeCtx& cx, std::mt19937_64& rng) {
    DDMatR X = dd_identity(cx);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            X.at(i, j) = r_add(X.at(i, j), r_scal(cx.p, rand_relem(cx, rng)));
    const DDMatR D =
        dd_scalar_diag(cx, {rand_unit_modpN(cx, rng), rand_unit_modpN(cx, rng),
                            rand_unit_modpN(cx, rng)});
    return dd_mul(D, X);
}

} // namespace

TEST_CASE("a constant diagonal Frobenius matrix is an exact fixed point") {
    const PrimeCtx cx = default_ctx();
    const DDMatR A = dd_scalar_diag(cx, {5, 7, 9});
    const GaugeResult res = diagonalize(A, cx.N);

    CHECK(res.exact_fixed_point);
    CHECK(res.v == GaugeV{});
    CHECK(res.lambda == std::array<std::uint64_t, 3>{5, 7, 9});
    CHECK(res.steps <= 4);
    for (const StepRecord& rec : res.transcript) {
        CHECK(rec.congruence_ok);
        CHECK(rec.step_equation_ok);
        CHECK(rec.b_membership_ok);
        CHECK(rec.exact_identity_ok);
        CHECK(rec.a_next_membership_ok);
    }
}

TEST_CASE("single even step at n = 0, solved by hand") {
    const PrimeCtx cx = default_ctx();
    const std::uint64_t pN = cx.pN;

    SUBCASE("only the (2,1) slot is populated") {
        // With v_old = 0 the step solves m21 + m22 v21 = 0 in the constant slot,
        // so v21 = -3 * 9^{-1} and everything else stays zero.
        DDMatR A = dd_scalar_diag(cx, {5, 7, 9});
        A.at(2, 1) = r_const(cx, 3);
        const StepOutcome so = gauge_step(A, GaugeV{}, 0, true);
        CHECK(so.v.v10 == 0);
        CHECK(so.v.v20 == 0);
        CHECK(so.v.v20p == 0);
        CHECK(so.v.v21 == submod(0, mulmod(3, inv_unit(9, cx.p, pN), pN), pN));
        CHECK(so.congruence_ok);
        CHECK(so.step_equation_ok);
        CHECK(so.b_membership_ok);
        CHECK(so.exact_identity_ok);
    }

    SUBCASE("only the (1,0) slot is populated") {
        // The 2x2 system degenerates to m10 + m11 v10 = 0: v10 = -2 * 7^{-1}.
        DDMatR A = dd_scalar_diag(cx, {5, 7, 9});
        A.at(1, 0) = r_const(cx, 2);
        const StepOutcome so = gauge_step(A, GaugeV{}, 0, true);
        CHECK(so.v.v10 == submod(0, mulmod(2, inv_unit(7, cx.p, pN), pN), pN));
        CHECK(so.v.v20 == 0);
        CHECK(so.v.v20p == 0);
        CHECK(so.v.v21 == 0);
        CHECK(so.exact_identity_ok);
    }

    SUBCASE("only the (2,0) slot is populated, with a linear part") {
        // The re-solved slot is -m22^{-1} m20, split into its degree-0 and degree-1
        // coefficients: v20 = -4 * 9^{-1}, v20' = -6 * 9^{-1}.
        DDMatR A = dd_scalar_diag(cx, {5, 7, 9});
        A.at(2, 0) = r_add(r_const(cx, 4), r_scal(6, r_E(cx)));
        const StepOutcome so = gauge_step(A, GaugeV{}, 0, true);
        const std::uint64_t inv9 = inv_unit(9, cx.p, pN);
        CHECK(so.v.v10 == 0);
        CHECK(so.v.v20 == submod(0, mulmod(4, inv9, pN), pN));
        CHECK(so.v.v20p == submod(0, mulmod(6, inv9, pN), pN));
        CHECK(so.v.v21 == 0);
        CHECK(so.exact_identity_ok);
    }
}

TEST_CASE("diagonalization is deterministic and converges on random ordinary inputs") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(515);

    for (int it = 0; it < 30; ++it) {
        const DDMatR A0 = rand_ordinary_frobenius(cx, rng);
        const GaugeResult res = diagonalize(A0, cx.N);

        CHECK(res.exact_fixed_point);
        CHECK(res.steps <= 20);
        REQUIRE(!res.transcript.empty());
        CHECK(res.transcript.size() == res.steps);
        for (const StepRecord& rec : res.transcript) {
            CHECK(rec.congruence_ok);
            CHECK(rec.step_equation_ok);
            CHECK(rec.b_membership_ok);
            CHECK(rec.exact_identity_ok);
            CHECK(rec.a_next_membership_ok);
        }
        CHECK(res.transcript.back().lambda == res.lambda);
        CHECK(res.transcript.back().v_renormalized == res.v);

        // The diagonal residues mod p are invariants of the loop.
        for (int i = 0; i < 3; ++i) {
            CHECK(res.lambda[i] % cx.pN == res.lambda[i]);
            CHECK(res.lambda[i] % cx.p == r_c0(A0.at(i, i)) % cx.p);
        }

        // Rerunning on the same input reproduces every field exactly.
        const GaugeResult res2 = diagonalize(A0, cx.N);
        CHECK(res2.v == res.v);
        CHECK(res2.lambda == res.lambda);
        CHECK(res2.steps == res.steps);
        CHECK(res2.exact_fixed_point == res.exact_fixed_point);
    }
}

TEST_CASE("the fixed point is idempotent: rerunning on Diag(lambda) returns it") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(516);
    for (int it = 0; it < 5; ++it) {
        const GaugeResult res = diagonalize(rand_ordinary_frobenius(cx, rng), cx.N);
        const GaugeResult again = diagonalize(dd_scalar_diag(cx, res.lambda), cx.N);
        CHECK(again.exact_fixed_point);
        CHECK(again.v == GaugeV{});
        CHECK(again.lambda == res.lambda);
    }
}

TEST_CASE("results at lower target precision agree mod p^4 with full precision") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(517);
    const std::uint64_t p4 = cx.ppow[4];

    for (int it = 0; it < 10; ++it) {
        const DDMatR A0 = rand_ordinary_frobenius(cx, rng);
        const GaugeResult hi = diagonalize(A0, 8);
        const GaugeResult lo = diagonalize(A0, 4);
        for (int i = 0; i < 3; ++i) CHECK(hi.lambda[i] % p4 == lo.lambda[i] % p4);
        CHECK(hi.v.v10 % p4 == lo.v.v10 % p4);
        CHECK(hi.v.v20 % p4 == lo.v.v20 % p4);
        CHECK(hi.v.v20p % p4 == lo.v.v20p % p4);
        CHECK(hi.v.v21 % p4 == lo.v.v21 % p4);
    }
}

TEST_CASE("mod-p sweep agrees with the characteristic-zero loop after reduction") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(518);

    for (int it = 0; it < 10; ++it) {
        // Lower-triangular characteristic-zero Frobenius with unit diagonal.
        DDMatR L = dd_zero(cx, r_zero(cx));
        for (int i = 0; i < 3; ++i) {
            L.at(i, i) = r_add(r_const(cx, rand_unit_modpN(cx, rng) % cx.p + 1),
                               r_scal(cx.p, rand_relem(cx, rng)));
            for (int j = 0; j < i; ++j) L.at(i, j) = rand_relem(cx, rng);
        }
        if (!dd_is_gl(L)) continue;

        const GaugeResult res = diagonalize(L, cx.N);
        const ModpSweepResult<Fp> sweep = ordinary_form_modp(reduce_dd_modp(L));

        CHECK(sweep.sweeps <= 4);
        for (int i = 0; i < 3; ++i)
            CHECK(sweep.data.alpha[i].v == res.lambda[i] % cx.p);
        CHECK(sweep.data.v10.v == res.v.v10 % cx.p);
        CHECK(sweep.data.v20.v == res.v.v20 % cx.p);
        CHECK(sweep.data.v20p.v == res.v.v20p % cx.p);
        CHECK(sweep.data.v21.v == res.v.v21 % cx.p);

        // The stabilized mod-p matrix is diagonal up to U^4 with the alpha residues.
        for (int i = 0; i < 3; ++i) {
            CHECK(s0_eval0(sweep.A_final.at(i, i)) == sweep.data.alpha[i]);
            for (int j = 0; j < 3; ++j)
                if (i != j) CHECK(s0_divisible(sweep.A_final.at(i, j), 4));
        }
    }
}

TEST_CASE("mod-p sweep runs over the dual numbers") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(519);
    for (int it = 0; it < 10; ++it) {
        const DDMatS<FpDual> L = rand_lower_gl3_modp<FpDual>(cx, rng);
        const ModpSweepResult<FpDual> sweep = ordinary_form_modp(L);
        CHECK(sweep.sweeps <= 4);
        for (int i = 0; i < 3; ++i) {
            CHECK(sweep.data.alpha[i].is_unit());
            CHECK(s0_eval0(sweep.A_final.at(i, i)) == sweep.data.alpha[i]);
        }
        // The dual part drops under reduction to the residue field lane.
        DDMatS<Fp> Lred = dd_zero(cx, Sbar0<Fp>(cx));
        for (int k = 0; k < 9; ++k) {
            Lred.m[k].wnd = L.m[k].wnd;
            for (std::uint32_t d = 0; d < L.m[k].wnd; ++d)
                Lred.m[k].c[d] = Fp(cx.p, L.m[k].c[d].a);
        }
        const ModpSweepResult<Fp> base = ordinary_form_modp(Lred);
        CHECK(sweep.data.v10.a == base.data.v10.v);
        CHECK(sweep.data.v20.a == base.data.v20.v);
        CHECK(sweep.data.v20p.a == base.data.v20p.v);
        CHECK(sweep.data.v21.a == base.data.v21.v);
        for (int i = 0; i < 3; ++i) CHECK(sweep.data.alpha[i].a == base.data.alpha[i].v);
    }
}

TEST_CASE("gauge input validation") {
    const PrimeCtx cx = default_ctx();
    const DDMatR A = dd_scalar_diag(cx, {5, 7, 9});

    CHECK_THROWS_AS(diagonalize(A, 0), input_error);  // target precision >= 1
    CHECK_THROWS_AS(diagonalize(A, 9), input_error);  // N' > N

    const PrimeCtx small(13, {0, 4, 8}, 8, 6); // M = 6 < N' + 3
    CHECK_THROWS_AS(diagonalize(dd_scalar_diag(small, {5, 7, 9}), 8), input_error);

    DDMatR sing = dd_scalar_diag(cx, {5, 7, 9});
    sing.at(0, 0) = r_scal(cx.p, r_one(cx)); // p is not a unit
    CHECK_THROWS_AS(diagonalize(sing, cx.N), input_error);

    const PrimeCtx tight(13, {0, 1, 8}, 8, 11); // not strongly generic
    CHECK_THROWS_AS(diagonalize(dd_scalar_diag(tight, {5, 7, 9}), 8), input_error);

    // Mod-p sweep: upper-triangular junk and non-unit diagonals are rejected.
    DDMatS<Fp> U = dd_identity_s<Fp>(cx);
    U.at(0, 1) = s0_const(cx, Fp(cx.p, 2));
    CHECK_THROWS_AS(ordinary_form_modp(U), input_error);
    DDMatS<Fp> Z = dd_identity_s<Fp>(cx);
    Z.at(1, 1) = s0_const(cx, Fp(cx.p, 0));
    CHECK_THROWS_AS(ordinary_form_modp(Z), input_error);
}
