#include "breuil/gauge_modp.hpp"

#include <string>

#include "breuil/errors.hpp"

namespace breuil {

template <class K>
DDMatS<K> modp_unipotent(const PrimeCtx& cx, K v10, K v20, K v20p, K v21) {
    DDMatS<K> Uni = dd_identity_s<K>(cx);
    Uni.at(1, 0) = s0_const(cx, v10);
    Uni.at(2, 0) = s0_add(s0_const(cx, v20), s0_monomial(cx, 1, v20p));
    Uni.at(2, 1) = s0_const(cx, v21);
    return Uni;
}

template <class K>
DDMatS<K> modp_filtration(const PrimeCtx& cx, K v10, K v20, K v20p, K v21) {
    DDMatS<K> D = dd_zero(cx, Sbar0<K>(cx));
    D.at(0, 0) = s0_const(cx, K::one(cx.p));
    D.at(1, 1) = s0_monomial(cx, 1, K::one(cx.p));
    D.at(2, 2) = s0_monomial(cx, 2, K::one(cx.p));
    return dd_mul(modp_unipotent(cx, v10, v20, v20p, v21), D);
}

template <class K>
ModpSweepResult<K> ordinary_form_modp(const DDMatS<K>& A0) {
    const PrimeCtx& cx = *A0.ctx;
    cx.require_strongly_generic();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!s0_is_zero(A0.at(i, j)))
                throw input_error("mod-p Frobenius matrix must be lower-triangular");
    if (!dd_is_gl_s(A0))
        throw input_error("mod-p Frobenius matrix must be invertible (unit diagonal)");

    const std::uint32_t cap = 4;
    const K kzero = K::zero(cx.p);

    DDMatS<K> A = A0;
    K v10 = kzero, v20 = kzero, v20p = kzero, v21 = kzero;

    ModpSweepResult<K> res{GaugeDataModp<K>(cx), 0, A0};

    for (std::uint32_t s = 0; s < cap; ++s) {
        const DDMatS<K> Uni_old = modp_unipotent(cx, v10, v20, v20p, v21);
        const DDMatS<K> W = dd_adjugate(Uni_old);
        const DDMatS<K> M = dd_mul(W, A);

        const Sbar0<K>& m10 = M.at(1, 0);
        const Sbar0<K>& m11 = M.at(1, 1);
        const Sbar0<K>& m12 = M.at(1, 2);
        const Sbar0<K>& m20 = M.at(2, 0);
        const Sbar0<K>& m21 = M.at(2, 1);
        const Sbar0<K>& m22 = M.at(2, 2);

        if (!s0_is_unit(m22))
            throw computation_error("NonUnitPivot: (2,2) pivot not a unit in mod-p sweep");
        const Sbar0<K> m22inv = s0_inv(m22);

        const Sbar0<K> v21_ex = s0_neg(s0_mul(m22inv, m21));
        const Sbar0<K> det0 =
            s0_sub(s0_mul(m11, m22), s0_mul(m12, s0_mul_U(m21, 1)));
        if (!s0_is_unit(det0))
            throw computation_error(
                "NonUnitPivot: 2x2 leading minor not a unit in mod-p sweep");
        const Sbar0<K> v10_ex = s0_neg(
            s0_mul(s0_inv(det0), s0_sub(s0_mul(m22, m10), s0_mul(m12, m20))));

        const K v10c = s0_eval0(v10_ex);
        const K v21c = s0_eval0(v21_ex);
        const Sbar0<K> v20_rs = s0_neg(
            s0_mul(m22inv, s0_add(m20, s0_mul_U(s0_scal(v10c, m21), 1))));
        const K v20c = s0_coeff(v20_rs, 0);
        const K v20pc = s0_coeff(v20_rs, 1);

        const DDMatS<K> Uni_new = modp_unipotent(cx, v10c, v20c, v20pc, v21c);
        const DDMatS<K> R = dd_mul(M, Uni_new);
        if (!s0_divisible(R.at(1, 0), 1) || !s0_divisible(R.at(2, 0), 2) ||
            !s0_divisible(R.at(2, 1), 1))
            throw computation_error(
                "CongruenceFailure: mod-p residues not divisible by the required U powers");

        const DDMatS<K> V_old = modp_filtration(cx, v10, v20, v20p, v21);
        const DDMatS<K> V_new = modp_filtration(cx, v10c, v20c, v20pc, v21c);
        const DDMatS<K> AVn = dd_mul(A, V_new);
        const DDMatS<K> B = dd_divide_by_U(dd_mul(dd_adjugate(V_old), AVn), 3);

        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (!s0_is_zero(B.at(i, j)))
                    throw computation_error(
                        "MembershipFailure: mod-p transition matrix not lower-triangular");
        if (!dd_eq_s(AVn, dd_mul(V_old, B)))
            throw computation_error(
                "MembershipFailure: A*V_new != V_old*B in mod-p sweep");

        std::array<K, 3> t{kzero, kzero, kzero};
        for (int i = 0; i < 3; ++i) {
            t[i] = s0_eval0(B.at(i, i));
            if (!t[i].is_unit())
                throw computation_error(
                    "NonUnitPivot: mod-p transition matrix has non-unit diagonal");
        }

        const DDMatS<K> A_next = dd_conj_diag_s(t, dd_frobenius_s(B));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j && !s0_divisible(A_next.at(i, j), 4))
                    throw computation_error(
                        "MembershipFailure: mod-p Frobenius image off-diagonal not in U^4");

        const K t0i = t[0].inv(), t1i = t[1].inv();
        const K v10r = t[1] * t0i * v10c;
        const K v20r = t[2] * t0i * v20c;
        const K v20pr = t[2] * t0i * v20pc;
        const K v21r = t[2] * t1i * v21c;

        const bool fixed = (v10r == v10) && (v20r == v20) && (v20pr == v20p) &&
                           (v21r == v21) && dd_eq_s(A_next, A);

        v10 = v10r;
        v20 = v20r;
        v20p = v20pr;
        v21 = v21r;
        A = A_next;
        res.sweeps = s + 1;

        if (fixed) {
            res.data.v10 = v10;
            res.data.v20 = v20;
            res.data.v20p = v20p;
            res.data.v21 = v21;
            res.data.alpha = t;
            res.A_final = A;
            return res;
        }
    }
    throw no_convergence("NoConvergence: mod-p sweep did not stabilize within " +
                         std::to_string(cap) + " sweeps");
}

Sbar0<Fp> reduce_relem_modp(const RElem& x) {
    const PrimeCtx& cx = *x.ctx;
    Sbar0<Fp> z(cx);
    z.wnd = std::min<std::uint32_t>(x.fil_known, static_cast<std::uint32_t>(cx.p));
    std::uint64_t fact = 1;
    for (std::uint32_t k = 0; k < z.wnd; ++k) {
        if (k > 0) fact = mulmod(fact, k, cx.p);
        z.c[k] = Fp(cx.p, mulmod(x.c[k] % cx.p, inv_unit(fact, cx.p, cx.p), cx.p));
    }
    return z;
}

DDMatS<Fp> reduce_dd_modp(const DDMatR& X) {
    const PrimeCtx& cx = *X.ctx;
    DDMatS<Fp> Z = dd_zero(cx, Sbar0<Fp>(cx));
    for (int k = 0; k < 9; ++k) Z.m[k] = reduce_relem_modp(X.m[k]);
    return Z;
}

template DDMatS<Fp> modp_unipotent<Fp>(const PrimeCtx&, Fp, Fp, Fp, Fp);
template DDMatS<FpDual> modp_unipotent<FpDual>(const PrimeCtx&, FpDual, FpDual, FpDual,
                                               FpDual);
template DDMatS<Fp> modp_filtration<Fp>(const PrimeCtx&, Fp, Fp, Fp, Fp);
template DDMatS<FpDual> modp_filtration<FpDual>(const PrimeCtx&, FpDual, FpDual, FpDual,
                                                FpDual);
template ModpSweepResult<Fp> ordinary_form_modp<Fp>(const DDMatS<Fp>&);
template ModpSweepResult<FpDual> ordinary_form_modp<FpDual>(const DDMatS<FpDual>&);

} // namespace breuil
