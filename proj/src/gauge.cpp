#include "breuil/gauge.hpp"

#include <string>

#include "breuil/errors.hpp"

namespace breuil {

namespace {

// c0 == c1 == 0 exactly, c2 % mod2 == 0, c_k % modtail == 0 for k >= 3, within the
// known window. Used for the membership classes of (1/E) adj(V) A V'.
bool coeffs_class(const RElem& x, std::uint64_t mod2, std::uint64_t modtail) {
    if (x.fil_known < 2) throw computation_error("membership test needs window >= 2");
    if (x.c[0] != 0 || x.c[1] != 0) return false;
    if (x.fil_known > 2 && mod2 > 1 && x.c[2] % mod2 != 0) return false;
    if (modtail > 1) {
        for (std::uint32_t k = 3; k < x.fil_known; ++k)
            if (x.c[k] % modtail != 0) return false;
    }
    return true;
}

RElem drop_c0(const RElem& x) {
    RElem y = x;
    y.c[0] = 0;
    return y;
}

bool step_equation_membership(const DDMatR& X1, std::uint32_t n, bool even) {
    const PrimeCtx& cx = *X1.ctx;
    const std::uint64_t pn = cx.pclamp(n);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const RElem& x = X1.at(i, j);
            bool ok;
            if (i < j) {
                ok = in_pn_J(x, n);
            } else if (i == j) {
                ok = coeffs_class(x, 1, pn);
            } else if (even) {
                ok = (n == 0) ? coeffs_class(x, 1, 1) : coeffs_class(x, pn, pn);
            } else {
                ok = in_pn_J(x, n);
            }
            if (!ok) return false;
        }
    }
    return true;
}

bool b_membership(const DDMatR& B, std::uint32_t n, bool even) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const RElem& x = B.at(i, j);
            bool ok;
            if (i < j) {
                ok = in_pn_pfil1(x, n);
            } else if (i > j) {
                ok = even ? in_pn_R(x, n) : in_pn_pfil1(x, n);
            } else if (even && n == 0) {
                ok = true;
            } else {
                ok = in_pn_pfil1(drop_c0(x), n);
            }
            if (!ok) return false;
        }
    }
    return true;
}

bool in_class_T_plus_M(const DDMatR& X, bool (*pred)(const RElem&, std::uint32_t),
                       std::uint32_t n) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const RElem& x = X.at(i, j);
            if (!(i == j ? pred(drop_c0(x), n) : pred(x, n))) return false;
        }
    return true;
}

} // namespace

bool dd_in_T_plus_M_pnR(const DDMatR& X, std::uint32_t n) {
    return in_class_T_plus_M(X, &in_pn_R, n);
}

bool dd_in_T_plus_M_sum(const DDMatR& X, std::uint32_t n) {
    return in_class_T_plus_M(X, &in_sum_JIpR, n);
}

bool dd_in_T_plus_M_pn_pfil1(const DDMatR& X, std::uint32_t n) {
    return in_class_T_plus_M(X, &in_pn_pfil1, n);
}

DDMatR gauge_unipotent(const PrimeCtx& cx, const GaugeV& v) {
    DDMatR U = dd_identity(cx);
    U.at(1, 0) = r_const(cx, v.v10);
    U.at(2, 0) = r_add(r_const(cx, v.v20), r_scal(v.v20p, r_delta(cx, 1)));
    U.at(2, 1) = r_const(cx, v.v21);
    return U;
}

DDMatR gauge_filtration(const PrimeCtx& cx, const GaugeV& v) {
    DDMatR D = dd_zero(cx, r_zero(cx));
    D.at(0, 0) = r_one(cx);
    D.at(1, 1) = r_E(cx);
    D.at(2, 2) = r_mul(r_E(cx), r_E(cx));
    return dd_mul(gauge_unipotent(cx, v), D);
}

StepOutcome gauge_step(const DDMatR& A, const GaugeV& v_old, std::uint32_t n, bool even) {
    const PrimeCtx& cx = *A.ctx;
    const char* tag = even ? "even" : "odd";

    const DDMatR U_old = gauge_unipotent(cx, v_old);
    const DDMatR W = dd_adjugate(U_old);
    const DDMatR M = dd_mul(W, A);

    const RElem& m10 = M.at(1, 0);
    const RElem& m11 = M.at(1, 1);
    const RElem& m12 = M.at(1, 2);
    const RElem& m20 = M.at(2, 0);
    const RElem& m21 = M.at(2, 1);
    const RElem& m22 = M.at(2, 2);

    if (!r_is_unit(m22))
        throw computation_error(std::string("NonUnitPivot: (2,2) pivot not a unit in ") +
                                tag + " step");
    const RElem m22inv = r_inv(m22);

    // (2,1) slot: m21 + m22 * v21 = 0.
    const RElem v21_ex = r_neg(r_mul(m22inv, m21));

    // (1,0) and (2,0) slots as a 2x2 system in (v10, v20-element); the (2,0) column
    // of the middle coefficient picks up one u^e twist.
    const RElem det0 = r_sub(r_mul(m11, m22), r_mul(m12, r_mul_ue(m21)));
    if (!r_is_unit(det0))
        throw computation_error(std::string("NonUnitPivot: 2x2 leading minor not a unit in ") +
                                tag + " step");
    const RElem det0inv = r_inv(det0);
    const RElem v10_ex =
        r_neg(r_mul(det0inv, r_sub(r_mul(m22, m10), r_mul(m12, m20))));

    // Project the constant slots, then re-solve the (2,0) slot against the projected
    // v10 before truncating it to its degree <= 1 part; projecting all three slots at
    // once would break the (2,0) congruence.
    GaugeV v_new;
    v_new.v10 = r_c0(v10_ex);
    v_new.v21 = r_c0(v21_ex);
    const RElem v20_rs = r_neg(
        r_mul(m22inv, r_add(m20, r_mul_ue(r_scal(v_new.v10, m21)))));
    v_new.v20 = v20_rs.c[0];
    v_new.v20p = v20_rs.c[1];

    const DDMatR U_new = gauge_unipotent(cx, v_new);
    const DDMatR R = dd_mul(M, U_new);

    StepOutcome out;
    out.v = v_new;

    for (int i = 1; i < 3; ++i) {
        for (int j = 0; j < i; ++j) {
            const std::uint32_t m = static_cast<std::uint32_t>(i - j);
            const bool ok = even ? in_pn_Fil(R.at(i, j), m, n)
                                 : in_pn_pFil_plus_Fil(R.at(i, j), m, n);
            if (!ok)
                throw computation_error(
                    std::string("CongruenceFailure: residue (") + std::to_string(i) +
                    "," + std::to_string(j) + ") out of class in " + tag + " step, n=" +
                    std::to_string(n));
        }
    }
    out.congruence_ok = true;

    const DDMatR V_old = gauge_filtration(cx, v_old);
    const DDMatR V_new = gauge_filtration(cx, v_new);
    const DDMatR AVn = dd_mul(A, V_new);
    const DDMatR P = dd_mul(dd_adjugate(V_old), AVn);
    const DDMatR X1 = dd_divide_by_E(P, 1);

    if (!step_equation_membership(X1, n, even))
        throw computation_error(
            std::string("MembershipFailure: step equation display violated in ") + tag +
            " step, n=" + std::to_string(n));
    out.step_equation_ok = true;

    out.B = dd_divide_by_E(X1, 2);

    if (!b_membership(out.B, n, even))
        throw computation_error(
            std::string("MembershipFailure: transition matrix out of class in ") + tag +
            " step, n=" + std::to_string(n));
    out.b_membership_ok = true;

    if (!dd_eq(AVn, dd_mul(V_old, out.B)))
        throw computation_error(
            std::string("MembershipFailure: A*V_new != V_old*B on the common window in ") +
            tag + " step");
    out.exact_identity_ok = true;

    return out;
}

GaugeResult diagonalize(const DDMatR& A0, std::uint32_t Nprime) {
    const PrimeCtx& cx = *A0.ctx;
    if (Nprime < 1) throw input_error("target precision must be at least 1");
    if (cx.M < Nprime + 3)
        throw input_error("filtration truncation too small: need M >= N' + 3");
    if (cx.N < Nprime)
        throw input_error("coefficient precision too small: need N >= N'");
    cx.require_strongly_generic();
    if (!dd_is_gl(A0))
        throw input_error("Frobenius matrix must be invertible (unit diagonal)");

    const std::uint64_t pNp = cx.ppow[Nprime <= cx.N ? Nprime : cx.N];
    const std::uint32_t cap = 2 * Nprime + 4;

    struct State {
        std::array<std::uint64_t, 3> lam{};
        GaugeV v;
    };
    auto reduced = [&](const State& s) {
        State r;
        for (int i = 0; i < 3; ++i) r.lam[i] = s.lam[i] % pNp;
        r.v.v10 = s.v.v10 % pNp;
        r.v.v20 = s.v.v20 % pNp;
        r.v.v20p = s.v.v20p % pNp;
        r.v.v21 = s.v.v21 % pNp;
        return r;
    };
    auto state_eq_modp = [&](const State& a, const State& b) {
        const State ra = reduced(a), rb = reduced(b);
        return ra.lam == rb.lam && ra.v == rb.v;
    };

    GaugeResult res;
    DDMatR A = A0;
    GaugeV v;
    std::vector<State> states;
    states.push_back(State{{r_c0(A.at(0, 0)), r_c0(A.at(1, 1)), r_c0(A.at(2, 2))}, v});

    for (std::uint32_t s = 0; s < cap; ++s) {
        const std::uint32_t n = s / 2;
        const bool even = (s % 2 == 0);

        StepOutcome step = gauge_step(A, v, n, even);

        std::array<std::uint64_t, 3> t{};
        for (int i = 0; i < 3; ++i) {
            t[i] = r_c0(step.B.at(i, i));
            if (t[i] % cx.p == 0)
                throw computation_error(
                    "NonUnitPivot: transition matrix has non-unit diagonal");
        }

        // Renormalize by the constant diagonal T = Diag(t): the new basis absorbs T,
        // so both the filtration coordinates and the next Frobenius matrix are
        // conjugated. This pins the diagonal scale and turns the iteration into a
        // contraction toward an exact fixed point.
        GaugeV vr;
        {
            const std::uint64_t t0i = inv_unit(t[0], cx.p, cx.pN);
            const std::uint64_t t1i = inv_unit(t[1], cx.p, cx.pN);
            vr.v10 = mulmod(mulmod(t[1], t0i, cx.pN), step.v.v10, cx.pN);
            vr.v20 = mulmod(mulmod(t[2], t0i, cx.pN), step.v.v20, cx.pN);
            vr.v20p = mulmod(mulmod(t[2], t0i, cx.pN), step.v.v20p, cx.pN);
            vr.v21 = mulmod(mulmod(t[2], t1i, cx.pN), step.v.v21, cx.pN);
        }
        const DDMatR A_next = dd_conj_diag(t, dd_frobenius(step.B));

        const bool a_ok = even ? dd_in_T_plus_M_sum(A_next, n)
                               : dd_in_T_plus_M_pnR(A_next, n + 1);
        if (!a_ok)
            throw computation_error(
                std::string("MembershipFailure: Frobenius image out of class after ") +
                (even ? "even" : "odd") + " step, n=" + std::to_string(n));

        StepRecord rec;
        rec.step = s;
        rec.n = n;
        rec.even = even;
        rec.v_solved = step.v;
        rec.v_renormalized = vr;
        rec.t = t;
        rec.lambda = {r_c0(A_next.at(0, 0)), r_c0(A_next.at(1, 1)), r_c0(A_next.at(2, 2))};
        rec.congruence_ok = step.congruence_ok;
        rec.step_equation_ok = step.step_equation_ok;
        rec.b_membership_ok = step.b_membership_ok;
        rec.exact_identity_ok = step.exact_identity_ok;
        rec.a_next_membership_ok = true;
        res.transcript.push_back(rec);

        const bool exact_fixed = (vr == v) && dd_eq(A_next, A);

        states.push_back(State{rec.lambda, vr});
        v = vr;
        A = A_next;
        res.steps = s + 1;

        if (exact_fixed) {
            res.exact_fixed_point = true;
            break;
        }
        const std::size_t m = states.size();
        if (m >= 3 && res.steps >= 2 * Nprime &&
            state_eq_modp(states[m - 1], states[m - 2]) &&
            state_eq_modp(states[m - 2], states[m - 3])) {
            break;
        }
        if (s + 1 == cap)
            throw no_convergence("NoConvergence: gauge iteration did not stabilize within " +
                                 std::to_string(cap) + " steps");
    }

    res.v = v;
    res.lambda = {r_c0(A.at(0, 0)), r_c0(A.at(1, 1)), r_c0(A.at(2, 2))};
    return res;
}

} // namespace breuil
