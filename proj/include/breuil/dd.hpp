#pragma once

#include <array>
#include <cstdint>

#include "breuil/relem.hpp"
#include "breuil/sbar.hpp"

namespace breuil {

// ---- uniform entry-ring hooks ---------------------------------------------------

inline RElem e_zero_like(const RElem& x) { return RElem(*x.ctx, x.trunc); }
inline RElem e_add(const RElem& x, const RElem& y) { return r_add(x, y); }
inline RElem e_sub(const RElem& x, const RElem& y) { return r_sub(x, y); }
inline RElem e_mul(const RElem& x, const RElem& y) { return r_mul(x, y); }
inline RElem e_neg(const RElem& x) { return r_neg(x); }
inline bool e_is_zero(const RElem& x) { return r_is_zero(x); }
inline RElem e_mul_ue_pow(RElem x, std::uint32_t c) {
    while (c--) x = r_mul_ue(x);
    return x;
}

template <class K> Sbar0<K> e_zero_like(const Sbar0<K>& x) { return Sbar0<K>(*x.ctx); }
template <class K> Sbar0<K> e_add(const Sbar0<K>& x, const Sbar0<K>& y) { return s0_add(x, y); }
template <class K> Sbar0<K> e_sub(const Sbar0<K>& x, const Sbar0<K>& y) { return s0_sub(x, y); }
template <class K> Sbar0<K> e_mul(const Sbar0<K>& x, const Sbar0<K>& y) { return s0_mul(x, y); }
template <class K> Sbar0<K> e_neg(const Sbar0<K>& x) { return s0_neg(x); }
template <class K> bool e_is_zero(const Sbar0<K>& x) { return s0_is_zero(x); }
template <class K> Sbar0<K> e_mul_ue_pow(const Sbar0<K>& x, std::uint32_t c) {
    return s0_mul_U(x, c);
}

// ---- 3x3 matrices with descent data ----------------------------------------------
//
// Entry (i,j) of the actual matrix is u^{[a_i-a_j]} * m(i,j); only the m-parts are
// stored. Products pick up the twist excess c(i,k,j) in {0,1} as a power of the ring
// element u^e; every identity below is an identity of actual matrices.
template <class E>
struct DDMat {
    const PrimeCtx* ctx = nullptr;
    std::array<E, 9> m;

    E& at(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
    const E& at(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }
};

using DDMatR = DDMat<RElem>;
template <class K> using DDMatS = DDMat<Sbar0<K>>;

template <class E>
DDMat<E> dd_zero(const PrimeCtx& cx, const E& proto) {
    DDMat<E> Z;
    Z.ctx = &cx;
    for (auto& x : Z.m) x = e_zero_like(proto);
    return Z;
}

template <class E>
DDMat<E> dd_add(const DDMat<E>& X, const DDMat<E>& Y) {
    DDMat<E> Z = X;
    for (int k = 0; k < 9; ++k) Z.m[k] = e_add(X.m[k], Y.m[k]);
    return Z;
}

template <class E>
DDMat<E> dd_sub(const DDMat<E>& X, const DDMat<E>& Y) {
    DDMat<E> Z = X;
    for (int k = 0; k < 9; ++k) Z.m[k] = e_sub(X.m[k], Y.m[k]);
    return Z;
}

template <class E>
DDMat<E> dd_mul(const DDMat<E>& X, const DDMat<E>& Y) {
    const PrimeCtx& cx = *X.ctx;
    DDMat<E> Z = dd_zero(cx, X.m[0]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            E acc = e_zero_like(X.m[0]);
            for (int k = 0; k < 3; ++k) {
                E t = e_mul(X.at(i, k), Y.at(k, j));
                acc = e_add(acc, e_mul_ue_pow(t, cx.twist_excess(i, k, j)));
            }
            Z.at(i, j) = acc;
        }
    return Z;
}

// Adjugate: X * adj(X) = adj(X) * X = det(X) * Id as actual matrices. Each cofactor
// term's twist exceeds the slot twist [a_i-a_j] by e*exc with exc in {0,1}.
template <class E>
DDMat<E> dd_adjugate(const DDMat<E>& X) {
    const PrimeCtx& cx = *X.ctx;
    DDMat<E> Z = dd_zero(cx, X.m[0]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int j1 = (j + 1) % 3, j2 = (j + 2) % 3; // rows != j, any order (sign-neutral pair)
            int i1 = (i + 1) % 3, i2 = (i + 2) % 3; // cols != i
            // adj_ij = (-1)^{i+j} (X_{j1,i1}X_{j2,i2} - X_{j1,i2}X_{j2,i1}) with the
            // cyclic choice of complements, which already absorbs the sign.
            std::uint32_t s1 = cx.bracket(j1, i1) + cx.bracket(j2, i2);
            std::uint32_t s2 = cx.bracket(j1, i2) + cx.bracket(j2, i1);
            std::uint32_t b = cx.bracket(i, j);
            if (s1 < b || (s1 - b) % cx.e != 0 || s2 < b || (s2 - b) % cx.e != 0)
                throw computation_error("dd_adjugate: twist bookkeeping violated");
            std::uint32_t exc1 = (s1 - b) / cx.e, exc2 = (s2 - b) / cx.e;
            if (exc1 > 1 || exc2 > 1)
                throw computation_error("dd_adjugate: twist excess out of range");
            E t1 = e_mul_ue_pow(e_mul(X.at(j1, i1), X.at(j2, i2)), exc1);
            E t2 = e_mul_ue_pow(e_mul(X.at(j1, i2), X.at(j2, i1)), exc2);
            Z.at(i, j) = e_sub(t1, t2);
        }
    return Z;
}

// det(X) is omega^0-isotypic: an honest ring element.
template <class E>
E dd_det(const DDMat<E>& X) {
    const PrimeCtx& cx = *X.ctx;
    static constexpr int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                       {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    E acc = e_zero_like(X.m[0]);
    for (int s = 0; s < 6; ++s) {
        std::uint32_t tw = cx.bracket(0, perm[s][0]) + cx.bracket(1, perm[s][1]) +
                           cx.bracket(2, perm[s][2]);
        if (tw % cx.e != 0) throw computation_error("dd_det: twist bookkeeping violated");
        E t = e_mul(e_mul(X.at(0, perm[s][0]), X.at(1, perm[s][1])), X.at(2, perm[s][2]));
        t = e_mul_ue_pow(t, tw / cx.e);
        acc = s < 3 ? e_add(acc, t) : e_sub(acc, t);
    }
    return acc;
}

// Conjugation by Diag(t0,t1,t2) with scalar units t_i: m(i,j) -> t_i t_j^{-1} m(i,j).
// Twists are untouched, so this is T X T^{-1} of actual matrices.
DDMatR dd_conj_diag(const std::array<std::uint64_t, 3>& t, const DDMatR& X);

template <class K>
DDMatS<K> dd_conj_diag_s(const std::array<K, 3>& t, const DDMatS<K>& X) {
    DDMatS<K> Z = X;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Z.at(i, j) = s0_scal(t[i] * t[j].inv(), X.at(i, j));
    return Z;
}

// ---- characteristic-zero specifics ------------------------------------------------

DDMatR dd_identity(const PrimeCtx& cx);
DDMatR dd_scalar_diag(const PrimeCtx& cx, const std::array<std::uint64_t, 3>& t);

// Semilinear Frobenius of the actual matrix: entry u^{[a_i-a_j]}m goes to
// u^{p[a_i-a_j]}phi(m), i.e. the new m-part is (u^e)^{[a_i-a_j]} phi(m).
DDMatR dd_frobenius(const DDMatR& X);

// Divide every m-part by E^k (throws unless exactly divisible on the window).
DDMatR dd_divide_by_E(const DDMatR& X, std::uint32_t k);

// Invertibility over the truncated ring: det is a unit iff every diagonal m-part has
// unit constant coefficient (off-diagonal permutation terms are p-divisible at c0).
bool dd_is_gl(const DDMatR& X);

bool dd_eq(const DDMatR& X, const DDMatR& Y);
bool dd_eq_mod(const DDMatR& X, const DDMatR& Y, std::uint32_t n);

// ---- mod-p specifics ---------------------------------------------------------------

template <class K>
DDMatS<K> dd_identity_s(const PrimeCtx& cx) {
    DDMatS<K> Z = dd_zero(cx, Sbar0<K>(cx));
    for (int i = 0; i < 3; ++i) Z.at(i, i) = s0_const(cx, K::one(cx.p));
    return Z;
}

// Matrix-level Frobenius mod p: phi(U) = u^{ep} = 0, so phi(m) = m(0) and the twist
// contributes U^{[a_i-a_j]}: new m-part = m(0) * U^{[a_i-a_j]}.
template <class K>
DDMatS<K> dd_frobenius_s(const DDMatS<K>& X) {
    const PrimeCtx& cx = *X.ctx;
    DDMatS<K> Z = dd_zero(cx, X.m[0]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            Z.at(i, j) = s0_monomial(cx, cx.bracket(i, j), s0_eval0(X.at(i, j)));
    return Z;
}

template <class K>
DDMatS<K> dd_divide_by_U(const DDMatS<K>& X, std::uint32_t k) {
    DDMatS<K> Z = X;
    for (auto& x : Z.m) x = s0_divide_by_U(x, k);
    return Z;
}

template <class K>
bool dd_eq_s(const DDMatS<K>& X, const DDMatS<K>& Y) {
    for (int k = 0; k < 9; ++k)
        if (!s0_eq(X.m[k], Y.m[k])) return false;
    return true;
}

template <class K>
bool dd_is_gl_s(const DDMatS<K>& X) {
    for (int i = 0; i < 3; ++i)
        if (!s0_eval0(X.at(i, i)).is_unit()) return false;
    return true;
}

} // namespace breuil
