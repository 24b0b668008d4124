#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "breuil/coeff.hpp"

namespace breuil {

// ---- Sbar = K[u]/(u^{ep}) -------------------------------------------------------
//
// The residue ring of the divided-power ring mod p: E(u)^p = (u^e + p)^p reduces to
// u^{ep}. K is Fp or FpDual (tangent computations). Frobenius sends u to u^p and is
// trivial on K; the monodromy operator is N = -u d/du.
template <class K>
struct SbarPoly {
    const PrimeCtx* ctx = nullptr;
    std::vector<K> c; // c[d] = coefficient of u^d, 0 <= d < e*p

    SbarPoly() = default;
    explicit SbarPoly(const PrimeCtx& cx)
        : ctx(&cx), c(static_cast<std::size_t>(cx.e) * cx.p, K::zero(cx.p)) {}

    std::uint32_t deg_bound() const { return ctx->e * ctx->p; }
};

template <class K>
SbarPoly<K> sp_monomial(const PrimeCtx& cx, std::uint32_t d, K v) {
    SbarPoly<K> x(cx);
    if (d < x.deg_bound()) x.c[d] = v;
    return x;
}

template <class K>
SbarPoly<K> sp_const(const PrimeCtx& cx, K v) {
    return sp_monomial(cx, 0, v);
}

template <class K>
SbarPoly<K> sp_add(const SbarPoly<K>& x, const SbarPoly<K>& y) {
    SbarPoly<K> z(*x.ctx);
    for (std::size_t d = 0; d < z.c.size(); ++d) z.c[d] = x.c[d] + y.c[d];
    return z;
}

template <class K>
SbarPoly<K> sp_sub(const SbarPoly<K>& x, const SbarPoly<K>& y) {
    SbarPoly<K> z(*x.ctx);
    for (std::size_t d = 0; d < z.c.size(); ++d) z.c[d] = x.c[d] - y.c[d];
    return z;
}

template <class K>
SbarPoly<K> sp_neg(const SbarPoly<K>& x) {
    SbarPoly<K> z(*x.ctx);
    for (std::size_t d = 0; d < z.c.size(); ++d) z.c[d] = -x.c[d];
    return z;
}

template <class K>
SbarPoly<K> sp_mul(const SbarPoly<K>& x, const SbarPoly<K>& y) {
    SbarPoly<K> z(*x.ctx);
    std::size_t T = z.c.size();
    for (std::size_t i = 0; i < T; ++i) {
        if (x.c[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < T; ++j) {
            if (y.c[j].is_zero()) continue;
            z.c[i + j] = z.c[i + j] + x.c[i] * y.c[j];
        }
    }
    return z;
}

template <class K>
SbarPoly<K> sp_scal(K s, const SbarPoly<K>& x) {
    SbarPoly<K> z(*x.ctx);
    for (std::size_t d = 0; d < z.c.size(); ++d) z.c[d] = s * x.c[d];
    return z;
}

template <class K>
bool sp_is_zero(const SbarPoly<K>& x) {
    for (const K& v : x.c)
        if (!v.is_zero()) return false;
    return true;
}

template <class K>
bool sp_eq(const SbarPoly<K>& x, const SbarPoly<K>& y) {
    return sp_is_zero(sp_sub(x, y));
}

// u^d -> u^{pd}; coefficients fixed. Kills every degree d >= e.
template <class K>
SbarPoly<K> sp_frobenius(const SbarPoly<K>& x) {
    SbarPoly<K> z(*x.ctx);
    std::size_t T = z.c.size();
    for (std::size_t d = 0; d * x.ctx->p < T; ++d) z.c[d * x.ctx->p] = x.c[d];
    return z;
}

// N = -u d/du: u^d -> -d u^d.
template <class K>
SbarPoly<K> sp_nop(const SbarPoly<K>& x) {
    SbarPoly<K> z(*x.ctx);
    std::uint32_t p = x.ctx->p;
    for (std::size_t d = 0; d < z.c.size(); ++d)
        z.c[d] = -(K(p, d % p) * x.c[d]);
    return z;
}

// Projection onto the u-degrees congruent to r mod e (descent-data isotypicity).
template <class K>
SbarPoly<K> sp_isotypic(const SbarPoly<K>& x, std::uint32_t r) {
    SbarPoly<K> z(*x.ctx);
    std::uint32_t e = x.ctx->e;
    for (std::size_t d = 0; d < z.c.size(); ++d)
        if (d % e == r % e) z.c[d] = x.c[d];
    return z;
}

template <class K>
bool sp_supported_on(const SbarPoly<K>& x, std::uint32_t r) {
    std::uint32_t e = x.ctx->e;
    for (std::size_t d = 0; d < x.c.size(); ++d)
        if (d % e != r % e && !x.c[d].is_zero()) return false;
    return true;
}

template <class K>
SbarPoly<K> sp_shift_up(const SbarPoly<K>& x, std::uint32_t k) {
    SbarPoly<K> z(*x.ctx);
    std::size_t T = z.c.size();
    for (std::size_t d = 0; d + k < T; ++d) z.c[d + k] = x.c[d];
    return z;
}

// Coefficient of u^{d+k} moved down to u^d; the top k coefficients of the result are
// zero (one representative of x/u^k when u^k | x, a plain linear shift otherwise).
template <class K>
SbarPoly<K> sp_shift_down(const SbarPoly<K>& x, std::uint32_t k) {
    SbarPoly<K> z(*x.ctx);
    std::size_t T = z.c.size();
    for (std::size_t d = 0; d + k < T; ++d) z.c[d] = x.c[d + k];
    return z;
}

template <class K>
bool sp_divisible(const SbarPoly<K>& x, std::uint32_t k) {
    for (std::size_t d = 0; d < k && d < x.c.size(); ++d)
        if (!x.c[d].is_zero()) return false;
    return true;
}

// ---- Sbar0 = K[U]/(U^p), U = u^e --------------------------------------------------
//
// The omega^0-isotypic part of Sbar; where the mod-p gauge sweep happens. wnd <= p is
// the known-coefficient window: an exact division by U^k forgets the top k indices.
template <class K>
struct Sbar0 {
    const PrimeCtx* ctx = nullptr;
    std::uint32_t wnd = 0;
    std::vector<K> c; // c[k] = coefficient of U^k, 0 <= k < p

    Sbar0() = default;
    explicit Sbar0(const PrimeCtx& cx) : ctx(&cx), wnd(cx.p), c(cx.p, K::zero(cx.p)) {}
};

template <class K>
Sbar0<K> s0_const(const PrimeCtx& cx, K v) {
    Sbar0<K> x(cx);
    x.c[0] = v;
    return x;
}

template <class K>
Sbar0<K> s0_monomial(const PrimeCtx& cx, std::uint32_t k, K v) {
    Sbar0<K> x(cx);
    if (k >= cx.p) throw computation_error("s0_monomial: exponent beyond U^p");
    x.c[k] = v;
    return x;
}

template <class K>
Sbar0<K> s0_add(const Sbar0<K>& x, const Sbar0<K>& y) {
    Sbar0<K> z(*x.ctx);
    z.wnd = std::min(x.wnd, y.wnd);
    for (std::uint32_t k = 0; k < z.wnd; ++k) z.c[k] = x.c[k] + y.c[k];
    return z;
}

template <class K>
Sbar0<K> s0_sub(const Sbar0<K>& x, const Sbar0<K>& y) {
    Sbar0<K> z(*x.ctx);
    z.wnd = std::min(x.wnd, y.wnd);
    for (std::uint32_t k = 0; k < z.wnd; ++k) z.c[k] = x.c[k] - y.c[k];
    return z;
}

template <class K>
Sbar0<K> s0_neg(const Sbar0<K>& x) {
    Sbar0<K> z(*x.ctx);
    z.wnd = x.wnd;
    for (std::uint32_t k = 0; k < z.wnd; ++k) z.c[k] = -x.c[k];
    return z;
}

template <class K>
Sbar0<K> s0_mul(const Sbar0<K>& x, const Sbar0<K>& y) {
    Sbar0<K> z(*x.ctx);
    z.wnd = std::min(x.wnd, y.wnd);
    for (std::uint32_t i = 0; i < x.wnd; ++i) {
        if (x.c[i].is_zero()) continue;
        for (std::uint32_t j = 0; j < y.wnd && i + j < z.wnd; ++j)
            z.c[i + j] = z.c[i + j] + x.c[i] * y.c[j];
    }
    return z;
}

template <class K>
Sbar0<K> s0_scal(K s, const Sbar0<K>& x) {
    Sbar0<K> z(*x.ctx);
    z.wnd = x.wnd;
    for (std::uint32_t k = 0; k < z.wnd; ++k) z.c[k] = s * x.c[k];
    return z;
}

template <class K>
bool s0_is_zero(const Sbar0<K>& x) {
    for (std::uint32_t k = 0; k < x.wnd; ++k)
        if (!x.c[k].is_zero()) return false;
    return true;
}

template <class K>
bool s0_eq(const Sbar0<K>& x, const Sbar0<K>& y) {
    std::uint32_t w = std::min(x.wnd, y.wnd);
    for (std::uint32_t k = 0; k < w; ++k)
        if (x.c[k] != y.c[k]) return false;
    return true;
}

template <class K>
K s0_eval0(const Sbar0<K>& x) {
    if (x.wnd == 0) throw computation_error("s0_eval0: empty window");
    return x.c[0];
}

template <class K>
K s0_coeff(const Sbar0<K>& x, std::uint32_t k) {
    if (k >= x.wnd) throw computation_error("s0_coeff: index outside window");
    return x.c[k];
}

template <class K>
bool s0_is_unit(const Sbar0<K>& x) {
    return s0_eval0(x).is_unit(); // local ring: unit iff constant term is
}

template <class K>
Sbar0<K> s0_inv(const Sbar0<K>& x) {
    if (!s0_is_unit(x)) throw computation_error("s0_inv: not a unit");
    Sbar0<K> z(*x.ctx);
    z.wnd = x.wnd;
    K i0 = x.c[0].inv();
    z.c[0] = i0;
    for (std::uint32_t t = 1; t < z.wnd; ++t) {
        K s = K::zero(x.ctx->p);
        for (std::uint32_t j = 1; j <= t; ++j) s = s + x.c[j] * z.c[t - j];
        z.c[t] = -(i0 * s);
    }
    return z;
}

// x = U^k * result exactly; requires the low k known coefficients to vanish and
// shortens the window by k.
template <class K>
Sbar0<K> s0_divide_by_U(const Sbar0<K>& x, std::uint32_t k) {
    if (x.wnd < k) throw computation_error("s0_divide_by_U: window too short");
    for (std::uint32_t j = 0; j < k; ++j)
        if (!x.c[j].is_zero()) throw computation_error("s0_divide_by_U: not divisible");
    Sbar0<K> z(*x.ctx);
    z.wnd = x.wnd - k;
    for (std::uint32_t j = 0; j < z.wnd; ++j) z.c[j] = x.c[j + k];
    for (std::uint32_t j = z.wnd; j < z.c.size(); ++j) z.c[j] = K::zero(x.ctx->p);
    return z;
}

template <class K>
Sbar0<K> s0_mul_U(const Sbar0<K>& x, std::uint32_t k) {
    Sbar0<K> z(*x.ctx);
    z.wnd = std::min<std::uint32_t>(x.ctx->p, x.wnd + k);
    for (std::uint32_t j = 0; j + k < z.wnd; ++j) z.c[j + k] = x.c[j];
    return z;
}

template <class K>
bool s0_divisible(const Sbar0<K>& x, std::uint32_t k) {
    if (x.wnd < k) throw computation_error("s0_divisible: window too short");
    for (std::uint32_t j = 0; j < k; ++j)
        if (!x.c[j].is_zero()) return false;
    return true;
}

// U^k -> u^{ek} inside Sbar; requires a full window.
template <class K>
SbarPoly<K> s0_embed(const Sbar0<K>& x) {
    if (x.wnd != x.ctx->p) throw computation_error("s0_embed: partial window");
    SbarPoly<K> z(*x.ctx);
    for (std::uint32_t k = 0; k < x.ctx->p; ++k) z.c[static_cast<std::size_t>(k) * x.ctx->e] = x.c[k];
    return z;
}

} // namespace breuil
