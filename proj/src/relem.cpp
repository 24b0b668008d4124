#include "breuil/relem.hpp"

#include <algorithm>
#include <sstream>

namespace breuil {

namespace {

void check_same(const RElem& x, const RElem& y) {
    if (x.ctx != y.ctx || x.trunc != y.trunc)
        throw computation_error("RElem: mixed contexts or truncations");
}

std::uint32_t window2(const RElem& x, const RElem& y) {
    return std::min(x.fil_known, y.fil_known);
}

} // namespace

RElem r_zero(const PrimeCtx& cx) { return RElem(cx, cx.M); }

RElem r_one(const PrimeCtx& cx) { return r_const(cx, 1); }

RElem r_const(const PrimeCtx& cx, std::uint64_t v) {
    RElem x(cx, cx.M);
    x.c[0] = v % cx.pN;
    return x;
}

RElem r_delta(const PrimeCtx& cx, std::uint32_t k) {
    RElem x(cx, cx.M);
    if (k >= x.trunc) throw computation_error("r_delta: index beyond truncation");
    x.c[k] = 1;
    return x;
}

RElem r_E(const PrimeCtx& cx) { return r_delta(cx, 1); }

RElem r_ue(const PrimeCtx& cx) {
    RElem x = r_delta(cx, 1);
    x.c[0] = submod(0, cx.p, cx.pN);
    return x;
}

RElem r_add(const RElem& x, const RElem& y) {
    check_same(x, y);
    RElem z(*x.ctx, x.trunc);
    z.fil_known = window2(x, y);
    for (std::uint32_t k = 0; k < z.fil_known; ++k) z.c[k] = addmod(x.c[k], y.c[k], x.ctx->pN);
    return z;
}

RElem r_sub(const RElem& x, const RElem& y) {
    check_same(x, y);
    RElem z(*x.ctx, x.trunc);
    z.fil_known = window2(x, y);
    for (std::uint32_t k = 0; k < z.fil_known; ++k) z.c[k] = submod(x.c[k], y.c[k], x.ctx->pN);
    return z;
}

RElem r_neg(const RElem& x) {
    RElem z(*x.ctx, x.trunc);
    z.fil_known = x.fil_known;
    for (std::uint32_t k = 0; k < z.fil_known; ++k) z.c[k] = submod(0, x.c[k], x.ctx->pN);
    return z;
}

RElem r_mul(const RElem& x, const RElem& y) {
    check_same(x, y);
    const PrimeCtx& cx = *x.ctx;
    RElem z(cx, x.trunc);
    z.fil_known = std::min(window2(x, y), x.trunc);
    for (std::uint32_t j = 0; j < x.fil_known; ++j) {
        if (x.c[j] == 0) continue;
        for (std::uint32_t k = 0; k < y.fil_known; ++k) {
            std::uint32_t t = j + k;
            if (t >= z.fil_known) break;
            if (y.c[k] == 0) continue;
            z.c[t] = addmod(z.c[t], mulmod(mulmod(x.c[j], y.c[k], cx.pN), cx.C(t, j), cx.pN),
                            cx.pN);
        }
    }
    return z;
}

RElem r_scal(std::uint64_t s, const RElem& x) {
    RElem z(*x.ctx, x.trunc);
    z.fil_known = x.fil_known;
    s %= x.ctx->pN;
    for (std::uint32_t k = 0; k < z.fil_known; ++k) z.c[k] = mulmod(s, x.c[k], x.ctx->pN);
    return z;
}

RElem r_pow(const RElem& x, std::uint32_t k) {
    RElem r(*x.ctx, x.trunc);
    r.c[0] = 1;
    r.fil_known = x.fil_known;
    RElem b = x;
    while (k) {
        if (k & 1) r = r_mul(r, b);
        b = r_mul(b, b);
        k >>= 1;
    }
    return r;
}

bool r_is_zero(const RElem& x) {
    for (std::uint32_t k = 0; k < x.fil_known; ++k)
        if (x.c[k] != 0) return false;
    return true;
}

bool r_eq(const RElem& x, const RElem& y) {
    check_same(x, y);
    std::uint32_t w = window2(x, y);
    for (std::uint32_t k = 0; k < w; ++k)
        if (x.c[k] != y.c[k]) return false;
    return true;
}

bool r_eq_mod(const RElem& x, const RElem& y, std::uint32_t n) {
    check_same(x, y);
    std::uint64_t m = x.ctx->pclamp(n);
    std::uint32_t w = window2(x, y);
    for (std::uint32_t k = 0; k < w; ++k)
        if (x.c[k] % m != y.c[k] % m) return false;
    return true;
}

std::uint64_t r_c0(const RElem& x) {
    if (x.fil_known == 0) throw computation_error("r_c0: empty window");
    return x.c[0];
}

bool r_is_unit(const RElem& x) { return r_c0(x) % x.ctx->p != 0; }

RElem r_inv(const RElem& x) {
    if (!r_is_unit(x)) throw computation_error("r_inv: not a unit (c0 divisible by p)");
    const PrimeCtx& cx = *x.ctx;
    RElem z(cx, x.trunc);
    z.fil_known = x.fil_known;
    z.c[0] = inv_unit(x.c[0], cx.p, cx.pN);
    RElem one(cx, x.trunc);
    one.c[0] = 1;
    one.fil_known = x.fil_known;
    for (int it = 0; it < 64; ++it) {
        RElem xz = r_mul(x, z);
        if (r_eq(xz, one)) return z;
        z = r_mul(z, r_sub(r_scal(2, one), xz));
    }
    throw computation_error("r_inv: Newton iteration failed to converge");
}

RElem gamma_to_delta(const PrimeCtx& cx, std::uint32_t i, std::uint32_t trunc) {
    RElem x(cx, trunc);
    for (std::uint32_t k = 0; k <= i && k < trunc; ++k) {
        std::uint32_t d = i - k;
        auto [v, unit] = factorial_split(d, cx.p, cx.pN);
        if (d < v) throw computation_error("gamma_to_delta: negative valuation");
        std::uint32_t ex = d - v; // v_p of (-p)^d / d!
        std::uint64_t coef = 0;
        if (ex < cx.N) {
            coef = mulmod(cx.ppow[ex], inv_unit(unit, cx.p, cx.pN), cx.pN);
            if (d % 2 == 1) coef = submod(0, coef, cx.pN);
        }
        x.c[k] = coef;
    }
    return x;
}

RElem gamma_to_delta(const PrimeCtx& cx, std::uint32_t i) { return gamma_to_delta(cx, i, cx.M); }

RElem phi_of_E(const PrimeCtx& cx) {
    // u^{pe} = p! * gamma_p, so phi(E) = p!*gamma_p + p.
    auto [v, unit] = factorial_split(cx.p, cx.p, cx.pN);
    if (v != 1) throw computation_error("phi_of_E: v_p(p!) != 1");
    std::uint64_t pfact = mulmod(cx.ppow[1], unit, cx.pN);
    RElem x = r_scal(pfact, gamma_to_delta(cx, cx.p));
    x.c[0] = addmod(x.c[0], cx.p % cx.pN, cx.pN);
    return x;
}

RElem frobenius_r(const RElem& x) {
    const PrimeCtx& cx = *x.ctx;
    // Phi at the operand's truncation (p!*gamma_p + p, built from the gamma expansion).
    auto [v, unit] = factorial_split(cx.p, cx.p, cx.pN);
    if (v != 1) throw computation_error("frobenius_r: v_p(p!) != 1");
    RElem phiE = r_scal(mulmod(cx.ppow[1], unit, cx.pN), gamma_to_delta(cx, cx.p, x.trunc));
    phiE.c[0] = addmod(phiE.c[0], cx.p % cx.pN, cx.pN);

    RElem acc(cx, x.trunc);
    if (x.fil_known > 0) acc.c[0] = x.c[0];
    RElem term(cx, x.trunc); // Phi^k / k!, exact since k < M <= p
    term.c[0] = 1;
    for (std::uint32_t k = 1; k < x.fil_known; ++k) {
        term = r_scal(inv_unit(k, cx.p, cx.pN), r_mul(term, phiE));
        if (x.c[k] != 0) acc = r_add(acc, r_scal(x.c[k], term));
    }
    acc.fil_known = x.trunc; // full window again; p-adic trust is min(N, old window)
    return acc;
}

RElem divide_by_E(const RElem& x) {
    if (x.fil_known < 2) throw computation_error("divide_by_E: window too short");
    if (x.c[0] != 0) throw computation_error("divide_by_E: constant term nonzero");
    const PrimeCtx& cx = *x.ctx;
    RElem y(cx, x.trunc);
    y.fil_known = x.fil_known - 1;
    for (std::uint32_t k = 1; k < x.fil_known; ++k)
        y.c[k - 1] = mulmod(x.c[k], inv_unit(k, cx.p, cx.pN), cx.pN);
    for (std::uint32_t k = y.fil_known; k < y.trunc; ++k) y.c[k] = 0;
    return y;
}

RElem r_mul_ue(const RElem& x) {
    if (x.trunc < 2) throw computation_error("r_mul_ue: truncation too short");
    RElem ue(*x.ctx, x.trunc);
    ue.c[1] = 1;
    ue.c[0] = submod(0, x.ctx->p, x.ctx->pN);
    return r_mul(x, ue);
}

namespace {

void need_window(const RElem& x, std::uint32_t k) {
    if (x.fil_known < k)
        throw computation_error("ideal membership: window too short to decide");
}

bool div_by(const RElem& x, std::uint32_t k, std::uint64_t m) { return x.c[k] % m == 0; }

} // namespace

bool in_pn_R(const RElem& x, std::uint32_t n) {
    need_window(x, 1);
    std::uint64_t m = x.ctx->pclamp(n);
    for (std::uint32_t k = 0; k < x.fil_known; ++k)
        if (!div_by(x, k, m)) return false;
    return true;
}

bool in_pn_Fil(const RElem& x, std::uint32_t m_, std::uint32_t n) {
    need_window(x, m_ + 1);
    std::uint64_t m = x.ctx->pclamp(n);
    for (std::uint32_t k = 0; k < x.fil_known; ++k) {
        if (k < m_) {
            if (x.c[k] != 0) return false;
        } else if (!div_by(x, k, m)) {
            return false;
        }
    }
    return true;
}

bool in_pn_pFil_plus_Fil(const RElem& x, std::uint32_t m_, std::uint32_t n) {
    need_window(x, m_ + 1);
    for (std::uint32_t k = 0; k < m_ && k < x.fil_known; ++k)
        if (x.c[k] != 0) return false;
    if (!div_by(x, m_, x.ctx->pclamp(n + 1))) return false;
    std::uint64_t m = x.ctx->pclamp(n);
    for (std::uint32_t k = m_ + 1; k < x.fil_known; ++k)
        if (!div_by(x, k, m)) return false;
    return true;
}

bool in_pn_I(const RElem& x, std::uint32_t n) {
    need_window(x, 2);
    if (x.c[0] != 0) return false;
    std::uint64_t m = x.ctx->pclamp(n + 1);
    for (std::uint32_t k = 1; k < x.fil_known; ++k)
        if (!div_by(x, k, m)) return false;
    return true;
}

bool in_pn_J(const RElem& x, std::uint32_t n) { return in_pn_pFil_plus_Fil(x, 2, n); }

bool in_pn_pfil1(const RElem& x, std::uint32_t n) {
    need_window(x, 1);
    if (!div_by(x, 0, x.ctx->pclamp(n + 1))) return false;
    std::uint64_t m = x.ctx->pclamp(n);
    for (std::uint32_t k = 1; k < x.fil_known; ++k)
        if (!div_by(x, k, m)) return false;
    return true;
}

bool in_sum_JIpR(const RElem& x, std::uint32_t n) {
    need_window(x, 3);
    std::uint64_t m1 = x.ctx->pclamp(n + 1);
    std::uint64_t m0 = x.ctx->pclamp(n);
    for (std::uint32_t k = 0; k < x.fil_known; ++k)
        if (!div_by(x, k, k < 3 ? m1 : m0)) return false;
    return true;
}

std::string r_to_string(const RElem& x) {
    std::ostringstream os;
    os << "[";
    for (std::uint32_t k = 0; k < x.trunc; ++k) {
        if (k) os << ", ";
        if (k < x.fil_known)
            os << x.c[k];
        else
            os << "?";
    }
    os << "]";
    return os.str();
}

} // namespace breuil
