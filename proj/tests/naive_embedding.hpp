// Naive twisted-polynomial oracle shared by the descent-data unit tests and the
// acceptance binary. The actual matrix behind a descent-data matrix has entry
// u^{[a_i-a_j]} m_{ij} in (Z/p^N)[u]/(E(u)^M); everything here is schoolbook
// polynomial arithmetic with long division by the monic E^M — no delta-basis, no
// binomial table, no twist bookkeeping.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "breuil/dd.hpp"
#include "breuil/sbar.hpp"

namespace naive_embed {

using breuil::addmod;
using breuil::inv_unit;
using breuil::mulmod;
using breuil::powmod;
using breuil::submod;

using UPoly = std::vector<std::uint64_t>;

inline UPoly up_mul(const breuil::PrimeCtx& cx, const UPoly& f, const UPoly& g) {
    UPoly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            h[i + j] = addmod(h[i + j], mulmod(f[i], g[j], cx.pN), cx.pN);
    }
    return h;
}

// Reduce mod E(u)^M = sum_k C(M,k) p^{M-k} u^{ek}, monic of degree e*M.
inline void up_reduce(const breuil::PrimeCtx& cx, UPoly& f) {
    const std::uint32_t D = cx.e * cx.M;
    if (f.size() <= D) {
        f.resize(D, 0);
        return;
    }
    for (std::size_t d = f.size(); d-- > D;) {
        std::uint64_t c = f[d];
        if (c == 0) continue;
        f[d] = 0;
        for (std::uint32_t k = 0; k < cx.M; ++k) {
            std::uint64_t coef = mulmod(cx.C(cx.M, k), powmod(cx.p, cx.M - k, cx.pN), cx.pN);
            std::size_t at = d - D + static_cast<std::size_t>(cx.e) * k;
            f[at] = submod(f[at], mulmod(c, coef, cx.pN), cx.pN);
        }
    }
    f.resize(D);
}

inline UPoly embed_entry(const breuil::PrimeCtx& cx, int i, int j, const breuil::RElem& m) {
    // u^{[a_i-a_j]} * sum_k m_k E^k / k!, degree < e*M: no reduction needed.
    UPoly out(static_cast<std::size_t>(cx.e) * cx.M, 0);
    UPoly epow{1};
    const std::uint32_t b = cx.bracket(i, j);
    std::uint64_t kfact = 1;
    for (std::uint32_t k = 0; k < m.fil_known; ++k) {
        if (k > 0) {
            UPoly E(cx.e + 1, 0);
            E[0] = cx.p;
            E[cx.e] = 1;
            epow = up_mul(cx, epow, E);
            kfact = mulmod(kfact, k, cx.pN);
        }
        if (m.c[k] == 0) continue;
        std::uint64_t coef = mulmod(m.c[k], inv_unit(kfact, cx.p, cx.pN), cx.pN);
        for (std::size_t d = 0; d < epow.size(); ++d)
            out[d + b] = addmod(out[d + b], mulmod(coef, epow[d], cx.pN), cx.pN);
    }
    return out;
}

using NaiveMat = std::array<UPoly, 9>;

inline NaiveMat embed_matrix(const breuil::DDMatR& X) {
    const breuil::PrimeCtx& cx = *X.ctx;
    NaiveMat E;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) E[3 * i + j] = embed_entry(cx, i, j, X.at(i, j));
    return E;
}

inline NaiveMat naive_mul(const breuil::PrimeCtx& cx, const NaiveMat& X, const NaiveMat& Y) {
    NaiveMat Z;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            UPoly acc(static_cast<std::size_t>(cx.e) * cx.M, 0);
            for (int k = 0; k < 3; ++k) {
                UPoly t = up_mul(cx, X[3 * i + k], Y[3 * k + j]);
                up_reduce(cx, t);
                for (std::size_t d = 0; d < acc.size(); ++d)
                    acc[d] = addmod(acc[d], t[d], cx.pN);
            }
            Z[3 * i + j] = acc;
        }
    return Z;
}

inline NaiveMat naive_adjugate(const breuil::PrimeCtx& cx, const NaiveMat& X) {
    NaiveMat Z;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int j1 = (j + 1) % 3, j2 = (j + 2) % 3, i1 = (i + 1) % 3, i2 = (i + 2) % 3;
            UPoly t1 = up_mul(cx, X[3 * j1 + i1], X[3 * j2 + i2]);
            UPoly t2 = up_mul(cx, X[3 * j1 + i2], X[3 * j2 + i1]);
            up_reduce(cx, t1);
            up_reduce(cx, t2);
            for (std::size_t d = 0; d < t1.size(); ++d) t1[d] = submod(t1[d], t2[d], cx.pN);
            Z[3 * i + j] = t1;
        }
    return Z;
}

inline bool naive_eq(const NaiveMat& X, const NaiveMat& Y) {
    for (int t = 0; t < 9; ++t) {
        if (X[t].size() != Y[t].size()) return false;
        for (std::size_t d = 0; d < X[t].size(); ++d)
            if (X[t][d] != Y[t][d]) return false;
    }
    return true;
}

// ---- naive oracle, residue field ---------------------------------------------------

inline std::array<breuil::SbarPoly<breuil::Fp>, 9>
embed_matrix_modp(const breuil::DDMatS<breuil::Fp>& X) {
    const breuil::PrimeCtx& cx = *X.ctx;
    std::array<breuil::SbarPoly<breuil::Fp>, 9> E;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            E[3 * i + j] = breuil::sp_shift_up(breuil::s0_embed(X.at(i, j)), cx.bracket(i, j));
    return E;
}

} // namespace naive_embed
