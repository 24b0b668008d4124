#pragma once

#include <random>

#include "breuil/dd.hpp"
#include "breuil/monodromy.hpp"
#include "breuil/relem.hpp"
#include "breuil/sbar.hpp"

namespace breuil {

// ---- seeded random inputs ----------------------------------------------------------
//
// Shared by the tests, the acceptance harness, and the CLI self-test. Every draw goes
// through a caller-owned mt19937_64, so a fixed seed reproduces a run exactly.

inline std::uint64_t rand_unit_modpN(const PrimeCtx& cx, std::mt19937_64& rng) {
    std::uint64_t x;
    do {
        x = rng() % cx.pN;
    } while (x % cx.p == 0);
    return x;
}

inline RElem rand_relem(const PrimeCtx& cx, std::mt19937_64& rng) {
    RElem x(cx, cx.M);
    for (auto& ck : x.c) ck = rng() % cx.pN;
    return x;
}

// Diag(units) * (Id + p * random): the well-posed diagonalization input shape.
inline DDMatR rand_gl3_near_diagonal(const PrimeCtx& cx, std::mt19937_64& rng) {
    DDMatR X = dd_zero(cx, r_zero(cx));
    std::array<std::uint64_t, 3> diag;
    for (auto& d : diag) d = rand_unit_modpN(cx, rng);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RElem r = r_scal(cx.p, rand_relem(cx, rng));
            if (i == j) r = r_add(r, r_const(cx, 1));
            X.at(i, j) = r_scal(diag[static_cast<std::size_t>(i)], r);
        }
    return X;
}

// Fully random element of GL_3 (det a unit), by rejection.
inline DDMatR rand_gl3(const PrimeCtx& cx, std::mt19937_64& rng) {
    for (;;) {
        DDMatR X = dd_zero(cx, r_zero(cx));
        for (auto& entry : X.m) entry = rand_relem(cx, rng);
        if (dd_is_gl(X)) return X;
    }
}

template <class K>
inline Sbar0<K> rand_sbar0(const PrimeCtx& cx, std::mt19937_64& rng) {
    Sbar0<K> x(cx);
    for (auto& ck : x.c) ck = K(cx.p, rng() % cx.p);
    return x;
}

// Random lower-triangular mod-p matrix with unit diagonal entries.
template <class K>
inline DDMatS<K> rand_lower_gl3_modp(const PrimeCtx& cx, std::mt19937_64& rng) {
    DDMatS<K> X = dd_zero(cx, Sbar0<K>(cx));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j) {
            Sbar0<K> x = rand_sbar0<K>(cx, rng);
            if (i == j) x.c[0] = K(cx.p, 1 + rng() % (cx.p - 1));
            X.at(i, j) = x;
        }
    return X;
}

inline OrdinaryModule<Fp> rand_ordinary_module(const PrimeCtx& cx, std::mt19937_64& rng,
                                               bool v20_zero) {
    OrdinaryModule<Fp> m(cx);
    m.v10 = Fp(cx.p, rng() % cx.p);
    m.v20 = v20_zero ? Fp::zero(cx.p) : Fp(cx.p, rng() % cx.p);
    m.v20p = Fp(cx.p, rng() % cx.p);
    m.v21 = Fp(cx.p, rng() % cx.p);
    for (auto& al : m.alpha) al = Fp(cx.p, 1 + rng() % (cx.p - 1));
    return m;
}

} // namespace breuil
