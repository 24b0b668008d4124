#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "breuil/errors.hpp"

namespace breuil {

// ---- modular arithmetic on uint64 residues ------------------------------------

// Residues live in [0, m). m <= 13^10 fits comfortably; products go through __int128.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b; // no overflow: both < m <= 2^63
    return s >= m ? s - m : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    while (n) {
        if (n & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        n >>= 1;
    }
    return r;
}

std::uint64_t inv_unit(std::uint64_t x, std::uint64_t p, std::uint64_t pN); // throws if p | x
std::uint32_t val_p(std::uint64_t x, std::uint64_t p);                      // x != 0

// k! = p^v * unit; returns (v, unit mod pN). v = (k - digit_sum_p(k)) / (p-1).
std::pair<std::uint32_t, std::uint64_t> factorial_split(std::uint32_t k, std::uint64_t p,
                                                        std::uint64_t pN);

std::uint32_t digit_sum(std::uint32_t k, std::uint32_t p);

// ---- shared parameters ---------------------------------------------------------

// All exact arithmetic below happens in rings truncated at p-adic precision N and
// divided-power filtration level M (delta_0..delta_{M-1}); e = p - 1 and the niveau-one
// weights (a0, a1, a2) drive every descent-data twist.
struct PrimeCtx {
    std::uint32_t p = 0;
    std::uint32_t e = 0;               // p - 1
    std::array<std::uint32_t, 3> a{};  // a0 < a1 < a2
    std::uint32_t N = 0;               // coefficients mod p^N
    std::uint32_t M = 0;               // delta-truncation level, M <= p
    std::uint64_t pN = 0;              // p^N
    std::vector<std::uint64_t> ppow;   // p^0..p^N
    std::vector<std::uint64_t> binom;  // C(i,j) mod p^N for i < 2M+2 (row-major)
    std::uint32_t binom_rows = 0;

    PrimeCtx() = default;
    PrimeCtx(std::uint32_t p_, std::array<std::uint32_t, 3> a_, std::uint32_t N_,
             std::uint32_t M_);

    std::uint64_t C(std::uint32_t i, std::uint32_t j) const; // binomial mod p^N

    // [x] = the representative of -x mod e in {0, .., e-1}.
    std::uint32_t bracket_of(std::int64_t x) const;
    // [a_i - a_j].
    std::uint32_t bracket(int i, int j) const { return bracket_of((std::int64_t)a[i] - a[j]); }
    // c(i,k,j) = ([a_i-a_k] + [a_k-a_j] - [a_i-a_j]) / e, always 0 or 1.
    std::uint32_t twist_excess(int i, int k, int j) const;

    // p^min(n,N): the modulus actually visible at precision N.
    std::uint64_t pclamp(std::uint32_t n) const { return ppow[n < N ? n : N]; }

    bool strongly_generic() const; // a1-a0 > 3, a2-a1 > 3, a2-a0 < p-4
    void require_strongly_generic() const;
};

// ---- prime field and dual numbers ----------------------------------------------

// Element of F_p. The coefficient Frobenius is trivial (the semilinearity of the
// module Frobenius lives entirely in u -> u^p), so there is no frob() here.
struct Fp {
    std::uint32_t p = 0;
    std::uint32_t v = 0;

    Fp() = default;
    Fp(std::uint32_t p_, std::uint64_t x) : p(p_), v(static_cast<std::uint32_t>(x % p_)) {}

    static Fp zero(std::uint32_t p) { return Fp(p, 0); }
    static Fp one(std::uint32_t p) { return Fp(p, 1); }

    bool is_zero() const { return v == 0; }
    bool is_unit() const { return v != 0; }

    friend Fp operator+(Fp x, Fp y) { return Fp(x.p, (std::uint64_t)x.v + y.v); }
    friend Fp operator-(Fp x, Fp y) { return Fp(x.p, (std::uint64_t)x.v + x.p - y.v); }
    friend Fp operator*(Fp x, Fp y) { return Fp(x.p, (std::uint64_t)x.v * y.v); }
    Fp operator-() const { return Fp(p, (std::uint64_t)p - v); }
    friend bool operator==(Fp x, Fp y) { return x.v == y.v; }
    friend bool operator!=(Fp x, Fp y) { return x.v != y.v; }

    Fp inv() const {
        if (v == 0) throw computation_error("Fp: inverse of 0");
        return Fp(p, powmod(v, p - 2, p));
    }
};

// Dual number a + b*eps over F_p (eps^2 = 0); the tangent-space scalar.
struct FpDual {
    std::uint32_t p = 0;
    std::uint32_t a = 0; // value
    std::uint32_t b = 0; // eps-part

    FpDual() = default;
    FpDual(std::uint32_t p_, std::uint64_t a_, std::uint64_t b_ = 0)
        : p(p_), a(static_cast<std::uint32_t>(a_ % p_)), b(static_cast<std::uint32_t>(b_ % p_)) {}

    static FpDual zero(std::uint32_t p) { return FpDual(p, 0, 0); }
    static FpDual one(std::uint32_t p) { return FpDual(p, 1, 0); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_unit() const { return a != 0; } // local ring: unit iff residue is

    friend FpDual operator+(FpDual x, FpDual y) {
        return FpDual(x.p, (std::uint64_t)x.a + y.a, (std::uint64_t)x.b + y.b);
    }
    friend FpDual operator-(FpDual x, FpDual y) {
        return FpDual(x.p, (std::uint64_t)x.a + x.p - y.a, (std::uint64_t)x.b + x.p - y.b);
    }
    friend FpDual operator*(FpDual x, FpDual y) {
        return FpDual(x.p, (std::uint64_t)x.a * y.a,
                      (std::uint64_t)x.a * y.b + (std::uint64_t)x.b * y.a);
    }
    FpDual operator-() const { return FpDual(p, (std::uint64_t)p - a, (std::uint64_t)p - b); }
    friend bool operator==(FpDual x, FpDual y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(FpDual x, FpDual y) { return !(x == y); }

    FpDual inv() const {
        if (a == 0) throw computation_error("FpDual: inverse of non-unit");
        std::uint64_t ia = powmod(a, p - 2, p);
        // (a + b eps)^-1 = a^-1 - a^-2 b eps
        std::uint64_t nb = (p - mulmod(mulmod(ia, ia, p), b, p)) % p;
        return FpDual(p, ia, nb);
    }
};

} // namespace breuil
