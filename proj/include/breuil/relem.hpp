#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "breuil/coeff.hpp"

namespace breuil {

// Element of the divided-power ring R = (S_{O_E})_{omega^0} truncated at (p^N, Fil^M),
// written on the basis delta_k = E(u)^k / k!, k < trunc:
//
//   delta_j * delta_k = C(j+k, j) * delta_{j+k},   E(u) = u^e + p = delta_1,
//   u^e = delta_1 - p*delta_0,                     Fil^m = E^m*R = {c_k = 0 for k < m}.
//
// fil_known <= trunc: coefficients at indices >= fil_known are unknown garbage
// (an exact division by E forgets the top index). Operations propagate the window;
// comparisons and memberships only ever read below it.
struct RElem {
    const PrimeCtx* ctx = nullptr;
    std::uint32_t trunc = 0;
    std::uint32_t fil_known = 0;
    std::vector<std::uint64_t> c;

    RElem() = default;
    RElem(const PrimeCtx& cx, std::uint32_t trunc_)
        : ctx(&cx), trunc(trunc_), fil_known(trunc_), c(trunc_, 0) {}
};

RElem r_zero(const PrimeCtx& cx);
RElem r_one(const PrimeCtx& cx);
RElem r_const(const PrimeCtx& cx, std::uint64_t v);          // v * delta_0
RElem r_delta(const PrimeCtx& cx, std::uint32_t k);          // delta_k
RElem r_E(const PrimeCtx& cx);                               // E(u) = delta_1
RElem r_ue(const PrimeCtx& cx);                              // u^e = delta_1 - p*delta_0

// Same-trunc arithmetic; windows combine as min.
RElem r_add(const RElem& x, const RElem& y);
RElem r_sub(const RElem& x, const RElem& y);
RElem r_neg(const RElem& x);
RElem r_mul(const RElem& x, const RElem& y);
RElem r_scal(std::uint64_t s, const RElem& x);
RElem r_pow(const RElem& x, std::uint32_t k);

bool r_is_zero(const RElem& x);       // below the window
bool r_eq(const RElem& x, const RElem& y); // on the common window
bool r_eq_mod(const RElem& x, const RElem& y, std::uint32_t n); // ... mod p^n

std::uint64_t r_c0(const RElem& x);
bool r_is_unit(const RElem& x); // c0 a unit mod p (maximal ideal (p, Fil^1) is nilpotent here)
RElem r_inv(const RElem& x);    // Newton z <- z(2 - xz); throws on non-unit

// gamma_i = u^{ie}/i! expanded on the delta-basis: coefficient of delta_k is
// (-p)^{i-k}/(i-k)!  (exact: the p-power dominates the factorial's p-part).
RElem gamma_to_delta(const PrimeCtx& cx, std::uint32_t i, std::uint32_t trunc);
RElem gamma_to_delta(const PrimeCtx& cx, std::uint32_t i);

// phi(E) = u^{pe} + p = p! * gamma_p + p * delta_0; a p-unit.
RElem phi_of_E(const PrimeCtx& cx);

// Semilinear Frobenius: phi(sum c_k delta_k) = sum c_k Phi^k / k! with Phi = phi(E).
// A shortened window Fil^{fil_known} on the input turns into p^{fil_known}-sized
// p-adic noise on the output (phi(Fil^m) subset p^m R), so the result is again a
// full-window element, trusted mod p^min(N, fil_known_in).
RElem frobenius_r(const RElem& x);

// y with E*y = x, i.e. y_{k-1} = x_k / k. Requires c0 == 0; window shrinks by one.
RElem divide_by_E(const RElem& x);

// Multiplication by u^e (= E - p) as an R-element.
RElem r_mul_ue(const RElem& x);

// ---- ideal memberships (checked on the window; throws if the window is too short
//      to see the structural coefficients) -------------------------------------------
//
// All moduli are read inside R/(p^N, Fil^M): p-divisibility requirements clamp at N.

bool in_pn_R(const RElem& x, std::uint32_t n);                         // p^n R
bool in_pn_Fil(const RElem& x, std::uint32_t m, std::uint32_t n);      // p^n Fil^m
bool in_pn_pFil_plus_Fil(const RElem& x, std::uint32_t m, std::uint32_t n); // p^n(pFil^m + Fil^{m+1})
bool in_pn_I(const RElem& x, std::uint32_t n);                         // p^n * pFil^1
bool in_pn_J(const RElem& x, std::uint32_t n);                         // p^n * (pFil^2, Fil^3)
bool in_pn_pfil1(const RElem& x, std::uint32_t n);                     // p^n * (p, Fil^1)
bool in_sum_JIpR(const RElem& x, std::uint32_t n); // p^n J + p^n I + p^{n+1} R

std::string r_to_string(const RElem& x);

} // namespace breuil
