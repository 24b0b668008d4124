#include "breuil/dd.hpp"

#include <string>

#include "breuil/errors.hpp"

namespace breuil {

DDMatR dd_conj_diag(const std::array<std::uint64_t, 3>& t, const DDMatR& X) {
    const PrimeCtx& cx = *X.ctx;
    std::array<std::uint64_t, 3> ti;
    for (int i = 0; i < 3; ++i) ti[i] = inv_unit(t[i], cx.p, cx.pN);
    DDMatR Z = X;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            Z.at(i, j) = r_scal(mulmod(t[i] % cx.pN, ti[j], cx.pN), X.at(i, j));
    return Z;
}

DDMatR dd_identity(const PrimeCtx& cx) {
    DDMatR Z = dd_zero(cx, r_zero(cx));
    for (int i = 0; i < 3; ++i) Z.at(i, i) = r_one(cx);
    return Z;
}

DDMatR dd_scalar_diag(const PrimeCtx& cx, const std::array<std::uint64_t, 3>& t) {
    DDMatR Z = dd_zero(cx, r_zero(cx));
    for (int i = 0; i < 3; ++i) Z.at(i, i) = r_const(cx, t[i]);
    return Z;
}

DDMatR dd_frobenius(const DDMatR& X) {
    const PrimeCtx& cx = *X.ctx;
    // The contraction properties of the Frobenius on twisted matrices need every
    // off-diagonal twist exponent to be at least 3.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && cx.bracket(i, j) < 3)
                throw computation_error(
                    "GenericityViolation: off-diagonal twist exponent below 3");
    DDMatR Z = dd_zero(cx, X.m[0]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            Z.at(i, j) = e_mul_ue_pow(frobenius_r(X.at(i, j)), cx.bracket(i, j));
    return Z;
}

DDMatR dd_divide_by_E(const DDMatR& X, std::uint32_t k) {
    DDMatR Z = X;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            RElem& x = Z.at(i, j);
            for (std::uint32_t s = 0; s < k; ++s) {
                try {
                    x = divide_by_E(x);
                } catch (const computation_error&) {
                    throw computation_error(
                        "NotDivisible: entry (" + std::to_string(i) + "," +
                        std::to_string(j) + ") is not divisible by E^" +
                        std::to_string(k));
                }
            }
        }
    }
    return Z;
}

bool dd_is_gl(const DDMatR& X) {
    for (int i = 0; i < 3; ++i)
        if (!r_is_unit(X.at(i, i))) return false;
    return true;
}

bool dd_eq(const DDMatR& X, const DDMatR& Y) {
    for (int k = 0; k < 9; ++k)
        if (!r_eq(X.m[k], Y.m[k])) return false;
    return true;
}

bool dd_eq_mod(const DDMatR& X, const DDMatR& Y, std::uint32_t n) {
    for (int k = 0; k < 9; ++k)
        if (!r_eq_mod(X.m[k], Y.m[k], n)) return false;
    return true;
}

} // namespace breuil
