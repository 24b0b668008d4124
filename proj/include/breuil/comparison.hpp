#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "breuil/coeff.hpp"
#include "breuil/errors.hpp"
#include "breuil/monodromy.hpp"

namespace breuil {

// ---- matrix-level functors out of mod-p modules in ordinary form ------------------
//
// Three constructions: the etale phi-module attached to an ordinary module (dual
// descent data), its isotypic descent to F[pbar]/(pbar^{T/e}) after the diagonal
// pi-power base change, and the Fontaine-Laffaille module on the monodromy locus,
// together with exact isomorphism tests on the latter.

// 3x3 Frobenius matrix over F[pi]/(pi^T); entry (i,j) at frob[3i+j], coefficient of
// pi^d at index d. Entries are supported on degrees congruent to [a_j - a_i] mod e
// (dual descent convention).
struct EtalePhiModule {
    const PrimeCtx* ctx = nullptr;
    std::uint32_t T = 0;
    std::array<std::vector<Fp>, 9> frob;
};

// Result of the isotypic descent: the base change by Diag(pi^{a_i}) followed by the
// substitution pbar = pi^e. Entries live in F[pbar]/(pbar^len), len = T/e, and the
// diagonal carries the exponent pattern (a0, a1+1, a2+2).
struct IsotypicDescent {
    const PrimeCtx* ctx = nullptr;
    std::uint32_t len = 0;
    std::array<std::vector<Fp>, 9> mat;
    std::array<std::uint32_t, 3> diag_exponent{};
};

// Fontaine-Laffaille data: Hodge-Tate weights (0, a1-a0+1, a2-a0+2) and Frobenius
// U(x,y,z) Diag(alpha^{-1}) with U upper unitriangular; entries are scalars.
struct FLModule {
    const PrimeCtx* ctx = nullptr;
    std::array<std::uint32_t, 3> hodge_tate{};
    std::array<Fp, 9> frob;
};

// Mat(phi) = V^t (A^{-1})^t over F[pi]/(pi^T) under the monomial lift u -> pi, where
// V is the ordinary filtration matrix and A = Diag(alpha). T = 0 selects the default
// truncation e*p. Throws TruncationTooSmall when T < 2e + max bracket + 1.
EtalePhiModule to_etale(const OrdinaryModule<Fp>& m, std::uint32_t T = 0);

// pi-adic valuation of det(frob); the total Hodge-Tate weight 3e for every valid
// input. Throws when the determinant vanishes to truncation order.
std::uint32_t etale_det_valuation(const EtalePhiModule& em);

// Base change by e' = (pi^{a_0} e_0, pi^{a_1} e_1, pi^{a_2} e_2): entry (i,j) picks
// up pi^{p a_j - a_i} through the phi-twist on the right factor. Every exponent must
// land in e Z (ExponentNotDivisible otherwise); pbar = pi^e is substituted and the
// diagonal exponent pattern reported.
IsotypicDescent descend_isotypic(const EtalePhiModule& em);

// Fontaine-Laffaille extraction on the monodromy locus: requires v20 = 0 (throws
// NoMonodromy), then frob = U(v10, v20p, v21) Diag(alpha^{-1}) with the pbar-powers
// of the descent stripped.
FLModule to_fl(const OrdinaryModule<Fp>& m);

// The matrix identity tying the three maps together: descend_isotypic(to_etale(m))
// equals to_fl(m) scaled columnwise by Diag(pbar^{a0}, pbar^{a1+1}, pbar^{a2+2}).
bool fl_pipeline_coherent(const OrdinaryModule<Fp>& m);

// Isomorphism tests (same weights required, else WeightMismatch). The default is the
// two-sided diagonal test, the one invariant under diagonal rescaling of the gauge:
// Mat1 = D Mat2 D' for invertible diagonal D, D'. The right-multiplication form
// (Mat1 = Mat2 Diag(lambda, mu, nu), the change-of-basis shape cited against a fixed
// compatible basis) and plain conjugation are exposed separately.
bool fl_isomorphic(const FLModule& f1, const FLModule& f2);
bool fl_isomorphic_rightmult(const FLModule& f1, const FLModule& f2);
bool fl_isomorphic_conj(const FLModule& f1, const FLModule& f2);

} // namespace breuil
