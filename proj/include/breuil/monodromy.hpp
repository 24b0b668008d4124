#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "breuil/coeff.hpp"
#include "breuil/errors.hpp"
#include "breuil/sbar.hpp"

namespace breuil {

// ---- ordinary modules over F and their monodromy operators -----------------------
//
// A rank-3 filtered phi-module in ordinary form over Sbar = F[u]/(u^{ep}): the
// filtration is generated by the columns of the lower-triangular matrix
//
//       [ 1                                                        ]
//   V = [ u^{[a1-a0]} v10              u^e                         ]
//       [ u^{[a2-a0]} (v20 + u^e v20p) u^{e+[a2-a1]} v21    u^{2e} ]
//
// against the standard basis e_0, e_1, e_2, and Frobenius sends the j-th filtration
// generator f_j to alpha_j e_j. The coefficient field K is Fp, or FpDual for tangent
// computations with K = F[eps]/(eps^2).
template <class K>
struct OrdinaryModule {
    const PrimeCtx* ctx = nullptr;
    K v10, v20, v20p, v21;
    std::array<K, 3> alpha{};

    OrdinaryModule() = default;
    explicit OrdinaryModule(const PrimeCtx& cx)
        : ctx(&cx),
          v10(K::zero(cx.p)),
          v20(K::zero(cx.p)),
          v20p(K::zero(cx.p)),
          v21(K::zero(cx.p)),
          alpha{K::one(cx.p), K::one(cx.p), K::one(cx.p)} {}
};

// A candidate monodromy operator. N is strictly lower triangular on the e-basis
// with N(e_j) = sum_i N_ij e_i, N_ij = u^{[a_i-a_j]} P_ij(u^e); the three P's in
// K[U]/(U^p) are the unknowns.
template <class K>
struct MonodromyData {
    Sbar0<K> P10, P20, P21;
};

template <class K>
MonodromyData<K> monodromy_zero(const PrimeCtx& cx) {
    return MonodromyData<K>{Sbar0<K>(cx), Sbar0<K>(cx), Sbar0<K>(cx)};
}

// The filtration matrix V above, entrywise in Sbar; index [3*i + j] = row i, col j.
template <class K>
std::array<SbarPoly<K>, 9> ordinary_filtration_matrix(const OrdinaryModule<K>& m);

// Residues of the two monodromy axioms as one flat list of K-values, all of which
// vanish exactly when (m, nd) satisfies
//   (i)  u^e N(f_j) lies in the filtration submodule spanned by f_0, f_1, f_2, and
//   (ii) phi_2(u^e N(f_j)) = N(phi_2 f_j),  i.e.  alpha_i phi(c_i) = alpha_j N_ij
//        where u^e N(f_j) = c_0 f_0 + c_1 f_1 + c_2 f_2.
// Every residue is an affine-linear function of the coefficients of P10, P20, P21,
// which is what the brute-force solver exploits.
template <class K>
std::vector<K> monodromy_residue_rows(const OrdinaryModule<K>& m, const MonodromyData<K>& nd);

template <class K>
bool verify_monodromy_axioms(const OrdinaryModule<K>& m, const MonodromyData<K>& nd);

// Existence criterion, valid for strongly generic weights only (throws a
// GenericityViolation otherwise): a monodromy operator exists iff v20 = 0.
template <class K>
bool monodromy_exists(const OrdinaryModule<K>& m);

// The closed-form operator on the v20 = 0 locus:
//   P10 = -alpha1/alpha0 [a1-a0] v10 U^{[a1-a0]}
//   P21 = -alpha2/alpha1 [a2-a1] v21 U^{[a2-a1]}
//   P20 = -alpha2/alpha0 (v20p ([a2-a0] - 1) - v10 v21 [a1-a0]) U^{[a2-a0]}
// Throws NoMonodromy when v20 != 0.
template <class K>
MonodromyData<K> monodromy_closed_form(const OrdinaryModule<K>& m);

// Diagnostic transcription variant of the two subdiagonal entries (sign flipped and
// the twist exponent taken from the wrong difference); P20 is kept. Retained so the
// tests can demonstrate it fails the axioms generically.
template <class K>
MonodromyData<K> monodromy_statement_variant(const OrdinaryModule<K>& m);

// ---- brute-force oracle over F_p --------------------------------------------------
//
// The axioms form an affine-linear system in the 3p unknown coefficients
// z = (P10_0..P10_{p-1} | P20_0.. | P21_0..); the oracle assembles it by evaluating
// monodromy_residue_rows at 0 and at each coordinate vector, then solves exactly.

struct MonodromySolutionSet {
    bool solvable = false;
    std::uint32_t nullity = 0;
    std::vector<std::uint64_t> particular;              // packed z, valid if solvable
    std::vector<std::vector<std::uint64_t>> null_basis; // packed kernel basis
};

MonodromyData<Fp> monodromy_unpack(const PrimeCtx& cx, const std::vector<std::uint64_t>& z);
std::vector<std::uint64_t> monodromy_pack(const MonodromyData<Fp>& nd);

MonodromySolutionSet monodromy_bruteforce(const OrdinaryModule<Fp>& m);

// Membership of nd in the affine solution set: nd - particular must lie in the span
// of the kernel basis. Decided by rank computations on the solved system, not by
// re-running the axiom check.
bool monodromy_in_solution_set(const MonodromySolutionSet& sols, const MonodromyData<Fp>& nd);

// Solvability of the axiom system over the coefficient ring. The FpDual overload
// decides solvability over F[eps]/(eps^2) through the doubled F_p block system
// [[A0, 0], [A1, A0]] (z0; z1) = (b0; b1).
bool monodromy_solvable(const OrdinaryModule<Fp>& m);
bool monodromy_solvable(const OrdinaryModule<FpDual>& m);

} // namespace breuil
