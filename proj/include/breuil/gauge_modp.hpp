#pragma once

#include <array>
#include <cstdint>

#include "breuil/dd.hpp"

namespace breuil {

// Gauge data of a mod-p ordinary module: constant filtration coordinates and the
// diagonal Frobenius values.
template <class K>
struct GaugeDataModp {
    K v10, v20, v20p, v21;
    std::array<K, 3> alpha;

    GaugeDataModp(const PrimeCtx& cx)
        : v10(K::zero(cx.p)), v20(K::zero(cx.p)), v20p(K::zero(cx.p)),
          v21(K::zero(cx.p)),
          alpha{K::one(cx.p), K::one(cx.p), K::one(cx.p)} {}
};

template <class K>
struct ModpSweepResult {
    GaugeDataModp<K> data;
    std::uint32_t sweeps = 0;
    DDMatS<K> A_final;
};

template <class K>
DDMatS<K> modp_unipotent(const PrimeCtx& cx, K v10, K v20, K v20p, K v21);

template <class K>
DDMatS<K> modp_filtration(const PrimeCtx& cx, K v10, K v20, K v20p, K v21);

// Mod-p analog of the diagonalization loop: one solve/project/verify sweep per pass,
// renormalized by the constant diagonal, until the pair (v, A) repeats exactly.
// Requires a lower-triangular invertible A0 and strongly generic weights; stabilizes
// within four sweeps or throws no_convergence.
template <class K>
ModpSweepResult<K> ordinary_form_modp(const DDMatS<K>& A0);

// Reduction mod p of the characteristic-zero objects: delta_k = E^k/k! maps to
// U^k/k! with U = u^e.
Sbar0<Fp> reduce_relem_modp(const RElem& x);
DDMatS<Fp> reduce_dd_modp(const DDMatR& X);

} // namespace breuil
