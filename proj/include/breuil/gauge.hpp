#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "breuil/dd.hpp"

namespace breuil {

// Gauge coordinates of a filtration matrix V = U * Diag(1, E, E^2) with U lower
// unipotent: v10, v21 constants (delta_0), v20 an element of O_E + E*O_E stored as
// its two coefficients (v20, v20p).
struct GaugeV {
    std::uint64_t v10 = 0;
    std::uint64_t v20 = 0;
    std::uint64_t v20p = 0;
    std::uint64_t v21 = 0;

    friend bool operator==(const GaugeV&, const GaugeV&) = default;
};

DDMatR gauge_unipotent(const PrimeCtx& cx, const GaugeV& v);
DDMatR gauge_filtration(const PrimeCtx& cx, const GaugeV& v); // U * Diag(1,E,E^2)

// One even/odd step: solve for the next v's from M = adj(U)*A, project onto the gauge
// shape, re-solve the (2,0) slot, and verify the required congruences.
struct StepOutcome {
    GaugeV v;                 // projected solution (pre-renormalization)
    DDMatR B;                 // (1/E^3) adj(V_old) A V_new
    bool congruence_ok = false;    // (W A U')_{i>j} in the parity modulus
    bool step_equation_ok = false; // (1/E) adj(V_old) A V_new membership display
    bool b_membership_ok = false;  // B in the parity class
    bool exact_identity_ok = false; // A V_new == V_old B on the common window
};

StepOutcome gauge_step(const DDMatR& A, const GaugeV& v_old, std::uint32_t n, bool even);

struct StepRecord {
    std::uint32_t step = 0; // 0-based; cycle n = step/2, even iff step%2 == 0
    std::uint32_t n = 0;
    bool even = true;
    GaugeV v_solved;
    GaugeV v_renormalized;
    std::array<std::uint64_t, 3> t{};      // renormalization diagonal (delta_0 of B_ii)
    std::array<std::uint64_t, 3> lambda{}; // delta_0 of the next Frobenius diagonal
    bool congruence_ok = false;
    bool step_equation_ok = false;
    bool b_membership_ok = false;
    bool exact_identity_ok = false;
    bool a_next_membership_ok = false;
};

struct GaugeResult {
    GaugeV v;
    std::array<std::uint64_t, 3> lambda{};
    std::uint32_t steps = 0;
    bool exact_fixed_point = false;
    std::vector<StepRecord> transcript;
};

// Alternate even/odd steps from A0 (invertible, strongly generic weights, standard
// initial filtration Diag(1,E,E^2)) with per-step diagonal renormalization, until
// (lambda, v) is stable mod p^{Nprime} across two consecutive steps (and the cycle
// index has reached Nprime), or an exact fixed point appears. Hard cap 2*Nprime+4
// steps, then no_convergence.
GaugeResult diagonalize(const DDMatR& A0, std::uint32_t Nprime);

// Matrix congruence-class predicates used for the step contracts. Diagonal entries are
// tested after removing their delta_0 coefficient (the T3 part absorbs constants).
bool dd_in_T_plus_M_pnR(const DDMatR& X, std::uint32_t n);
bool dd_in_T_plus_M_sum(const DDMatR& X, std::uint32_t n); // p^n J + p^n I + p^{n+1} R
bool dd_in_T_plus_M_pn_pfil1(const DDMatR& X, std::uint32_t n);

} // namespace breuil
