#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "breuil/coeff.hpp"
#include "breuil/errors.hpp"
#include "breuil/monodromy.hpp"

namespace breuil {

// ---- tangent-space accounting on the ordinary-form chart --------------------------
//
// The chart coordinates are (v10, v20, v20p, v21, alpha0, alpha1, alpha2); dimensions
// are F-dimensions of the space of epsilon-directions over F[eps]/(eps^2) that keep
// the object valid. Direction indices are fixed as
//   0: v10, 1: v20, 2: v20p, 3: v21, 4: alpha0, 5: alpha1, 6: alpha2.

enum class DeformationKind { quasi, with_monodromy };

inline const char* deformation_direction_name(std::size_t i) {
    static const char* names[7] = {"v10", "v20", "v20p", "v21", "alpha0", "alpha1", "alpha2"};
    return names[i];
}

struct TangentReport {
    DeformationKind kind{};
    std::uint32_t dimension = 0;          // number of valid coordinate directions
    std::array<bool, 7> direction_ok{};   // per-direction validity
};

// Perturb one or several chart coordinates by eps: dir[i] is the eps-part added to
// coordinate i (reduced mod p).
OrdinaryModule<FpDual> perturb_base(const OrdinaryModule<Fp>& base,
                                    const std::array<std::uint32_t, 7>& dir);

// Count the valid epsilon-directions at the base.
//   quasi:          validity is well-formedness of the perturbed chart point (7).
//   with_monodromy: validity is solvability of the monodromy axioms over F[eps]
//                   (6; the excluded direction is exactly d/dv20).
// Throws GenericityViolation off the strongly generic locus and NoMonodromy when
// with_monodromy is requested at a base with v20 != 0.
TangentReport tangent_dimension(DeformationKind kind, const OrdinaryModule<Fp>& base);

// Affine-line closure of the admissible direction set at a v20 = 0 base: sample
// pairs (u, v) of directions in the v20 = 0 hyperplane, confirm both are admissible,
// then confirm every point of the line {l u + (1 - l) v : l in F} is admissible.
bool tangent_line_closure(const OrdinaryModule<Fp>& base, std::uint64_t seed,
                          std::uint32_t samples);

// ---- monodromy locus sweep ---------------------------------------------------------

struct LocusRow {
    std::uint32_t v20 = 0;
    bool oracle_solvable = false;
    bool exists_criterion = false;
};

struct MonodromyLocusReport {
    std::uint64_t seed = 0;
    OrdinaryModule<Fp> base;              // the fixed non-swept coordinates
    std::vector<LocusRow> rows;           // exhaustive v20 = 0 .. p-1
    std::uint32_t admissible_count = 0;   // expect exactly 1
    bool rows_match_criterion = false;    // oracle == (v20 == 0) pointwise
    bool line_closure_ok = false;         // sampled 2-point lines stay admissible
    std::string framed_note;              // records what is out of scope
};

// Exhaustive sweep of v20 over F_p with the other coordinates fixed by the seed;
// deterministic for a fixed seed.
MonodromyLocusReport monodromy_locus_report(const PrimeCtx& cx, std::uint64_t seed);

} // namespace breuil
