// Tangent-space accounting on the ordinary-form chart: the 7-dimensional quasi
// count, the 6-dimensional monodromy-constrained count with d/dv20 excluded, line
// closure, and the exhaustive v20 locus sweep.

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "doctest.h"

#include "breuil/coeff.hpp"
#include "breuil/deformation.hpp"
#include "breuil/errors.hpp"
#include "breuil/monodromy.hpp"
#include "breuil/rand.hpp"

using namespace breuil;

namespace {

PrimeCtx default_ctx() { return PrimeCtx(13, {0, 4, 8}, 8, 11); }

} // namespace

TEST_CASE("tangent dimensions are 7 (quasi) and 6 (with monodromy), excluding v20") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(801);

    for (int it = 0; it < 20; ++it) {
        const OrdinaryModule<Fp> base = rand_ordinary_module(cx, rng, true);

        const TangentReport q = tangent_dimension(DeformationKind::quasi, base);
        CHECK(q.dimension == 7);
        for (bool ok : q.direction_ok) CHECK(ok);

        const TangentReport w = tangent_dimension(DeformationKind::with_monodromy, base);
        CHECK(w.dimension == 6);
        for (std::size_t i = 0; i < 7; ++i)
            CHECK(w.direction_ok[i] == (i != 1)); // index 1 is v20
        CHECK(std::string(deformation_direction_name(1)) == "v20");
    }
}

TEST_CASE("direction names are the chart coordinates in order") {
    const char* want[7] = {"v10", "v20", "v20p", "v21", "alpha0", "alpha1", "alpha2"};
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(std::string(deformation_direction_name(i)) == want[i]);
}

TEST_CASE("perturb_base plants the eps-part in the chosen coordinate") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(802);
    const OrdinaryModule<Fp> base = rand_ordinary_module(cx, rng, true);

    const OrdinaryModule<FpDual> d0 = perturb_base(base, {1, 0, 0, 0, 0, 0, 0});
    CHECK(d0.v10.a == base.v10.v);
    CHECK(d0.v10.b == 1);
    CHECK(d0.v20.b == 0);

    const OrdinaryModule<FpDual> d5 = perturb_base(base, {0, 0, 0, 0, 0, 3, 0});
    CHECK(d5.alpha[1].a == base.alpha[1].v);
    CHECK(d5.alpha[1].b == 3);
    CHECK(d5.v10.b == 0);

    // Solvability over the dual numbers matches the per-direction report.
    CHECK(monodromy_solvable(d0));
    CHECK(!monodromy_solvable(perturb_base(base, {0, 1, 0, 0, 0, 0, 0})));
}

TEST_CASE("tangent computations refuse bad bases") {
    const PrimeCtx tight(13, {0, 2, 4}, 8, 11);
    OrdinaryModule<Fp> off_generic(tight);
    CHECK_THROWS_AS(tangent_dimension(DeformationKind::quasi, off_generic),
                    computation_error); // GenericityViolation

    const PrimeCtx cx = default_ctx();
    OrdinaryModule<Fp> off_locus(cx);
    off_locus.v20 = Fp(cx.p, 5);
    CHECK_THROWS_AS(tangent_dimension(DeformationKind::with_monodromy, off_locus),
                    computation_error); // NoMonodromy

    OrdinaryModule<Fp> bad_alpha(cx);
    bad_alpha.alpha[0] = Fp(cx.p, 0);
    CHECK_THROWS_AS(tangent_dimension(DeformationKind::quasi, bad_alpha), input_error);
}

TEST_CASE("admissible directions are closed along affine lines") {
    const PrimeCtx cx = default_ctx();
    std::mt19937_64 rng(803);
    for (int it = 0; it < 5; ++it) {
        const OrdinaryModule<Fp> base = rand_ordinary_module(cx, rng, true);
        CHECK(tangent_line_closure(base, 900 + it, 8));
    }
}

TEST_CASE("locus sweep: exactly one admissible v20 value, matching the criterion") {
    const PrimeCtx cx = default_ctx();

    const MonodromyLocusReport rep = monodromy_locus_report(cx, 77);
    CHECK(rep.seed == 77);
    REQUIRE(rep.rows.size() == cx.p);
    CHECK(rep.admissible_count == 1);
    CHECK(rep.rows_match_criterion);
    CHECK(rep.line_closure_ok);
    CHECK(!rep.framed_note.empty());
    CHECK(rep.base.v20.is_zero()); // the swept coordinate is reported at its base value

    for (std::uint32_t v = 0; v < cx.p; ++v) {
        CHECK(rep.rows[v].v20 == v);
        CHECK(rep.rows[v].oracle_solvable == (v == 0));
        CHECK(rep.rows[v].exists_criterion == (v == 0));
    }

    // Deterministic for a fixed seed, different for another.
    const MonodromyLocusReport again = monodromy_locus_report(cx, 77);
    CHECK(again.base.v10 == rep.base.v10);
    CHECK(again.base.v21 == rep.base.v21);
    CHECK(again.base.alpha == rep.base.alpha);
    CHECK(again.framed_note == rep.framed_note);
    const MonodromyLocusReport other = monodromy_locus_report(cx, 78);
    const bool same_base = other.base.v10 == rep.base.v10 &&
                           other.base.v20p == rep.base.v20p &&
                           other.base.v21 == rep.base.v21 &&
                           other.base.alpha == rep.base.alpha;
    CHECK(!same_base);
}
