#include "breuil/deformation.hpp"

#include <random>

namespace breuil {

OrdinaryModule<FpDual> perturb_base(const OrdinaryModule<Fp>& base,
                                    const std::array<std::uint32_t, 7>& dir) {
    const PrimeCtx& cx = *base.ctx;
    const std::uint32_t p = cx.p;
    OrdinaryModule<FpDual> q(cx);
    q.v10 = FpDual(p, base.v10.v, dir[0]);
    q.v20 = FpDual(p, base.v20.v, dir[1]);
    q.v20p = FpDual(p, base.v20p.v, dir[2]);
    q.v21 = FpDual(p, base.v21.v, dir[3]);
    q.alpha = {FpDual(p, base.alpha[0].v, dir[4]), FpDual(p, base.alpha[1].v, dir[5]),
               FpDual(p, base.alpha[2].v, dir[6])};
    return q;
}

namespace {

bool chart_point_well_formed(const OrdinaryModule<FpDual>& q) {
    for (const FpDual& al : q.alpha)
        if (!al.is_unit()) return false;
    return true;
}

} // namespace

TangentReport tangent_dimension(DeformationKind kind, const OrdinaryModule<Fp>& base) {
    const PrimeCtx& cx = *base.ctx;
    if (!cx.strongly_generic())
        throw computation_error(
            "GenericityViolation: tangent dimensions need strongly generic weights");
    for (const Fp& al : base.alpha)
        if (!al.is_unit()) throw input_error("tangent_dimension: alpha entries must be units");
    if (kind == DeformationKind::with_monodromy && !base.v20.is_zero())
        throw computation_error(
            "NoMonodromy: with_monodromy dimensions need a base with v20 = 0");

    TangentReport rep;
    rep.kind = kind;
    for (std::size_t d = 0; d < 7; ++d) {
        std::array<std::uint32_t, 7> dir{};
        dir[d] = 1;
        const OrdinaryModule<FpDual> q = perturb_base(base, dir);
        const bool ok = kind == DeformationKind::quasi ? chart_point_well_formed(q)
                                                       : monodromy_solvable(q);
        rep.direction_ok[d] = ok;
        if (ok) ++rep.dimension;
    }
    return rep;
}

bool tangent_line_closure(const OrdinaryModule<Fp>& base, std::uint64_t seed,
                          std::uint32_t samples) {
    const PrimeCtx& cx = *base.ctx;
    const std::uint32_t p = cx.p;
    if (!base.v20.is_zero())
        throw computation_error("NoMonodromy: line closure is checked at a v20 = 0 base");
    std::mt19937_64 rng(seed);
    for (std::uint32_t s = 0; s < samples; ++s) {
        std::array<std::uint32_t, 7> u{}, v{};
        for (std::size_t i = 0; i < 7; ++i) {
            u[i] = static_cast<std::uint32_t>(rng() % p);
            v[i] = static_cast<std::uint32_t>(rng() % p);
        }
        u[1] = 0; // stay inside the hyperplane the locus is expected to be
        v[1] = 0;
        if (!monodromy_solvable(perturb_base(base, u))) return false;
        if (!monodromy_solvable(perturb_base(base, v))) return false;
        for (std::uint32_t l = 0; l < p; ++l) {
            std::array<std::uint32_t, 7> w{};
            for (std::size_t i = 0; i < 7; ++i)
                w[i] = static_cast<std::uint32_t>(
                    (static_cast<std::uint64_t>(l) * u[i] + (p + 1ull - l) % p * v[i]) % p);
            if (!monodromy_solvable(perturb_base(base, w))) return false;
        }
    }
    return true;
}

MonodromyLocusReport monodromy_locus_report(const PrimeCtx& cx, std::uint64_t seed) {
    const std::uint32_t p = cx.p;
    std::mt19937_64 rng(seed);
    auto unit = [&] { return Fp(p, 1 + rng() % (p - 1)); };
    auto any = [&] { return Fp(p, rng() % p); };

    MonodromyLocusReport rep;
    rep.seed = seed;
    rep.base = OrdinaryModule<Fp>(cx);
    rep.base.v10 = any();
    rep.base.v20 = Fp::zero(p); // swept below
    rep.base.v20p = any();
    rep.base.v21 = any();
    rep.base.alpha = {unit(), unit(), unit()};

    rep.rows_match_criterion = true;
    for (std::uint32_t v = 0; v < p; ++v) {
        OrdinaryModule<Fp> m = rep.base;
        m.v20 = Fp(p, v);
        LocusRow row;
        row.v20 = v;
        row.oracle_solvable = monodromy_solvable(m);
        row.exists_criterion = monodromy_exists(m);
        if (row.oracle_solvable != row.exists_criterion) rep.rows_match_criterion = false;
        if (row.oracle_solvable) ++rep.admissible_count;
        rep.rows.push_back(row);
    }

    rep.line_closure_ok = tangent_line_closure(rep.base, seed ^ 0x9e3779b97f4a7c15ull, 2);
    rep.framed_note =
        "framed deformation dimensions (the 12-dimensional count) require framing data "
        "outside this computation; only the 7/6-dimensional chart accounting is computed";
    return rep;
}

} // namespace breuil
