#include "breuil/monodromy.hpp"

#include <cstddef>
#include <utility>

#include "breuil/linalg.hpp"

namespace breuil {

template <class K>
std::array<SbarPoly<K>, 9> ordinary_filtration_matrix(const OrdinaryModule<K>& m) {
    const PrimeCtx& cx = *m.ctx;
    const std::uint32_t e = cx.e;
    std::array<SbarPoly<K>, 9> V;
    for (auto& x : V) x = SbarPoly<K>(cx);
    V[0] = sp_monomial(cx, 0, K::one(cx.p));
    V[3 * 1 + 0] = sp_monomial(cx, cx.bracket(1, 0), m.v10);
    V[3 * 1 + 1] = sp_monomial(cx, e, K::one(cx.p));
    V[3 * 2 + 0] = sp_add(sp_monomial(cx, cx.bracket(2, 0), m.v20),
                          sp_monomial(cx, cx.bracket(2, 0) + e, m.v20p));
    V[3 * 2 + 1] = sp_monomial(cx, e + cx.bracket(2, 1), m.v21);
    V[3 * 2 + 2] = sp_monomial(cx, 2 * e, K::one(cx.p));
    return V;
}

template <class K>
std::vector<K> monodromy_residue_rows(const OrdinaryModule<K>& m, const MonodromyData<K>& nd) {
    const PrimeCtx& cx = *m.ctx;
    const std::uint32_t e = cx.e;
    const std::uint32_t T = e * cx.p;
    const auto V = ordinary_filtration_matrix(m);

    // N_ij = u^{[a_i-a_j]} P_ij(u^e) in the three strictly lower slots.
    std::array<SbarPoly<K>, 9> N;
    for (auto& x : N) x = SbarPoly<K>(cx);
    N[3 * 1 + 0] = sp_shift_up(s0_embed(nd.P10), cx.bracket(1, 0));
    N[3 * 2 + 0] = sp_shift_up(s0_embed(nd.P20), cx.bracket(2, 0));
    N[3 * 2 + 1] = sp_shift_up(s0_embed(nd.P21), cx.bracket(2, 1));

    std::vector<K> rows;
    rows.reserve(static_cast<std::size_t>(3) * (3 * e + 3 * T));
    for (int j = 0; j < 3; ++j) {
        // w = u^e N(f_j) on the e-basis. By the Leibniz rule,
        // N(f_j) = sum_i (N_Sbar(V_ij) + sum_k N_ik V_kj) e_i with N_Sbar = -u d/du.
        std::array<SbarPoly<K>, 3> w;
        for (int i = 0; i < 3; ++i) {
            SbarPoly<K> nf = sp_nop(V[3 * i + j]);
            for (int k = 0; k < 3; ++k)
                nf = sp_add(nf, sp_mul(N[3 * i + k], V[3 * k + j]));
            w[i] = sp_shift_up(nf, e);
        }

        // Axiom (i): w = c0 f0 + c1 f1 + c2 f2 for some c's. Peeling off the
        // triangular columns, the e_1-remainder must be divisible by u^e and the
        // e_2-remainder by u^{2e}; the low coefficients are the residues. The
        // representatives c1, c2 are only determined up to the top truncation
        // degrees, which the Frobenius below annihilates.
        const SbarPoly<K>& c0 = w[0];
        const SbarPoly<K> r1 = sp_sub(w[1], sp_mul(V[3 * 1 + 0], c0));
        for (std::uint32_t d = 0; d < e; ++d) rows.push_back(r1.c[d]);
        const SbarPoly<K> c1 = sp_shift_down(r1, e);
        const SbarPoly<K> r2 =
            sp_sub(w[2], sp_add(sp_mul(V[3 * 2 + 0], c0), sp_mul(V[3 * 2 + 1], c1)));
        for (std::uint32_t d = 0; d < 2 * e; ++d) rows.push_back(r2.c[d]);
        const SbarPoly<K> c2 = sp_shift_down(r2, 2 * e);

        // Axiom (ii): phi_2(u^e N(f_j)) = N(phi_2 f_j) reads alpha_i phi(c_i) =
        // alpha_j N_ij componentwise, since phi_2(f_i) = alpha_i e_i.
        const std::array<const SbarPoly<K>*, 3> c = {&c0, &c1, &c2};
        for (int i = 0; i < 3; ++i) {
            const SbarPoly<K> lhs = sp_scal(m.alpha[i], sp_frobenius(*c[i]));
            const SbarPoly<K> rhs = sp_scal(m.alpha[j], N[3 * i + j]);
            const SbarPoly<K> diff = sp_sub(lhs, rhs);
            for (std::uint32_t d = 0; d < T; ++d) rows.push_back(diff.c[d]);
        }
    }
    return rows;
}

template <class K>
bool verify_monodromy_axioms(const OrdinaryModule<K>& m, const MonodromyData<K>& nd) {
    for (const K& r : monodromy_residue_rows(m, nd))
        if (!r.is_zero()) return false;
    return true;
}

template <class K>
bool monodromy_exists(const OrdinaryModule<K>& m) {
    if (!m.ctx->strongly_generic())
        throw computation_error(
            "GenericityViolation: the existence criterion needs strongly generic weights");
    return m.v20.is_zero();
}

template <class K>
MonodromyData<K> monodromy_closed_form(const OrdinaryModule<K>& m) {
    const PrimeCtx& cx = *m.ctx;
    if (!m.v20.is_zero())
        throw computation_error("NoMonodromy: v20 != 0 admits no monodromy operator");
    const std::uint32_t p = cx.p;
    const std::uint32_t b10 = cx.bracket(1, 0);
    const std::uint32_t b20 = cx.bracket(2, 0);
    const std::uint32_t b21 = cx.bracket(2, 1);
    if (b10 == 0 || b20 == 0 || b21 == 0)
        throw computation_error("GenericityViolation: zero twist exponent in closed form");
    MonodromyData<K> nd = monodromy_zero<K>(cx);
    nd.P10 = s0_monomial(cx, b10, -(m.alpha[1] * m.alpha[0].inv() * m.v10 * K(p, b10)));
    nd.P21 = s0_monomial(cx, b21, -(m.alpha[2] * m.alpha[1].inv() * m.v21 * K(p, b21)));
    const K inner = m.v20p * K(p, b20 - 1) - m.v10 * m.v21 * K(p, b10);
    nd.P20 = s0_monomial(cx, b20, -(m.alpha[2] * m.alpha[0].inv() * inner));
    return nd;
}

template <class K>
MonodromyData<K> monodromy_statement_variant(const OrdinaryModule<K>& m) {
    // The two subdiagonal entries transcribed with a plus sign and the twist exponent
    // taken from the cyclically-wrong weight difference; P20 kept from the closed
    // form. Fails the axiom check generically, which the tests document.
    const PrimeCtx& cx = *m.ctx;
    if (!m.v20.is_zero())
        throw computation_error("NoMonodromy: v20 != 0 admits no monodromy operator");
    const std::uint32_t p = cx.p;
    const std::uint32_t b10 = cx.bracket(1, 0);
    const std::uint32_t b20 = cx.bracket(2, 0);
    const std::uint32_t b21 = cx.bracket(2, 1);
    if (b10 == 0 || b20 == 0 || b21 == 0 || cx.bracket(0, 1) == 0)
        throw computation_error("GenericityViolation: zero twist exponent in closed form");
    MonodromyData<K> nd = monodromy_zero<K>(cx);
    nd.P10 = s0_monomial(cx, b20, m.alpha[1] * m.alpha[0].inv() * m.v10 * K(p, b10));
    nd.P21 = s0_monomial(cx, cx.bracket(0, 1), m.alpha[2] * m.alpha[1].inv() * m.v21 * K(p, b21));
    const K inner = m.v20p * K(p, b20 - 1) - m.v10 * m.v21 * K(p, b10);
    nd.P20 = s0_monomial(cx, b20, -(m.alpha[2] * m.alpha[0].inv() * inner));
    return nd;
}

// ---- brute-force oracle ------------------------------------------------------------

MonodromyData<Fp> monodromy_unpack(const PrimeCtx& cx, const std::vector<std::uint64_t>& z) {
    if (z.size() != static_cast<std::size_t>(3) * cx.p)
        throw input_error("monodromy_unpack: expected 3p packed coefficients");
    MonodromyData<Fp> nd = monodromy_zero<Fp>(cx);
    for (std::uint32_t k = 0; k < cx.p; ++k) {
        nd.P10.c[k] = Fp(cx.p, z[k]);
        nd.P20.c[k] = Fp(cx.p, z[cx.p + k]);
        nd.P21.c[k] = Fp(cx.p, z[2 * cx.p + k]);
    }
    return nd;
}

std::vector<std::uint64_t> monodromy_pack(const MonodromyData<Fp>& nd) {
    const PrimeCtx& cx = *nd.P10.ctx;
    std::vector<std::uint64_t> z;
    z.reserve(static_cast<std::size_t>(3) * cx.p);
    for (std::uint32_t k = 0; k < cx.p; ++k) z.push_back(nd.P10.c[k].v);
    for (std::uint32_t k = 0; k < cx.p; ++k) z.push_back(nd.P20.c[k].v);
    for (std::uint32_t k = 0; k < cx.p; ++k) z.push_back(nd.P21.c[k].v);
    return z;
}

MonodromySolutionSet monodromy_bruteforce(const OrdinaryModule<Fp>& m) {
    const PrimeCtx& cx = *m.ctx;
    const std::uint32_t p = cx.p;
    const std::uint32_t U = 3 * p;
    const std::vector<Fp> r0 = monodromy_residue_rows(m, monodromy_zero<Fp>(cx));
    const std::size_t R = r0.size();

    // The residues are affine in the packed unknowns; probe each coordinate.
    std::vector<std::vector<std::uint64_t>> cols(U);
    for (std::uint32_t t = 0; t < U; ++t) {
        std::vector<std::uint64_t> z(U, 0);
        z[t] = 1;
        const std::vector<Fp> rt = monodromy_residue_rows(m, monodromy_unpack(cx, z));
        cols[t].resize(R);
        for (std::size_t r = 0; r < R; ++r) cols[t][r] = (rt[r] - r0[r]).v;
    }

    // Keep only rows that are not identically zero, then solve A z = -r0.
    std::vector<std::vector<std::uint64_t>> A;
    std::vector<std::uint64_t> b;
    for (std::size_t r = 0; r < R; ++r) {
        bool nz = r0[r].v != 0;
        for (std::uint32_t t = 0; t < U && !nz; ++t) nz = cols[t][r] != 0;
        if (!nz) continue;
        std::vector<std::uint64_t> row(U);
        for (std::uint32_t t = 0; t < U; ++t) row[t] = cols[t][r];
        A.push_back(std::move(row));
        b.push_back((-r0[r]).v);
    }

    MonodromySolutionSet out;
    if (A.empty()) {
        out.solvable = true;
        out.nullity = U;
        out.particular.assign(U, 0);
        for (std::uint32_t t = 0; t < U; ++t) {
            std::vector<std::uint64_t> v(U, 0);
            v[t] = 1;
            out.null_basis.push_back(std::move(v));
        }
        return out;
    }
    const FpSolveResult sol = fp_solve(std::move(A), std::move(b), p);
    out.solvable = sol.solvable;
    if (sol.solvable) {
        out.particular = sol.particular;
        out.null_basis = sol.null_basis;
        out.nullity = static_cast<std::uint32_t>(out.null_basis.size());
    }
    return out;
}

bool monodromy_in_solution_set(const MonodromySolutionSet& sols, const MonodromyData<Fp>& nd) {
    if (!sols.solvable) return false;
    const PrimeCtx& cx = *nd.P10.ctx;
    const std::vector<std::uint64_t> z = monodromy_pack(nd);
    std::vector<std::uint64_t> diff(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        diff[i] = (z[i] + cx.p - sols.particular[i] % cx.p) % cx.p;
    return fp_in_span(sols.null_basis, diff, cx.p);
}

bool monodromy_solvable(const OrdinaryModule<Fp>& m) { return monodromy_bruteforce(m).solvable; }

bool monodromy_solvable(const OrdinaryModule<FpDual>& m) {
    const PrimeCtx& cx = *m.ctx;
    const std::uint32_t p = cx.p;
    const std::uint32_t U = 3 * p;
    const std::vector<FpDual> r0 = monodromy_residue_rows(m, monodromy_zero<FpDual>(cx));
    const std::size_t R = r0.size();

    std::vector<std::vector<FpDual>> cols(U);
    for (std::uint32_t t = 0; t < U; ++t) {
        MonodromyData<FpDual> probe = monodromy_zero<FpDual>(cx);
        Sbar0<FpDual>& P = t < p ? probe.P10 : (t < 2 * p ? probe.P20 : probe.P21);
        P.c[t % p] = FpDual::one(p);
        const std::vector<FpDual> rt = monodromy_residue_rows(m, probe);
        cols[t].resize(R);
        for (std::size_t r = 0; r < R; ++r) cols[t][r] = rt[r] - r0[r];
    }

    // Solvability over F[eps]/(eps^2): write the matrix as A0 + eps A1 and the
    // constant as b0 + eps b1; the system has a dual-number solution z0 + eps z1
    // iff the doubled F_p system [[A0, 0], [A1, A0]] (z0; z1) = -(b0; b1) does.
    std::vector<std::vector<std::uint64_t>> A;
    std::vector<std::uint64_t> b;
    for (std::size_t r = 0; r < R; ++r) {
        bool nz = !r0[r].is_zero();
        for (std::uint32_t t = 0; t < U && !nz; ++t) nz = !cols[t][r].is_zero();
        if (!nz) continue;
        std::vector<std::uint64_t> row_a(2 * U, 0), row_b(2 * U, 0);
        for (std::uint32_t t = 0; t < U; ++t) {
            row_a[t] = cols[t][r].a;
            row_b[t] = cols[t][r].b;
            row_b[U + t] = cols[t][r].a;
        }
        A.push_back(std::move(row_a));
        b.push_back((p - r0[r].a % p) % p);
        A.push_back(std::move(row_b));
        b.push_back((p - r0[r].b % p) % p);
    }
    if (A.empty()) return true;
    return fp_solve(std::move(A), std::move(b), p).solvable;
}

// ---- explicit instantiations --------------------------------------------------------

template struct OrdinaryModule<Fp>;
template struct OrdinaryModule<FpDual>;

template std::array<SbarPoly<Fp>, 9> ordinary_filtration_matrix(const OrdinaryModule<Fp>&);
template std::array<SbarPoly<FpDual>, 9> ordinary_filtration_matrix(const OrdinaryModule<FpDual>&);

template std::vector<Fp> monodromy_residue_rows(const OrdinaryModule<Fp>&,
                                                const MonodromyData<Fp>&);
template std::vector<FpDual> monodromy_residue_rows(const OrdinaryModule<FpDual>&,
                                                    const MonodromyData<FpDual>&);

template bool verify_monodromy_axioms(const OrdinaryModule<Fp>&, const MonodromyData<Fp>&);
template bool verify_monodromy_axioms(const OrdinaryModule<FpDual>&, const MonodromyData<FpDual>&);

template bool monodromy_exists(const OrdinaryModule<Fp>&);
template bool monodromy_exists(const OrdinaryModule<FpDual>&);

template MonodromyData<Fp> monodromy_closed_form(const OrdinaryModule<Fp>&);
template MonodromyData<FpDual> monodromy_closed_form(const OrdinaryModule<FpDual>&);

template MonodromyData<Fp> monodromy_statement_variant(const OrdinaryModule<Fp>&);
template MonodromyData<FpDual> monodromy_statement_variant(const OrdinaryModule<FpDual>&);

} // namespace breuil
