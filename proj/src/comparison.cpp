#include "breuil/comparison.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

namespace breuil {

namespace {

using Poly = std::vector<Fp>; // F[pi]/(pi^T), coefficient of pi^d at index d

Poly poly_zero(const PrimeCtx& cx, std::uint32_t T) { return Poly(T, Fp::zero(cx.p)); }

void poly_accum_monomial(Poly& x, std::uint32_t d, Fp v) {
    if (d < x.size()) x[d] = x[d] + v;
}

Poly poly_mul(const PrimeCtx& cx, const Poly& x, const Poly& y) {
    Poly z = poly_zero(cx, static_cast<std::uint32_t>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j + i < z.size() && j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            z[i + j] = z[i + j] + x[i] * y[j];
        }
    }
    return z;
}

Poly poly_sub(const PrimeCtx& cx, const Poly& x, const Poly& y) {
    Poly z = poly_zero(cx, static_cast<std::uint32_t>(x.size()));
    for (std::size_t d = 0; d < z.size(); ++d) z[d] = x[d] - y[d];
    return z;
}

bool poly_is_zero(const Poly& x) {
    return std::all_of(x.begin(), x.end(), [](Fp v) { return v.is_zero(); });
}

} // namespace

EtalePhiModule to_etale(const OrdinaryModule<Fp>& m, std::uint32_t T) {
    const PrimeCtx& cx = *m.ctx;
    const std::uint32_t e = cx.e;
    if (T == 0) T = e * cx.p;
    std::uint32_t maxb = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) maxb = std::max(maxb, cx.bracket(i, j));
    if (T < 2 * e + maxb + 1)
        throw input_error("TruncationTooSmall: need T >= 2e + max bracket + 1");
    for (const Fp& al : m.alpha)
        if (!al.is_unit()) throw input_error("to_etale: alpha entries must be units");

    EtalePhiModule em;
    em.ctx = &cx;
    em.T = T;
    for (auto& entry : em.frob) entry = poly_zero(cx, T);

    // Mat(phi) = V^t Diag(alpha^{-1}) with u -> pi: entry (i,j) = V_{ji} alpha_j^{-1}.
    const std::array<Fp, 3> ainv = {m.alpha[0].inv(), m.alpha[1].inv(), m.alpha[2].inv()};
    poly_accum_monomial(em.frob[0 * 3 + 0], 0, ainv[0]);
    poly_accum_monomial(em.frob[1 * 3 + 1], e, ainv[1]);
    poly_accum_monomial(em.frob[2 * 3 + 2], 2 * e, ainv[2]);
    poly_accum_monomial(em.frob[0 * 3 + 1], cx.bracket(1, 0), m.v10 * ainv[1]);
    poly_accum_monomial(em.frob[0 * 3 + 2], cx.bracket(2, 0), m.v20 * ainv[2]);
    poly_accum_monomial(em.frob[0 * 3 + 2], cx.bracket(2, 0) + e, m.v20p * ainv[2]);
    poly_accum_monomial(em.frob[1 * 3 + 2], e + cx.bracket(2, 1), m.v21 * ainv[2]);
    return em;
}

std::uint32_t etale_det_valuation(const EtalePhiModule& em) {
    const PrimeCtx& cx = *em.ctx;
    const auto& f = em.frob;
    Poly det = poly_zero(cx, em.T);
    const int sgn[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                           {0, 2, 1, -1}, {1, 0, 2, -1}, {2, 1, 0, -1}};
    for (const auto& s : sgn) {
        Poly term = poly_mul(cx, poly_mul(cx, f[0 * 3 + s[0]], f[1 * 3 + s[1]]), f[2 * 3 + s[2]]);
        for (std::size_t d = 0; d < det.size(); ++d)
            det[d] = s[3] > 0 ? det[d] + term[d] : det[d] - term[d];
    }
    for (std::uint32_t d = 0; d < em.T; ++d)
        if (!det[d].is_zero()) return d;
    throw computation_error("etale_det_valuation: determinant vanishes to truncation order");
}

IsotypicDescent descend_isotypic(const EtalePhiModule& em) {
    const PrimeCtx& cx = *em.ctx;
    const std::uint32_t e = cx.e;
    const std::uint32_t p = cx.p;
    if (em.T % e != 0)
        throw input_error("descend_isotypic: truncation degree must be a multiple of e");
    if (em.T <= e * (cx.a[2] + 2))
        throw input_error("TruncationTooSmall: descent needs T > e (a2 + 2)");

    IsotypicDescent out;
    out.ctx = &cx;
    out.len = em.T / e;
    for (auto& entry : out.mat) entry = Poly(out.len, Fp::zero(p));

    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // entry (i,j) scaled by pi^{p a_j - a_i}; the result must be supported
            // on degrees divisible by e, which become pbar-degrees.
            const std::int64_t shift =
                static_cast<std::int64_t>(p) * cx.a[j] - static_cast<std::int64_t>(cx.a[i]);
            const Poly& src = em.frob[3 * i + j];
            for (std::uint32_t d = 0; d < em.T; ++d) {
                if (src[d].is_zero()) continue;
                const std::int64_t dd = static_cast<std::int64_t>(d) + shift;
                if (dd < 0)
                    throw computation_error(
                        "ExponentNotDivisible: negative pi-exponent after base change");
                if (dd >= static_cast<std::int64_t>(em.T)) continue; // truncated away
                if (dd % e != 0)
                    throw computation_error(
                        "ExponentNotDivisible: descent produced a pi-exponent not in eZ");
                out.mat[3 * i + j][static_cast<std::size_t>(dd / e)] =
                    out.mat[3 * i + j][static_cast<std::size_t>(dd / e)] + src[d];
            }
        }
    }

    // Diagonal exponent pattern (a0, a1+1, a2+2) read off from the data.
    for (int i = 0; i < 3; ++i) {
        const Poly& di = out.mat[3 * i + i];
        std::uint32_t v = out.len;
        for (std::uint32_t d = 0; d < out.len; ++d)
            if (!di[d].is_zero()) {
                v = d;
                break;
            }
        if (v == out.len)
            throw computation_error("descend_isotypic: diagonal entry vanished under truncation");
        out.diag_exponent[i] = v;
    }
    return out;
}

FLModule to_fl(const OrdinaryModule<Fp>& m) {
    const PrimeCtx& cx = *m.ctx;
    if (!m.v20.is_zero())
        throw computation_error("NoMonodromy: v20 != 0 admits no monodromy operator");
    for (const Fp& al : m.alpha)
        if (!al.is_unit()) throw input_error("to_fl: alpha entries must be units");

    FLModule fl;
    fl.ctx = &cx;
    fl.hodge_tate = {0, cx.a[1] - cx.a[0] + 1, cx.a[2] - cx.a[0] + 2};
    if (fl.hodge_tate[2] >= cx.p - 1)
        throw input_error("to_fl: weights outside the Fontaine-Laffaille range");
    for (auto& x : fl.frob) x = Fp::zero(cx.p);
    const std::array<Fp, 3> ainv = {m.alpha[0].inv(), m.alpha[1].inv(), m.alpha[2].inv()};
    // U(x, y, z) Diag(alpha^{-1}) with x = v10, y = v20p, z = v21.
    fl.frob[0 * 3 + 0] = ainv[0];
    fl.frob[1 * 3 + 1] = ainv[1];
    fl.frob[2 * 3 + 2] = ainv[2];
    fl.frob[0 * 3 + 1] = m.v10 * ainv[1];
    fl.frob[0 * 3 + 2] = m.v20p * ainv[2];
    fl.frob[1 * 3 + 2] = m.v21 * ainv[2];
    return fl;
}

bool fl_pipeline_coherent(const OrdinaryModule<Fp>& m) {
    const PrimeCtx& cx = *m.ctx;
    const IsotypicDescent de = descend_isotypic(to_etale(m));
    const FLModule fl = to_fl(m);
    // descended = fl scaled columnwise by pbar^{(a0, a1+1, a2+2)}.
    const std::array<std::uint32_t, 3> w = {cx.a[0], cx.a[1] + 1, cx.a[2] + 2};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Poly expect(de.len, Fp::zero(cx.p));
            if (w[j] < de.len) expect[w[j]] = fl.frob[3 * i + j];
            if (!poly_is_zero(poly_sub(cx, de.mat[3 * i + j], expect))) return false;
        }
    }
    return true;
}

namespace {

void require_same_weights(const FLModule& f1, const FLModule& f2) {
    if (f1.hodge_tate != f2.hodge_tate)
        throw input_error("WeightMismatch: isomorphism test needs equal Hodge-Tate weights");
}

// Mat1 = Mat2 Diag(s): columnwise proportionality with unit ratios.
bool rightmult_matches(const std::array<Fp, 9>& m1, const std::array<Fp, 9>& m2,
                       std::uint32_t p) {
    for (int j = 0; j < 3; ++j) {
        Fp s = Fp::zero(p);
        bool have = false;
        for (int i = 0; i < 3; ++i) {
            const Fp x1 = m1[3 * i + j], x2 = m2[3 * i + j];
            if (x2.is_zero()) {
                if (!x1.is_zero()) return false;
                continue;
            }
            const Fp ratio = x1 * x2.inv();
            if (!have) {
                if (!ratio.is_unit()) return false;
                s = ratio;
                have = true;
            } else if (ratio != s) {
                return false;
            }
        }
        // A zero column matches a zero column with any unit scale.
    }
    return true;
}

} // namespace

bool fl_isomorphic_rightmult(const FLModule& f1, const FLModule& f2) {
    require_same_weights(f1, f2);
    return rightmult_matches(f1.frob, f2.frob, f1.ctx->p);
}

bool fl_isomorphic(const FLModule& f1, const FLModule& f2) {
    require_same_weights(f1, f2);
    const std::uint32_t p = f1.ctx->p;
    // Mat1 = D Mat2 D'. A global unit moves between D and D', so d0 = 1 is free;
    // exhaust the remaining (d1, d2) and test for a right-diagonal complement.
    for (std::uint32_t d1 = 1; d1 < p; ++d1) {
        for (std::uint32_t d2 = 1; d2 < p; ++d2) {
            const std::array<Fp, 3> d = {Fp::one(p), Fp(p, d1), Fp(p, d2)};
            std::array<Fp, 9> scaled;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) scaled[3 * i + j] = d[i] * f2.frob[3 * i + j];
            if (rightmult_matches(f1.frob, scaled, p)) return true;
        }
    }
    return false;
}

bool fl_isomorphic_conj(const FLModule& f1, const FLModule& f2) {
    require_same_weights(f1, f2);
    const std::uint32_t p = f1.ctx->p;
    // Mat1 = D Mat2 D^{-1}; d0 = 1 free since the center acts trivially.
    for (std::uint32_t d1 = 1; d1 < p; ++d1) {
        for (std::uint32_t d2 = 1; d2 < p; ++d2) {
            const std::array<Fp, 3> d = {Fp::one(p), Fp(p, d1), Fp(p, d2)};
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i)
                for (int j = 0; j < 3 && ok; ++j)
                    ok = f1.frob[3 * i + j] == d[i] * f2.frob[3 * i + j] * d[j].inv();
            if (ok) return true;
        }
    }
    return false;
}

} // namespace breuil
