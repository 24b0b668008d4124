#include "breuil/coeff.hpp"

namespace breuil {

std::uint64_t inv_unit(std::uint64_t x, std::uint64_t p, std::uint64_t pN) {
    x %= pN;
    if (x % p == 0) throw computation_error("inv_unit: not a unit mod p^N");
    // Fermat inverse mod p, then Hensel-lift: z <- z(2 - xz) doubles precision.
    std::uint64_t z = powmod(x % p, p - 2, p);
    while (true) {
        std::uint64_t xz = mulmod(x, z, pN);
        if (xz == 1) return z;
        z = mulmod(z, submod(2 % pN, xz, pN), pN);
    }
}

std::uint32_t val_p(std::uint64_t x, std::uint64_t p) {
    if (x == 0) throw computation_error("val_p of 0");
    std::uint32_t v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

std::uint32_t digit_sum(std::uint32_t k, std::uint32_t p) {
    std::uint32_t s = 0;
    while (k) { s += k % p; k /= p; }
    return s;
}

std::pair<std::uint32_t, std::uint64_t> factorial_split(std::uint32_t k, std::uint64_t p,
                                                        std::uint64_t pN) {
    // v_p(k!) = (k - S_p(k)) / (p - 1) by Legendre; strip the p-part factor by factor.
    std::uint32_t v = 0;
    std::uint64_t unit = 1 % pN;
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint64_t f = i;
        while (f % p == 0) { f /= p; ++v; }
        unit = mulmod(unit, f % pN, pN);
    }
    std::uint32_t legendre = (k - digit_sum(k, static_cast<std::uint32_t>(p))) /
                             (static_cast<std::uint32_t>(p) - 1);
    if (v != legendre) throw computation_error("factorial_split: Legendre mismatch");
    return {v, unit};
}

PrimeCtx::PrimeCtx(std::uint32_t p_, std::array<std::uint32_t, 3> a_, std::uint32_t N_,
                   std::uint32_t M_)
    : p(p_), e(p_ - 1), a(a_), N(N_), M(M_) {
    if (p < 5) throw input_error("PrimeCtx: p too small");
    if (N == 0 || N > p - 3) throw input_error("PrimeCtx: need 1 <= N <= p-3");
    if (M < 4 || M > p) throw input_error("PrimeCtx: need 4 <= M <= p");
    if (!(a[0] < a[1] && a[1] < a[2] && a[2] < e))
        throw input_error("PrimeCtx: weights must satisfy 0 <= a0 < a1 < a2 < e");
    ppow.resize(N + 1);
    ppow[0] = 1;
    for (std::uint32_t i = 1; i <= N; ++i) ppow[i] = ppow[i - 1] * p;
    pN = ppow[N];
    binom_rows = 2 * M + 2;
    binom.assign((std::size_t)binom_rows * binom_rows, 0);
    for (std::uint32_t i = 0; i < binom_rows; ++i) {
        binom[(std::size_t)i * binom_rows] = 1;
        for (std::uint32_t j = 1; j <= i; ++j)
            binom[(std::size_t)i * binom_rows + j] =
                addmod(binom[(std::size_t)(i - 1) * binom_rows + j - 1],
                       j <= i - 1 ? binom[(std::size_t)(i - 1) * binom_rows + j] : 0, pN);
    }
}

std::uint64_t PrimeCtx::C(std::uint32_t i, std::uint32_t j) const {
    if (j > i) return 0;
    if (i >= binom_rows) throw computation_error("PrimeCtx::C: index beyond table");
    return binom[(std::size_t)i * binom_rows + j];
}

std::uint32_t PrimeCtx::bracket_of(std::int64_t x) const {
    std::int64_t r = (-x) % (std::int64_t)e;
    if (r < 0) r += e;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeCtx::twist_excess(int i, int k, int j) const {
    std::uint32_t s = bracket(i, k) + bracket(k, j);
    std::uint32_t b = bracket(i, j);
    if (s != b && s != b + e) throw computation_error("twist_excess: not 0 or 1");
    return s == b ? 0 : 1;
}

bool PrimeCtx::strongly_generic() const {
    return p >= 13 && a[1] - a[0] > 3 && a[2] - a[1] > 3 && a[2] - a[0] < p - 4;
}

void PrimeCtx::require_strongly_generic() const {
    if (!strongly_generic())
        throw input_error("weights are not strongly generic: need a1-a0 > 3, a2-a1 > 3, "
                          "a2-a0 < p-4, p >= 13");
}

} // namespace breuil
