#pragma once

#include <cstdint>
#include <vector>

#include "breuil/coeff.hpp"
#include "breuil/errors.hpp"

namespace breuil {

// ---- dense linear algebra over F_p ----------------------------------------------
//
// Small exact solver used by the monodromy oracle and the tangent-space counts.
// Matrices are row-major vectors of rows; entries are canonical residues in [0, p).

struct FpSolveResult {
    bool solvable = false;
    std::uint32_t rank = 0;
    std::vector<std::uint64_t> particular;              // one solution (free vars = 0)
    std::vector<std::vector<std::uint64_t>> null_basis; // kernel basis, one per free var
};

// Reduced row echelon form of the augmented matrix [A | b]; A is R x C. Returns the
// full affine solution set of A z = b.
inline FpSolveResult fp_solve(std::vector<std::vector<std::uint64_t>> A,
                              std::vector<std::uint64_t> b, std::uint64_t p) {
    const std::size_t R = A.size();
    const std::size_t C = R == 0 ? 0 : A[0].size();
    if (b.size() != R) throw input_error("fp_solve: row/rhs size mismatch");
    for (std::size_t r = 0; r < R; ++r) {
        if (A[r].size() != C) throw input_error("fp_solve: ragged matrix");
        for (auto& x : A[r]) x %= p;
        A[r].push_back(b[r] % p);
    }

    std::vector<std::size_t> pivot_col; // pivot column of row i in echelon order
    std::size_t rank = 0;
    for (std::size_t col = 0; col < C && rank < R; ++col) {
        std::size_t piv = rank;
        while (piv < R && A[piv][col] == 0) ++piv;
        if (piv == R) continue;
        std::swap(A[rank], A[piv]);
        const std::uint64_t inv = Fp(static_cast<std::uint32_t>(p), A[rank][col]).inv().v;
        for (std::size_t j = col; j <= C; ++j)
            A[rank][j] = A[rank][j] * inv % p;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            const std::uint64_t f = A[r][col];
            for (std::size_t j = col; j <= C; ++j)
                A[r][j] = (A[r][j] + (p - f) * A[rank][j]) % p;
        }
        pivot_col.push_back(col);
        ++rank;
    }

    FpSolveResult out;
    out.rank = static_cast<std::uint32_t>(rank);
    for (std::size_t r = rank; r < R; ++r)
        if (A[r][C] != 0) return out; // inconsistent; solvable stays false
    out.solvable = true;

    out.particular.assign(C, 0);
    for (std::size_t i = 0; i < rank; ++i) out.particular[pivot_col[i]] = A[i][C];

    std::vector<bool> is_pivot(C, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint64_t> v(C, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) v[pivot_col[i]] = (p - A[i][f]) % p;
        out.null_basis.push_back(std::move(v));
    }
    return out;
}

// Rank of a list of vectors over F_p.
inline std::uint32_t fp_rank(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    const std::size_t R = rows.size();
    const std::size_t C = R == 0 ? 0 : rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < C && rank < R; ++col) {
        std::size_t piv = rank;
        while (piv < R && rows[piv][col] % p == 0) ++piv;
        if (piv == R) continue;
        std::swap(rows[rank], rows[piv]);
        const std::uint64_t inv = Fp(static_cast<std::uint32_t>(p), rows[rank][col] % p).inv().v;
        for (std::size_t j = col; j < C; ++j)
            rows[rank][j] = rows[rank][j] % p * inv % p;
        for (std::size_t r = rank + 1; r < R; ++r) {
            const std::uint64_t f = rows[r][col] % p;
            if (f == 0) continue;
            for (std::size_t j = col; j < C; ++j)
                rows[r][j] = (rows[r][j] % p + (p - f) * rows[rank][j]) % p;
        }
        ++rank;
    }
    return static_cast<std::uint32_t>(rank);
}

// Does target lie in the span of basis?
inline bool fp_in_span(const std::vector<std::vector<std::uint64_t>>& basis,
                       const std::vector<std::uint64_t>& target, std::uint64_t p) {
    std::uint32_t r0 = fp_rank(basis, p);
    auto extended = basis;
    extended.push_back(target);
    return fp_rank(extended, p) == r0;
}

} // namespace breuil
