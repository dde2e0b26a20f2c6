// Small exact integer linear algebra: Hermite form and rank.
#pragma once

#include <utility>
#include <vector>

#include "pbl/numeric.hpp"

namespace pbl::detail {

/// Row-style Hermite normal form, in place. Returns the rank. After the call
/// the first `rank` rows are upper triangular with positive pivots.
inline std::size_t hermite_form(std::vector<std::vector<Int>>& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        // gcd out the column below row r via Euclidean row operations
        for (;;) {
            std::size_t piv = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (piv == m.size() ||
                                     abs(m[i][c]) < abs(m[piv][c])))
                    piv = i;
            if (piv == m.size()) break;
            std::swap(m[r], m[piv]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                Int q = floor_div(m[i][c], m[r][c]);
                for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[r][c] != 0) {
            if (m[r][c] < 0)
                for (std::size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
            ++r;
        }
    }
    return r;
}

inline std::size_t int_rank(std::vector<std::vector<Int>> m) { return hermite_form(m); }

/// True iff the rows generate all of Z^n as a group (full rank, lattice
/// determinant +-1).
inline bool rows_generate_full_lattice(std::vector<std::vector<Int>> m, std::size_t n) {
    const std::size_t r = hermite_form(m);
    if (r != n) return false;
    Int det = 1;
    std::size_t c = 0;
    for (std::size_t i = 0; i < r; ++i) {
        while (c < n && m[i][c] == 0) ++c;
        if (c == n) return false;
        det *= m[i][c];
    }
    return det == 1 || det == -1;
}

}  // namespace pbl::detail
