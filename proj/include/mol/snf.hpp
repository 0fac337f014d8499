#pragma once

// Smith normal form of integer matrices by unimodular row/column moves,
// with arbitrary-precision entries (pivot growth is unbounded over Z).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mol {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct SmithResult {
    std::size_t rank = 0;
    std::vector<BigInt> factors;  // d_1 | d_2 | ... | d_rank, all positive
    // unimodular transforms with U * M * V diagonal, filled on request
    IntMatrix u, v;
};

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix matrix_product(const IntMatrix& a, const IntMatrix& b) {
    std::size_t r = a.size(), mid = b.size(), c = mid ? b[0].size() : 0;
    IntMatrix out(r, std::vector<BigInt>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < mid; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

/// Diagonalize M over Z.  The divisibility chain d_i | d_{i+1} holds on the
/// returned factors; with `with_transforms` the witnesses U, V are
/// accumulated so that U*M*V is the diagonal form.
inline SmithResult smith_normal_form(IntMatrix m, bool with_transforms = false) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    SmithResult res;
    if (with_transforms) {
        res.u = identity_matrix(rows);
        res.v = identity_matrix(cols);
    }

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(m[a], m[b]);
        if (with_transforms) std::swap(res.u[a], res.u[b]);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][a], m[r][b]);
        if (with_transforms)
            for (std::size_t r = 0; r < cols; ++r) std::swap(res.v[r][a], res.v[r][b]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < cols; ++c) m[dst][c] += q * m[src][c];
        if (with_transforms)
            for (std::size_t c = 0; c < rows; ++c) res.u[dst][c] += q * res.u[src][c];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < rows; ++r) m[r][dst] += q * m[r][src];
        if (with_transforms)
            for (std::size_t r = 0; r < cols; ++r) res.v[r][dst] += q * res.v[r][src];
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = -m[r][c];
        if (with_transforms)
            for (std::size_t c = 0; c < rows; ++c) res.u[r][c] = -res.u[r][c];
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (!found || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        if (m[t][t] < 0) negate_row(t);

        bool clean = false;
        while (!clean) {
            clean = true;
            if (m[t][t] < 0) negate_row(t);
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                BigInt q = m[i][t] / m[t][t];
                add_row(i, t, -q);
                if (m[i][t] != 0) {
                    swap_rows(t, i);
                    if (m[t][t] < 0) negate_row(t);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                BigInt q = m[t][j] / m[t][t];
                add_col(j, t, -q);
                if (m[t][j] != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
        }

        // pivot must divide the rest of the block
        bool fixed = false;
        for (std::size_t i = t + 1; i < rows && !fixed; ++i)
            for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    add_row(t, i, 1);
                    fixed = true;
                }
        if (fixed) continue;

        ++t;
    }

    res.rank = t;
    for (std::size_t i = 0; i < t; ++i) res.factors.push_back(m[i][i]);
    return res;
}

}  // namespace mol
