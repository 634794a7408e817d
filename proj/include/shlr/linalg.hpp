#pragma once

#include "scalar.hpp"

#include <optional>
#include <vector>

namespace shlr {

using Matrix = std::vector<std::vector<Scalar>>;

// Basis of {x : M x = 0} over the Gaussian rationals.
inline std::vector<std::vector<Scalar>> nullspace(Matrix m, int cols) {
    std::vector<int> pivot_col;
    int row = 0;
    const int rows = static_cast<int>(m.size());
    for (int c = 0; c < cols && row < rows; ++c) {
        int p = row;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[row]);
        Scalar inv = Scalar(1) / m[row][c];
        for (int k = c; k < cols; ++k) m[row][k] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Scalar f = m[r][c];
            for (int k = c; k < cols; ++k)
                if (!m[row][k].is_zero()) m[r][k] -= f * m[row][k];
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols);
        v[f] = Scalar(1);
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some x with M x = b, or nullopt when inconsistent.
inline std::optional<std::vector<Scalar>> solve(Matrix m, std::vector<Scalar> b, int cols) {
    const int rows = static_cast<int>(m.size());
    for (int r = 0; r < rows; ++r) m[r].push_back(b[r]);
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < cols && row < rows; ++c) {
        int p = row;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[row]);
        Scalar inv = Scalar(1) / m[row][c];
        for (int k = c; k <= cols; ++k) m[row][k] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Scalar f = m[r][c];
            for (int k = c; k <= cols; ++k)
                if (!m[row][k].is_zero()) m[r][k] -= f * m[row][k];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (int r = row; r < rows; ++r)
        if (!m[r][cols].is_zero()) return std::nullopt;
    std::vector<Scalar> x(cols);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = m[r][cols];
    return x;
}

}  // namespace shlr
