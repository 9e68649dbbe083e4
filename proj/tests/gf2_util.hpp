#pragma once
// Small GF(2) helpers shared by the property tests. Deliberately naive:
// vectors of 0/1 bytes, row reduction with no packing.
#include <random>
#include <vector>

#include "pf/homalg.hpp"

namespace testutil {

using Mat = std::vector<std::vector<int>>;

inline Mat to_mat(const pf::BitMatrix& m) {
    Mat out(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c);
    return out;
}

inline pf::BitMatrix to_bits(const Mat& m, std::size_t cols) {
    pf::BitMatrix out(m.size(), cols);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (m[r][c]) out.set(r, c);
    return out;
}

inline int naive_rank(Mat m) {
    int rank = 0;
    const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = rank;
        while (p < rows && !m[p][c]) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (int r = 0; r < rows; ++r)
            if (r != rank && m[r][c])
                for (int k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

// Basis of {x : m x = 0}; m has `cols` columns.
inline std::vector<std::vector<int>> nullspace(Mat m, int cols) {
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = rank;
        while (p < rows && !m[p][c]) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (int r = 0; r < rows; ++r)
            if (r != rank && m[r][c])
                for (int k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<int> is_pivot(cols, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<std::vector<int>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<int> x(cols, 0);
        x[f] = 1;
        for (int i = 0; i < rank; ++i)
            if (m[i][f]) x[pivot_col[i]] = 1;
        basis.push_back(x);
    }
    return basis;
}

inline std::vector<int> random_combination(const std::vector<std::vector<int>>& basis, int n, std::mt19937& rng) {
    std::vector<int> x(n, 0);
    for (const auto& b : basis)
        if (rng() & 1)
            for (int i = 0; i < n; ++i) x[i] ^= b[i];
    return x;
}

inline Mat mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Mat out(n, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t])
                for (std::size_t j = 0; j < m; ++j) out[i][j] ^= b[t][j];
    return out;
}

// Random invertible n x n matrix and its inverse, from elementary row operations.
inline std::pair<Mat, Mat> random_invertible(int n, std::mt19937& rng) {
    Mat p(n, std::vector<int>(n, 0)), q = p;
    for (int i = 0; i < n; ++i) p[i][i] = q[i][i] = 1;
    for (int step = 0; step < 3 * n; ++step) {
        const int i = rng() % n, j = rng() % n;
        if (i == j) continue;
        for (int k = 0; k < n; ++k) p[i][k] ^= p[j][k];  // row_i += row_j
        for (int k = 0; k < n; ++k) q[k][j] ^= q[k][i];  // inverse: col_j += col_i
    }
    return {p, q};
}

// Random differential of dimension n with `pairs` acyclic pairs, in a random basis.
inline Mat random_differential(int n, int pairs, std::mt19937& rng) {
    Mat d(n, std::vector<int>(n, 0));
    for (int i = 0; i < pairs; ++i) d[2 * i + 1][2 * i] = 1;
    auto [p, q] = random_invertible(n, rng);
    return mul(mul(p, d), q);
}

}  // namespace testutil
