#pragma once
// Random complexes and chain-map triples with a naive oracle, shared by the
// homalg unit tests and the acceptance binary.
#include <random>

#include "gf2_util.hpp"
#include "pf/homalg.hpp"

namespace testutil {

using pf::ComplexF2;
using pf::DiffSpace;
using pf::TriangleData;

inline Mat random_mat(int r, int c, std::mt19937& rng, int density = 2) {
    Mat m(r, std::vector<int>(c, 0));
    for (auto& row : m)
        for (auto& x : row) x = rng() % density == 0;
    return m;
}

// Random graded complex C_0 <- C_1 <- ... with d d = 0: each boundary's
// columns are random cycles of the previous one.
inline ComplexF2 random_complex(std::mt19937& rng, int max_total) {
    ComplexF2 c;
    const int levels = 2 + rng() % 3;
    int left = max_total;
    for (int k = 0; k < levels; ++k) {
        const int d = std::min(left, 1 + static_cast<int>(rng() % 9));
        c.dims.push_back(d);
        left -= d;
    }
    Mat prev;
    for (int k = 0; k + 1 < levels; ++k) {
        const int rows = c.dims[k], cols = c.dims[k + 1];
        Mat m(rows, std::vector<int>(cols, 0));
        std::vector<std::vector<int>> cycles;
        if (k == 0) {
            for (int i = 0; i < rows; ++i) {
                std::vector<int> e(rows, 0);
                e[i] = 1;
                cycles.push_back(e);
            }
        } else {
            cycles = testutil::nullspace(prev, rows);
        }
        for (int j = 0; j < cols; ++j) {
            auto v = testutil::random_combination(cycles, rows, rng);
            for (int i = 0; i < rows; ++i) m[i][j] = v[i];
        }
        c.boundary.push_back(testutil::to_bits(m, cols));
        prev = m;
    }
    return c;
}

// rank of the induced map on homology of a linear map psi: (X, dx) -> (Y, dy)
inline int homology_map_rank(const Mat& psi, const Mat& dx, const Mat& dy, int nx, int ny) {
    auto cycles = testutil::nullspace(dx, nx);
    Mat span(ny, std::vector<int>());
    for (const auto& z : cycles) {
        Mat col(nx, std::vector<int>(1));
        for (int i = 0; i < nx; ++i) col[i][0] = z[i];
        auto img = testutil::mul(psi, col);
        for (int i = 0; i < ny; ++i) span[i].push_back(img[i][0]);
    }
    for (int i = 0; i < ny; ++i) span[i].insert(span[i].end(), dy[i].begin(), dy[i].end());
    return testutil::naive_rank(span) - testutil::naive_rank(dy);
}

inline Mat block(const std::vector<std::vector<const Mat*>>& parts, const std::vector<int>& rows, const std::vector<int>& cols) {
    int R = 0, C = 0;
    for (int r : rows) R += r;
    for (int c : cols) C += c;
    Mat out(R, std::vector<int>(C, 0));
    int r0 = 0;
    for (std::size_t bi = 0; bi < rows.size(); ++bi) {
        int c0 = 0;
        for (std::size_t bj = 0; bj < cols.size(); ++bj) {
            if (const Mat* m = parts[bi][bj])
                for (int i = 0; i < rows[bi]; ++i)
                    for (int j = 0; j < cols[bj]; ++j) out[r0 + i][c0 + j] = (*m)[i][j];
            c0 += cols[bj];
        }
        r0 += rows[bi];
    }
    return out;
}

struct Triple {
    int na, nb, nc;
    Mat da, db, dc, f, g, h;
};

// C is the cone of f in a random basis, g the inclusion, h the projection
// homotopy; always exact.
inline Triple exact_triple(std::mt19937& rng) {
    Triple t;
    t.na = 1 + rng() % 5;
    t.nb = 1 + rng() % 5;
    t.da = testutil::random_differential(t.na, rng() % (t.na / 2 + 1), rng);
    t.db = testutil::random_differential(t.nb, rng() % (t.nb / 2 + 1), rng);
    // chain maps A -> B: solve f da = db f
    const int vars = t.nb * t.na;
    Mat eq;
    for (int i = 0; i < t.nb; ++i)
        for (int j = 0; j < t.na; ++j) {
            std::vector<int> row(vars, 0);
            for (int k = 0; k < t.na; ++k)
                if (t.da[k][j]) row[i * t.na + k] ^= 1;
            for (int k = 0; k < t.nb; ++k)
                if (t.db[i][k]) row[k * t.na + j] ^= 1;
            eq.push_back(row);
        }
    auto sol = testutil::random_combination(testutil::nullspace(eq, vars), vars, rng);
    t.f.assign(t.nb, std::vector<int>(t.na));
    for (int i = 0; i < t.nb; ++i)
        for (int j = 0; j < t.na; ++j) t.f[i][j] = sol[i * t.na + j];
    t.nc = t.na + t.nb;
    Mat dcone = block({{&t.da, nullptr}, {&t.f, &t.db}}, {t.na, t.nb}, {t.na, t.nb});
    Mat id_b(t.nb, std::vector<int>(t.nb, 0)), id_a(t.na, std::vector<int>(t.na, 0));
    for (int i = 0; i < t.nb; ++i) id_b[i][i] = 1;
    for (int i = 0; i < t.na; ++i) id_a[i][i] = 1;
    Mat g0 = block({{nullptr}, {&id_b}}, {t.na, t.nb}, {t.nb});
    Mat h0 = block({{&id_a}, {nullptr}}, {t.na, t.nb}, {t.na});
    auto [p, q] = testutil::random_invertible(t.nc, rng);
    t.dc = testutil::mul(testutil::mul(p, dcone), q);
    t.g = testutil::mul(p, g0);
    t.h = testutil::mul(p, h0);
    return t;
}

// Random (f, g, h) with f, g chain maps and g f = dc h + h da.
inline Triple random_triple(std::mt19937& rng) {
    Triple t;
    t.na = 1 + rng() % 4;
    t.nb = 1 + rng() % 4;
    t.nc = 1 + rng() % 4;
    t.da = testutil::random_differential(t.na, rng() % (t.na / 2 + 1), rng);
    t.db = testutil::random_differential(t.nb, rng() % (t.nb / 2 + 1), rng);
    t.dc = testutil::random_differential(t.nc, rng() % (t.nc / 2 + 1), rng);
    // unknowns: f (nb x na), g (nc x nb), h (nc x na); f first, then g and h
    // given f (the g f term makes the joint system quadratic)
    {
        const int vars = t.nb * t.na;
        Mat eq;
        for (int i = 0; i < t.nb; ++i)
            for (int j = 0; j < t.na; ++j) {
                std::vector<int> row(vars, 0);
                for (int k = 0; k < t.na; ++k)
                    if (t.da[k][j]) row[i * t.na + k] ^= 1;
                for (int k = 0; k < t.nb; ++k)
                    if (t.db[i][k]) row[k * t.na + j] ^= 1;
                eq.push_back(row);
            }
        auto sol = testutil::random_combination(testutil::nullspace(eq, vars), vars, rng);
        t.f.assign(t.nb, std::vector<int>(t.na));
        for (int i = 0; i < t.nb; ++i)
            for (int j = 0; j < t.na; ++j) t.f[i][j] = sol[i * t.na + j];
    }
    const int ng = t.nc * t.nb, nh = t.nc * t.na, vars = ng + nh;
    auto G = [&](int i, int j) { return i * t.nb + j; };
    auto H = [&](int i, int j) { return ng + i * t.na + j; };
    Mat eq;
    for (int i = 0; i < t.nc; ++i)
        for (int j = 0; j < t.nb; ++j) {  // g db = dc g
            std::vector<int> row(vars, 0);
            for (int k = 0; k < t.nb; ++k)
                if (t.db[k][j]) row[G(i, k)] ^= 1;
            for (int k = 0; k < t.nc; ++k)
                if (t.dc[i][k]) row[G(k, j)] ^= 1;
            eq.push_back(row);
        }
    for (int i = 0; i < t.nc; ++i)
        for (int j = 0; j < t.na; ++j) {  // g f + dc h + h da = 0
            std::vector<int> row(vars, 0);
            for (int k = 0; k < t.nb; ++k)
                if (t.f[k][j]) row[G(i, k)] ^= 1;
            for (int k = 0; k < t.nc; ++k)
                if (t.dc[i][k]) row[H(k, j)] ^= 1;
            for (int k = 0; k < t.na; ++k)
                if (t.da[k][j]) row[H(i, k)] ^= 1;
            eq.push_back(row);
        }
    auto sol = testutil::random_combination(testutil::nullspace(eq, vars), vars, rng);
    t.g.assign(t.nc, std::vector<int>(t.nb));
    t.h.assign(t.nc, std::vector<int>(t.na));
    for (int i = 0; i < t.nc; ++i) {
        for (int j = 0; j < t.nb; ++j) t.g[i][j] = sol[G(i, j)];
        for (int j = 0; j < t.na; ++j) t.h[i][j] = sol[H(i, j)];
    }
    return t;
}

inline TriangleData chain_data(const Triple& t) {
    TriangleData d;
    d.ca = DiffSpace{testutil::to_bits(t.da, t.na)};
    d.cb = DiffSpace{testutil::to_bits(t.db, t.nb)};
    d.cc = DiffSpace{testutil::to_bits(t.dc, t.nc)};
    d.f = testutil::to_bits(t.f, t.na);
    d.g = testutil::to_bits(t.g, t.nb);
    d.h = testutil::to_bits(t.h, t.na);
    return d;
}

// Oracle: the total complex is acyclic iff (h, g): Cone(f) -> C is an
// isomorphism on homology.
inline bool oracle_exact(const Triple& t) {
    const int n = t.na + t.nb;
    Mat dcone = block({{&t.da, nullptr}, {&t.f, &t.db}}, {t.na, t.nb}, {t.na, t.nb});
    Mat psi = block({{&t.h, &t.g}}, {t.nc}, {t.na, t.nb});
    const int h_cone = n - 2 * testutil::naive_rank(dcone);
    const int h_c = t.nc - 2 * testutil::naive_rank(t.dc);
    return h_cone == h_c && homology_map_rank(psi, dcone, t.dc, n, t.nc) == h_c;
}

}  // namespace testutil
