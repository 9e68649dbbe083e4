#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pf {

// Dense matrix over GF(2), rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v = true);
    void flip(std::size_t r, std::size_t c) {
        data_[r * stride_ + (c >> 6)] ^= (std::uint64_t{1} << (c & 63));
    }

    bool is_zero() const;
    BitMatrix operator*(const BitMatrix& o) const;
    BitMatrix operator+(const BitMatrix& o) const;
    bool operator==(const BitMatrix& o) const;

    static BitMatrix identity(std::size_t n);
    // row-major bit strings, one per row
    std::vector<std::string> to_strings() const;

    std::uint64_t* row(std::size_t r) { return data_.data() + r * stride_; }
    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * stride_; }
    std::size_t stride() const { return stride_; }

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> data_;
};

// Sparse matrix as a list of nonzero (row, col) positions; duplicates cancel.
struct SparseF2 {
    std::size_t rows = 0, cols = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

    void normalize();  // sort, cancel pairs
    BitMatrix dense() const;
    static SparseF2 from_dense(const BitMatrix& m);
};

std::size_t rank(BitMatrix m);
// Uses dense packing below the column threshold and sparse column
// elimination above it.
std::size_t rank(const SparseF2& m, std::size_t dense_threshold = 4096);
std::size_t rank_sparse(const SparseF2& m);

// A chain complex C_0 <- C_1 <- ... ; boundary[k] : C_{k+1} -> C_k,
// stored with rows indexed by C_k and columns by C_{k+1}.
struct ComplexF2 {
    std::vector<std::size_t> dims;
    std::vector<BitMatrix> boundary;

    // throws std::invalid_argument on shape errors or d∘d != 0
    void validate() const;
};

std::vector<std::size_t> homology_rank(const ComplexF2& c);

// Ungraded complex: a single space with a square differential, D∘D = 0.
struct DiffSpace {
    BitMatrix d;
    std::size_t dim() const { return d.rows(); }
};

std::size_t homology_rank(const DiffSpace& c);

// Total complex of A -f-> B -g-> C with g∘f = ∂H + H∂ over GF(2):
// differential [[∂A,0,0],[f,∂B,0],[H,g,∂C]] on A ⊕ B ⊕ C.
// Throws std::invalid_argument if f or g is not a chain map or the
// homotopy identity fails.
DiffSpace iterated_cone(const DiffSpace& a, const DiffSpace& b, const DiffSpace& c,
                        const BitMatrix& f, const BitMatrix& g, const BitMatrix& h);

DiffSpace mapping_cone(const DiffSpace& a, const DiffSpace& b, const BitMatrix& f);

struct TriangleData {
    std::size_t dim_a = 0, dim_b = 0, dim_c = 0;
    // Optional chain-level data. When present the dims above are taken
    // to be the homology dimensions and are recomputed.
    std::optional<DiffSpace> ca, cb, cc;
    std::optional<BitMatrix> f, g, h;
};

struct TriangleVerdict {
    bool pass = false;
    bool parity_ok = false;
    bool inequalities_ok = false;
    std::optional<bool> exact;  // only with chain-level data
    std::string failed;         // first failed condition, empty on pass
};

TriangleVerdict check_exact_triangle(const TriangleData& t);

}  // namespace pf
