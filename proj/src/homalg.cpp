#include "pf/homalg.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace pf {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
    auto& w = data_[r * stride_ + (c >> 6)];
    auto bit = std::uint64_t{1} << (c & 63);
    if (v) w |= bit; else w &= ~bit;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    BitMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto* dst = out.row(r);
        for (std::size_t k = 0; k < cols_; ++k) {
            if (!get(r, k)) continue;
            const auto* src = o.row(k);
            for (std::size_t w = 0; w < out.stride_; ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    BitMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] ^= o.data_[i];
    return out;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

std::vector<std::string> BitMatrix::to_strings() const {
    std::vector<std::string> out(rows_, std::string(cols_, '0'));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) out[r][c] = '1';
    return out;
}

void SparseF2::normalize() {
    std::sort(entries.begin(), entries.end());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        while (j < entries.size() && entries[j] == entries[i]) ++j;
        if ((j - i) & 1) out.push_back(entries[i]);
        i = j;
    }
    entries.swap(out);
}

BitMatrix SparseF2::dense() const {
    BitMatrix m(rows, cols);
    for (auto [r, c] : entries) m.flip(r, c);
    return m;
}

SparseF2 SparseF2::from_dense(const BitMatrix& m) {
    SparseF2 s;
    s.rows = m.rows();
    s.cols = m.cols();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) s.entries.emplace_back(r, c);
    return s;
}

std::size_t rank(BitMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols(), stride = m.stride();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        std::size_t piv = r;
        while (piv < rows && !(m.row(piv)[w] & bit)) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            auto* a = m.row(piv);
            auto* b = m.row(r);
            for (std::size_t k = w; k < stride; ++k) std::swap(a[k], b[k]);
        }
        const auto* prow = m.row(r);
        for (std::size_t i = r + 1; i < rows; ++i) {
            auto* row = m.row(i);
            if (row[w] & bit)
                for (std::size_t k = w; k < stride; ++k) row[k] ^= prow[k];
        }
        ++r;
    }
    return r;
}

std::size_t rank_sparse(const SparseF2& m) {
    // column reduction with pivot table (lowest row index as pivot)
    std::vector<std::vector<std::uint32_t>> columns(m.cols);
    for (auto [r, c] : m.entries) columns[c].push_back(r);
    std::unordered_map<std::uint32_t, std::size_t> pivot_of;
    std::size_t rk = 0;
    std::vector<std::uint32_t> tmp;
    for (std::size_t c = 0; c < m.cols; ++c) {
        auto& col = columns[c];
        std::sort(col.begin(), col.end());
        // cancel duplicates
        std::vector<std::uint32_t> clean;
        for (std::size_t i = 0; i < col.size();) {
            std::size_t j = i;
            while (j < col.size() && col[j] == col[i]) ++j;
            if ((j - i) & 1) clean.push_back(col[i]);
            i = j;
        }
        col.swap(clean);
        while (!col.empty()) {
            auto it = pivot_of.find(col.front());
            if (it == pivot_of.end()) break;
            const auto& other = columns[it->second];
            tmp.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(tmp));
            col.swap(tmp);
        }
        if (!col.empty()) {
            pivot_of.emplace(col.front(), c);
            ++rk;
        }
    }
    return rk;
}

std::size_t rank(const SparseF2& m, std::size_t dense_threshold) {
    if (m.cols <= dense_threshold) return rank(m.dense());
    return rank_sparse(m);
}

void ComplexF2::validate() const {
    if (!dims.empty() && boundary.size() + 1 != dims.size())
        throw std::invalid_argument("complex: need dims.size()-1 boundary maps");
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        if (boundary[k].rows() != dims[k] || boundary[k].cols() != dims[k + 1])
            throw std::invalid_argument("complex: boundary map shape mismatch");
    }
    for (std::size_t k = 0; k + 1 < boundary.size(); ++k) {
        if (!(boundary[k] * boundary[k + 1]).is_zero())
            throw std::invalid_argument("complex: d∘d != 0");
    }
}

std::vector<std::size_t> homology_rank(const ComplexF2& c) {
    c.validate();
    std::vector<std::size_t> rk(c.boundary.size());
    for (std::size_t k = 0; k < c.boundary.size(); ++k) rk[k] = rank(c.boundary[k]);
    std::vector<std::size_t> out(c.dims.size());
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        std::size_t in = k < rk.size() ? rk[k] : 0;        // image of d out of C_{k+1}
        std::size_t outr = k > 0 ? rk[k - 1] : 0;          // rank of d on C_k
        out[k] = c.dims[k] - outr - in;
    }
    return out;
}

std::size_t homology_rank(const DiffSpace& c) {
    if (c.d.rows() != c.d.cols()) throw std::invalid_argument("differential must be square");
    if (!(c.d * c.d).is_zero()) throw std::invalid_argument("d∘d != 0");
    return c.dim() - 2 * rank(c.d);
}

namespace {

void paste(BitMatrix& dst, const BitMatrix& src, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < src.rows(); ++r)
        for (std::size_t c = 0; c < src.cols(); ++c)
            if (src.get(r, c)) dst.set(r0 + r, c0 + c);
}

void require_shape(const BitMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols)
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

DiffSpace mapping_cone(const DiffSpace& a, const DiffSpace& b, const BitMatrix& f) {
    require_shape(f, b.dim(), a.dim(), "cone map");
    if (!(f * a.d + b.d * f).is_zero()) throw std::invalid_argument("cone: f is not a chain map");
    DiffSpace out{BitMatrix(a.dim() + b.dim(), a.dim() + b.dim())};
    paste(out.d, a.d, 0, 0);
    paste(out.d, f, a.dim(), 0);
    paste(out.d, b.d, a.dim(), a.dim());
    return out;
}

DiffSpace iterated_cone(const DiffSpace& a, const DiffSpace& b, const DiffSpace& c,
                        const BitMatrix& f, const BitMatrix& g, const BitMatrix& h) {
    require_shape(f, b.dim(), a.dim(), "f");
    require_shape(g, c.dim(), b.dim(), "g");
    require_shape(h, c.dim(), a.dim(), "H");
    if (!(f * a.d + b.d * f).is_zero()) throw std::invalid_argument("iterated cone: f is not a chain map");
    if (!(g * b.d + c.d * g).is_zero()) throw std::invalid_argument("iterated cone: g is not a chain map");
    if (!(g * f + c.d * h + h * a.d).is_zero())
        throw std::invalid_argument("iterated cone: g∘f != ∂H + H∂");
    const std::size_t n = a.dim() + b.dim() + c.dim();
    DiffSpace out{BitMatrix(n, n)};
    paste(out.d, a.d, 0, 0);
    paste(out.d, f, a.dim(), 0);
    paste(out.d, b.d, a.dim(), a.dim());
    paste(out.d, h, a.dim() + b.dim(), 0);
    paste(out.d, g, a.dim() + b.dim(), a.dim());
    paste(out.d, c.d, a.dim() + b.dim(), a.dim() + b.dim());
    if (!(out.d * out.d).is_zero()) throw std::logic_error("iterated cone: D∘D != 0");
    return out;
}

TriangleVerdict check_exact_triangle(const TriangleData& t) {
    TriangleVerdict v;
    std::size_t da = t.dim_a, db = t.dim_b, dc = t.dim_c;
    const bool chain = t.ca && t.cb && t.cc && t.f && t.g && t.h;
    if (chain) {
        da = homology_rank(*t.ca);
        db = homology_rank(*t.cb);
        dc = homology_rank(*t.cc);
    }
    v.parity_ok = ((da + db + dc) % 2) == 0;
    v.inequalities_ok = da <= db + dc && db <= da + dc && dc <= da + db;
    if (!v.parity_ok) v.failed = "parity";
    else if (!v.inequalities_ok) v.failed = "inequality";
    v.pass = v.parity_ok && v.inequalities_ok;
    if (chain) {
        auto tot = iterated_cone(*t.ca, *t.cb, *t.cc, *t.f, *t.g, *t.h);
        v.exact = homology_rank(tot) == 0;
        if (!*v.exact && v.failed.empty()) v.failed = "exactness";
        v.pass = v.pass && *v.exact;
    }
    return v;
}

}  // namespace pf
