#include "cibi/binmat.hpp"

#include "cibi/error.hpp"
#include "cibi/kernels.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace cibi::binmat {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw Error(Errc::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

Word tail_mask(std::size_t len) {
    const std::size_t r = len % kWordBits;
    return r == 0 ? ~Word(0) : (Word(1) << r) - 1;
}

} // namespace

BitVector BitVector::random(std::size_t len, Rng& rng) {
    BitVector v(len);
    for (auto& w : v.w_)
        w = rng.next_u64();
    if (!v.w_.empty())
        v.w_.back() &= tail_mask(len);
    return v;
}

BitVector BitVector::random_weight(std::size_t len, std::size_t weight, Rng& rng) {
    if (weight > len)
        throw Error(Errc::WeightError, "weight exceeds length");
    // Partial Fisher-Yates over positions.
    std::vector<std::size_t> pos(len);
    std::iota(pos.begin(), pos.end(), std::size_t(0));
    BitVector v(len);
    for (std::size_t i = 0; i < weight; ++i) {
        const std::size_t j = i + std::size_t(rng.uniform_below(len - i));
        std::swap(pos[i], pos[j]);
        v.set(pos[i]);
    }
    return v;
}

BitVector BitVector::from_support(std::size_t len, std::span<const std::size_t> positions) {
    BitVector v(len);
    for (std::size_t p : positions) {
        if (p >= len)
            throw Error(Errc::DimensionMismatch, "support position out of range");
        v.set(p);
    }
    return v;
}

BitVector BitVector::from_bytes(std::size_t len, std::span<const std::uint8_t> bytes) {
    require_same_length(bytes.size(), byte_length(len), "BitVector::from_bytes");
    BitVector v(len);
    for (std::size_t i = 0; i < bytes.size(); ++i)
        v.w_[i / 8] |= Word(bytes[i]) << (8 * (i % 8));
    if (!v.w_.empty())
        v.w_.back() &= tail_mask(len);
    return v;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
    std::vector<std::uint8_t> out(byte_length(len_));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::uint8_t(w_[i / 8] >> (8 * (i % 8)));
    return out;
}

std::size_t BitVector::weight() const noexcept {
    std::size_t s = 0;
    for (Word w : w_)
        s += std::size_t(std::popcount(w));
    return s;
}

bool BitVector::is_zero() const noexcept {
    return std::all_of(w_.begin(), w_.end(), [](Word w) { return w == 0; });
}

std::vector<std::size_t> BitVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < w_.size(); ++k)
        for (Word w = w_[k]; w; w &= w - 1)
            out.push_back(k * kWordBits + std::size_t(std::countr_zero(w)));
    return out;
}

bool BitVector::dot(const BitVector& other) const {
    require_same_length(len_, other.len_, "dot");
    Word acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k)
        acc ^= w_[k] & other.w_[k];
    return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    require_same_length(len_, other.len_, "xor");
    for (std::size_t k = 0; k < w_.size(); ++k)
        w_[k] ^= other.w_[k];
    return *this;
}

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::uint32_t x : map_) {
        if (x >= map_.size() || seen[x])
            throw Error(Errc::ParameterError, "permutation map is not a bijection");
        seen[x] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> m(n);
    std::iota(m.begin(), m.end(), 0U);
    Permutation p;
    p.map_ = std::move(m);
    return p;
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
    Permutation p = identity(n);
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t j = std::size_t(rng.uniform_below(i + 1));
        std::swap(p.map_[i], p.map_[j]);
    }
    return p;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.map_.resize(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i)
        inv.map_[map_[i]] = std::uint32_t(i);
    return inv;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    require_same_length(p.size(), q.size(), "compose");
    std::vector<std::uint32_t> m(p.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = p[q[i]];
    return Permutation(std::move(m));
}

BitVector apply_permutation(const Permutation& p, const BitVector& v) {
    require_same_length(p.size(), v.size(), "apply_permutation");
    BitVector out(v.size());
    const auto words = v.words();
    for (std::size_t k = 0; k < words.size(); ++k)
        for (Word w = words[k]; w; w &= w - 1)
            out.set(p[k * kWordBits + std::size_t(std::countr_zero(w))]);
    return out;
}

// ---------------------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    const Word mask = tail_mask(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = m.row_span(r);
        for (auto& w : row)
            w = rng.next_u64();
        if (!row.empty())
            row.back() &= mask;
    }
    return m;
}

BitMatrix BitMatrix::from_permutation(const Permutation& p) {
    BitMatrix m(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        m.set(p[i], i);
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy_n(row_span(r).begin(), stride_, v.words().begin());
    return v;
}

BitVector BitMatrix::column(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v.set(r, get(r, c));
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    require_same_length(v.size(), cols_, "set_row");
    std::copy_n(v.words().begin(), stride_, row_span(r).begin());
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) noexcept {
    Word* d = data_.data() + dst * stride_;
    const Word* s = data_.data() + src * stride_;
    for (std::size_t k = 0; k < stride_; ++k)
        d[k] ^= s[k];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b)
        return;
    std::swap_ranges(data_.begin() + std::ptrdiff_t(a * stride_), data_.begin() + std::ptrdiff_t((a + 1) * stride_),
                     data_.begin() + std::ptrdiff_t(b * stride_));
}

BitMatrix BitMatrix::gather_columns(std::span<const std::uint32_t> source_of_column) const {
    BitMatrix out(rows_, source_of_column.size());
    for (std::size_t c = 0; c < source_of_column.size(); ++c) {
        const std::size_t src = source_of_column[c];
        if (src >= cols_)
            throw Error(Errc::DimensionMismatch, "gather_columns: source column out of range");
        for (std::size_t r = 0; r < rows_; ++r)
            if (get(r, src))
                out.set(r, c);
    }
    return out;
}

// ---------------------------------------------------------------------------

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
    require_same_length(m.cols(), v.size(), "mat_vec_mul");
    return kernels::mat_vec(m, v);
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    require_same_length(a.cols(), b.rows(), "mat_mul");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row_span(r);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.get(r, k))
                continue;
            const auto src = b.row_span(k);
            for (std::size_t w = 0; w < dst.size(); ++w)
                dst[w] ^= src[w];
        }
    }
    return out;
}

Echelon row_reduce(const BitMatrix& m, const BitVector& rhs, std::span<const std::size_t> column_order,
                   std::size_t max_pivots) {
    require_same_length(m.rows(), rhs.size(), "row_reduce");
    Echelon e{m, rhs, {}};
    std::size_t next_row = 0;
    for (std::size_t c : column_order) {
        if (next_row == m.rows() || e.pivot_cols.size() >= max_pivots)
            break;
        std::size_t piv = next_row;
        while (piv < m.rows() && !e.reduced.get(piv, c))
            ++piv;
        if (piv == m.rows())
            continue;
        e.reduced.swap_rows(piv, next_row);
        {
            const bool a = e.rhs.get(piv), b = e.rhs.get(next_row);
            e.rhs.set(piv, b);
            e.rhs.set(next_row, a);
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != next_row && e.reduced.get(r, c)) {
                e.reduced.xor_row_into(next_row, r);
                if (e.rhs.get(next_row))
                    e.rhs.flip(r);
            }
        }
        e.pivot_cols.push_back(c);
        ++next_row;
    }
    return e;
}

namespace {

std::vector<std::size_t> natural_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));
    return order;
}

} // namespace

std::size_t rank(const BitMatrix& m) {
    return row_reduce(m, BitVector(m.rows()), natural_order(m.cols())).pivot_cols.size();
}

BitMatrix mat_invert(const BitMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(Errc::DimensionMismatch, "mat_invert: matrix is not square");
    const std::size_t n = m.rows();
    BitMatrix a = m;
    BitMatrix inv = BitMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && !a.get(piv, c))
            ++piv;
        if (piv == n)
            throw Error(Errc::Singular, "matrix has rank < " + std::to_string(n));
        a.swap_rows(piv, c);
        inv.swap_rows(piv, c);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != c && a.get(r, c)) {
                a.xor_row_into(c, r);
                inv.xor_row_into(c, r);
            }
        }
    }
    return inv;
}

BitMatrix random_nonsingular(std::size_t dim, Rng& rng, std::size_t* attempts) {
    if (dim == 0)
        throw Error(Errc::ParameterError, "random_nonsingular: dim must be >= 1");
    for (std::size_t k = 1;; ++k) {
        BitMatrix m = BitMatrix::random(dim, dim, rng);
        if (rank(m) == dim) {
            if (attempts)
                *attempts = k;
            return m;
        }
    }
}

BitVector gaussian_solve(const BitMatrix& m, const BitVector& y) {
    const Echelon e = row_reduce(m, y, natural_order(m.cols()));
    for (std::size_t r = e.pivot_cols.size(); r < m.rows(); ++r)
        if (e.rhs.get(r))
            throw Error(Errc::Inconsistent, "linear system has no solution");
    BitVector x(m.cols());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
        x.set(e.pivot_cols[r], e.rhs.get(r));
    return x;
}

} // namespace cibi::binmat
