#pragma once

#include "cibi/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Dense bit-packed linear algebra over GF(2).
namespace cibi::binmat {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
}

// Coordinate i lives in bit i % 64 of word i / 64; bits past len are zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), w_(words_for(len), 0) {}

    static BitVector random(std::size_t len, Rng& rng);
    static BitVector random_weight(std::size_t len, std::size_t weight, Rng& rng);
    static BitVector from_support(std::size_t len, std::span<const std::size_t> positions);

    // Packed bytes: coordinate i is bit (i % 8) of byte i / 8 (LSB first).
    static BitVector from_bytes(std::size_t len, std::span<const std::uint8_t> bytes);
    std::vector<std::uint8_t> to_bytes() const;
    static std::size_t byte_length(std::size_t len) { return (len + 7) / 8; }

    std::size_t size() const noexcept { return len_; }
    bool get(std::size_t i) const noexcept { return (w_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool v = true) noexcept {
        const Word mask = Word(1) << (i % kWordBits);
        if (v)
            w_[i / kWordBits] |= mask;
        else
            w_[i / kWordBits] &= ~mask;
    }
    void flip(std::size_t i) noexcept { w_[i / kWordBits] ^= Word(1) << (i % kWordBits); }

    std::size_t weight() const noexcept;
    bool is_zero() const noexcept;
    std::vector<std::size_t> support() const;

    // Parity of the AND; lengths must agree.
    bool dot(const BitVector& other) const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::span<const Word> words() const noexcept { return w_; }
    std::span<Word> words() noexcept { return w_; }

private:
    std::size_t len_ = 0;
    std::vector<Word> w_;
};

// Bijection on [0, n); map[i] is the image of position i.
class Permutation {
public:
    Permutation() = default;
    // Throws ParameterError if `map` is not a bijection.
    explicit Permutation(std::vector<std::uint32_t> map);

    static Permutation identity(std::size_t n);
    // Fisher-Yates.
    static Permutation random(std::size_t n, Rng& rng);

    std::size_t size() const noexcept { return map_.size(); }
    std::uint32_t operator[](std::size_t i) const noexcept { return map_[i]; }
    std::span<const std::uint32_t> map() const noexcept { return map_; }

    Permutation inverse() const;
    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint32_t> map_;
};

// (p o q)(i) = p[q[i]], i.e. apply q first.
Permutation compose(const Permutation& p, const Permutation& q);

// out[p[i]] = v[i]. Throws DimensionMismatch.
BitVector apply_permutation(const Permutation& p, const BitVector& v);

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);
    // Matrix M with M * v = apply_permutation(p, v).
    static BitMatrix from_permutation(const Permutation& p);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t row_words() const noexcept { return stride_; }

    bool get(std::size_t r, std::size_t c) const noexcept {
        return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool v = true) noexcept {
        const Word mask = Word(1) << (c % kWordBits);
        Word& w = data_[r * stride_ + c / kWordBits];
        w = v ? (w | mask) : (w & ~mask);
    }

    std::span<const Word> row_span(std::size_t r) const noexcept {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<Word> row_span(std::size_t r) noexcept { return {data_.data() + r * stride_, stride_}; }
    BitVector row(std::size_t r) const;
    BitVector column(std::size_t c) const;
    void set_row(std::size_t r, const BitVector& v);
    void xor_row_into(std::size_t src, std::size_t dst) noexcept;
    void swap_rows(std::size_t a, std::size_t b) noexcept;

    // Column c of the result is column source_of_column[c] of this matrix.
    BitMatrix gather_columns(std::span<const std::uint32_t> source_of_column) const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
};

// Length-rows vector, coordinate r = <row r, v>. Throws DimensionMismatch.
BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v);
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);

std::size_t rank(const BitMatrix& m);

// Gauss-Jordan. Throws Singular (or DimensionMismatch if not square).
BitMatrix mat_invert(const BitMatrix& m);

// Uniform over GL(dim, 2) by rejection; attempts (if non-null) receives the
// number of uniform draws consumed.
BitMatrix random_nonsingular(std::size_t dim, Rng& rng, std::size_t* attempts = nullptr);

// Reduced row-echelon form of [m | rhs], choosing pivot columns in the order
// given (lowest available row as pivot row). Stops after `max_pivots` pivots.
struct Echelon {
    BitMatrix reduced;
    BitVector rhs;
    std::vector<std::size_t> pivot_cols;  // pivot_cols[r] is the pivot of row r
};
Echelon row_reduce(const BitMatrix& m, const BitVector& rhs, std::span<const std::size_t> column_order,
                   std::size_t max_pivots = SIZE_MAX);

// One solution of m x = y with free variables zero. Throws Inconsistent.
BitVector gaussian_solve(const BitMatrix& m, const BitVector& y);

} // namespace cibi::binmat
