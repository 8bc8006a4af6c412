#pragma once

#include "cibi/binmat.hpp"
#include "cibi/bytes.hpp"
#include "cibi/hash.hpp"

#include <cstdint>
#include <string>

// Big-endian byte writer/reader shared by every serialized format.
namespace cibi::codec {

class ByteWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void raw(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void digest(const Digest& d) { raw(d); }
    // u32 length prefix, then the bytes.
    void blob(ByteView b);
    // u32 length in bits, then the packed bytes.
    void bitvector(const binmat::BitVector& v);
    // Packed bytes only; the reader must know the length.
    void packed(const binmat::BitVector& v);
    void matrix(const binmat::BitMatrix& m);
    // n images as 16-bit values.
    void permutation(const binmat::Permutation& p);

    const Bytes& bytes() const& noexcept { return out_; }
    Bytes bytes() && noexcept { return std::move(out_); }
    std::size_t size() const noexcept { return out_.size(); }

private:
    Bytes out_;
};

// Throws TruncatedInput when data runs out and MalformedEnvelope on
// non-canonical content (nonzero padding bits, oversized lengths).
class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView raw(std::size_t n);
    Digest digest();
    Bytes blob(std::size_t max_len);
    binmat::BitVector bitvector(std::size_t max_bits);
    binmat::BitVector packed(std::size_t bits);
    binmat::BitMatrix matrix(std::size_t max_rows, std::size_t max_cols);
    binmat::Permutation permutation(std::size_t n);

    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    bool done() const noexcept { return pos_ == data_.size(); }
    // Throws MalformedEnvelope if bytes remain.
    void expect_done() const;

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

} // namespace cibi::codec
