#include "cibi/codec.hpp"

#include "cibi/error.hpp"

namespace cibi::codec {

void ByteWriter::u16(std::uint16_t v) {
    out_.push_back(std::uint8_t(v >> 8));
    out_.push_back(std::uint8_t(v));
}

void ByteWriter::u32(std::uint32_t v) {
    for (int i = 3; i >= 0; --i)
        out_.push_back(std::uint8_t(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 7; i >= 0; --i)
        out_.push_back(std::uint8_t(v >> (8 * i)));
}

void ByteWriter::blob(ByteView b) {
    u32(std::uint32_t(b.size()));
    raw(b);
}

void ByteWriter::bitvector(const binmat::BitVector& v) {
    u32(std::uint32_t(v.size()));
    packed(v);
}

void ByteWriter::packed(const binmat::BitVector& v) {
    raw(v.to_bytes());
}

void ByteWriter::matrix(const binmat::BitMatrix& m) {
    u32(std::uint32_t(m.rows()));
    u32(std::uint32_t(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        packed(m.row(r));
}

void ByteWriter::permutation(const binmat::Permutation& p) {
    for (std::uint32_t x : p.map())
        u16(std::uint16_t(x));
}

// ---------------------------------------------------------------------------

ByteView ByteReader::raw(std::size_t n) {
    if (remaining() < n)
        throw Error(Errc::TruncatedInput, "need " + std::to_string(n) + " bytes, have " + std::to_string(remaining()));
    ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
}

std::uint8_t ByteReader::u8() {
    return raw(1)[0];
}

std::uint16_t ByteReader::u16() {
    const auto b = raw(2);
    return std::uint16_t((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::u32() {
    const auto b = raw(4);
    std::uint32_t v = 0;
    for (auto x : b)
        v = (v << 8) | x;
    return v;
}

std::uint64_t ByteReader::u64() {
    const auto b = raw(8);
    std::uint64_t v = 0;
    for (auto x : b)
        v = (v << 8) | x;
    return v;
}

Digest ByteReader::digest() {
    Digest d{};
    const auto b = raw(d.size());
    std::copy(b.begin(), b.end(), d.begin());
    return d;
}

Bytes ByteReader::blob(std::size_t max_len) {
    const std::uint32_t len = u32();
    if (len > max_len)
        throw Error(Errc::MalformedEnvelope, "blob length " + std::to_string(len) + " exceeds limit");
    const auto b = raw(len);
    return Bytes(b.begin(), b.end());
}

binmat::BitVector ByteReader::bitvector(std::size_t max_bits) {
    const std::uint32_t len = u32();
    if (len > max_bits)
        throw Error(Errc::MalformedEnvelope, "bit vector length exceeds limit");
    return packed(len);
}

binmat::BitVector ByteReader::packed(std::size_t bits) {
    const auto b = raw(binmat::BitVector::byte_length(bits));
    if (bits % 8 != 0 && (b.back() >> (bits % 8)) != 0)
        throw Error(Errc::MalformedEnvelope, "nonzero padding bits");
    return binmat::BitVector::from_bytes(bits, b);
}

binmat::BitMatrix ByteReader::matrix(std::size_t max_rows, std::size_t max_cols) {
    const std::uint32_t rows = u32(), cols = u32();
    if (rows > max_rows || cols > max_cols)
        throw Error(Errc::MalformedEnvelope, "matrix dimensions exceed limit");
    binmat::BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        m.set_row(r, packed(cols));
    return m;
}

binmat::Permutation ByteReader::permutation(std::size_t n) {
    std::vector<std::uint32_t> map(n);
    for (auto& x : map)
        x = u16();
    try {
        return binmat::Permutation(std::move(map));
    } catch (const Error&) {
        throw Error(Errc::MalformedEnvelope, "permutation is not a bijection");
    }
}

void ByteReader::expect_done() const {
    if (!done())
        throw Error(Errc::MalformedEnvelope, std::to_string(remaining()) + " trailing bytes");
}

} // namespace cibi::codec
