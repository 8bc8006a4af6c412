#include "cibi/rng.hpp"

#include "cibi/hash.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <cstring>
#include <stdexcept>

namespace cibi {

namespace {

constexpr std::size_t kBufferBytes = 4096;
constexpr std::size_t kChachaBlock = 64;

Seed256 key_from_u64(std::uint64_t seed) {
    return Sha256().update("cibi.rng.seed").update_u64_be(seed).finish();
}

} // namespace

Rng::Rng(const Seed256& key) : key_(key) {}

Rng::Rng(std::uint64_t seed) : key_(key_from_u64(seed)) {}

Rng Rng::from_os_entropy() {
    Seed256 key{};
    if (RAND_bytes(key.data(), int(key.size())) != 1)
        throw std::runtime_error("rng: OS entropy source unavailable");
    return Rng(key);
}

void Rng::refill() {
    // IV layout for EVP_chacha20: 32-bit little-endian block counter, then a
    // 96-bit nonce. The nonce carries the high half of our block index.
    std::uint8_t iv[16] = {};
    const std::uint64_t blk = block_;
    for (int i = 0; i < 4; ++i)
        iv[i] = std::uint8_t(blk >> (8 * i));
    for (int i = 0; i < 4; ++i)
        iv[4 + i] = std::uint8_t(blk >> (32 + 8 * i));

    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    if (!ctx)
        throw std::runtime_error("rng: EVP context allocation failed");
    buf_.assign(kBufferBytes, 0);
    int len = 0;
    const bool ok = EVP_EncryptInit_ex(ctx, EVP_chacha20(), nullptr, key_.data(), iv) == 1 &&
                    EVP_EncryptUpdate(ctx, buf_.data(), &len, buf_.data(), int(buf_.size())) == 1;
    EVP_CIPHER_CTX_free(ctx);
    if (!ok)
        throw std::runtime_error("rng: chacha20 keystream failed");
    block_ += kBufferBytes / kChachaBlock;
    pos_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
    std::size_t done = 0;
    while (done < out.size()) {
        if (pos_ >= buf_.size())
            refill();
        const std::size_t take = std::min(out.size() - done, buf_.size() - pos_);
        std::memcpy(out.data() + done, buf_.data() + pos_, take);
        pos_ += take;
        done += take;
    }
}

std::uint64_t Rng::next_u64() {
    std::uint8_t b[8];
    fill(b);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

std::uint8_t Rng::next_byte() {
    std::uint8_t b;
    fill(std::span<std::uint8_t>(&b, 1));
    return b;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("uniform_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold)
            return x % bound;
    }
}

Seed256 Rng::next_seed() {
    Seed256 s{};
    fill(s);
    return s;
}

Rng Rng::fork(std::uint64_t stream) const {
    return Rng(Sha256().update("cibi.rng.fork").update(key_).update_u64_be(stream).finish());
}

} // namespace cibi
