#include "cibi/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace cibi {

struct Sha256::Ctx {
    EVP_MD_CTX* md = nullptr;
    ~Ctx() { EVP_MD_CTX_free(md); }
};

Sha256::Sha256() : ctx_(std::make_unique<Ctx>()) {
    ctx_->md = EVP_MD_CTX_new();
    if (!ctx_->md || EVP_DigestInit_ex(ctx_->md, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: EVP init failed");
}

Sha256::Sha256(const Sha256& other) : ctx_(std::make_unique<Ctx>()) {
    ctx_->md = EVP_MD_CTX_new();
    if (!ctx_->md || EVP_MD_CTX_copy_ex(ctx_->md, other.ctx_->md) != 1)
        throw std::runtime_error("sha256: EVP copy failed");
}

Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Sha256& Sha256::update(std::span<const std::uint8_t> data) {
    if (!data.empty())
        EVP_DigestUpdate(ctx_->md, data.data(), data.size());
    return *this;
}

Sha256& Sha256::update(std::string_view data) {
    if (!data.empty())
        EVP_DigestUpdate(ctx_->md, data.data(), data.size());
    return *this;
}

Sha256& Sha256::update_u8(std::uint8_t v) {
    return update(std::span<const std::uint8_t>(&v, 1));
}

Sha256& Sha256::update_u16_be(std::uint16_t v) {
    const std::uint8_t b[2] = {std::uint8_t(v >> 8), std::uint8_t(v)};
    return update(b);
}

Sha256& Sha256::update_u32_be(std::uint32_t v) {
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i)
        b[i] = std::uint8_t(v >> (24 - 8 * i));
    return update(b);
}

Sha256& Sha256::update_u64_be(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = std::uint8_t(v >> (56 - 8 * i));
    return update(b);
}

Digest Sha256::finish() {
    Digest out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_->md, out.data(), &len);
    return out;
}

Digest sha256(std::span<const std::uint8_t> data) {
    return Sha256().update(data).finish();
}

} // namespace cibi
