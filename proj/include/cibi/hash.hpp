#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

namespace cibi {

using Digest = std::array<std::uint8_t, 32>;

// Domain-separation bytes, one per use of the hash.
inline constexpr std::uint8_t kDomainSyndrome = 0x01;
inline constexpr std::uint8_t kDomainCommitment = 0x02;
inline constexpr std::uint8_t kDomainFiatShamir = 0x03;
inline constexpr std::uint8_t kDomainPermutationSeed = 0x04;

// Incremental SHA-256 over OpenSSL's EVP interface.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(Sha256&&) noexcept;
    Sha256& operator=(Sha256&&) noexcept;
    // Copies the running state, so a shared prefix can be hashed once.
    Sha256(const Sha256& other);
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(std::span<const std::uint8_t> data);
    Sha256& update(std::string_view data);
    Sha256& update_u8(std::uint8_t v);
    Sha256& update_u16_be(std::uint16_t v);
    Sha256& update_u32_be(std::uint32_t v);
    Sha256& update_u64_be(std::uint64_t v);
    Digest finish();

private:
    struct Ctx;
    std::unique_ptr<Ctx> ctx_;
};

Digest sha256(std::span<const std::uint8_t> data);

} // namespace cibi
