#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace cibi {

using Seed256 = std::array<std::uint8_t, 32>;

// ChaCha20 keystream generator. Deterministic for a given key, which is what
// the golden transcripts rely on; from_os_entropy() is for production use.
class Rng {
public:
    explicit Rng(const Seed256& key);
    explicit Rng(std::uint64_t seed);

    static Rng from_os_entropy();

    void fill(std::span<std::uint8_t> out);
    std::uint64_t next_u64();
    std::uint8_t next_byte();

    // Uniform in [0, bound), bound > 0, by rejection.
    std::uint64_t uniform_below(std::uint64_t bound);

    Seed256 next_seed();

    // Independent stream derived from this generator's key and `stream`;
    // does not advance this generator.
    Rng fork(std::uint64_t stream) const;

private:
    void refill();

    Seed256 key_;
    std::uint64_t block_ = 0;
    std::vector<std::uint8_t> buf_;
    std::size_t pos_ = 0;
};

} // namespace cibi
