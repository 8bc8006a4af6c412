#pragma once

#include "cibi/binmat.hpp"
#include "cibi/bytes.hpp"
#include "cibi/hash.hpp"
#include "cibi/niederreiter.hpp"
#include "cibi/rng.hpp"

#include <cstdint>

// The modified CFS signature: hash the message with a uniformly random
// counter until the syndrome decodes under the hidden Goppa code.
namespace cibi::mcfs {

struct HashSpec {
    std::size_t out_bits = 0;  // n - k
    std::uint8_t domain_sep = kDomainSyndrome;

    // Counters range over {1, ..., max_counter()}: 2^out_bits, capped to what
    // the fixed 8-byte counter encoding can carry.
    std::uint64_t max_counter() const noexcept;

    friend bool operator==(const HashSpec&, const HashSpec&) = default;
};

HashSpec hash_spec_for(const niederreiter::PublicKey& pk);

// First out_bits bits (MSB-first) of
// SHA-256(domain_sep || len(msg) as u64 BE || msg || counter as u64 BE).
// Throws RangeError for a counter outside {1, ..., max_counter()}.
binmat::BitVector hash_to_syndrome(const HashSpec& spec, ByteView msg, std::uint64_t counter);

struct Signature {
    std::uint64_t counter = 0;
    binmat::BitVector x;  // length n, weight <= t

    friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignResult {
    Signature sig;
    std::uint64_t attempts = 0;  // decodings tried, including the successful one
};

// 1000 * t!
std::uint64_t default_retry_cap(unsigned t);

// Throws RetryLimitExceeded after retry_cap attempts (0 selects the default).
SignResult sign(const niederreiter::SecretKey& sk, const HashSpec& spec, ByteView msg, Rng& rng,
                std::uint64_t retry_cap = 0);

bool verify(const niederreiter::PublicKey& pk, const HashSpec& spec, ByteView msg, const Signature& sig);

} // namespace cibi::mcfs
