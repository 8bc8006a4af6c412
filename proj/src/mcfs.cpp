#include "cibi/mcfs.hpp"

#include "cibi/error.hpp"
#include "cibi/kernels.hpp"

#include <limits>
#include <string>

namespace cibi::mcfs {

using binmat::BitVector;

std::uint64_t HashSpec::max_counter() const noexcept {
    if (out_bits >= 64)
        return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t(1) << out_bits;
}

HashSpec hash_spec_for(const niederreiter::PublicKey& pk) {
    return {pk.redundancy(), kDomainSyndrome};
}

BitVector hash_to_syndrome(const HashSpec& spec, ByteView msg, std::uint64_t counter) {
    if (counter == 0 || counter > spec.max_counter())
        throw Error(Errc::RangeError, "counter " + std::to_string(counter) + " outside {1..2^(n-k)}");
    if (spec.out_bits == 0 || spec.out_bits > 256)
        throw Error(Errc::ParameterError, "hash output must be 1..256 bits");
    const Digest d = Sha256()
                         .update_u8(spec.domain_sep)
                         .update_u64_be(std::uint64_t(msg.size()))
                         .update(msg)
                         .update_u64_be(counter)
                         .finish();
    BitVector out(spec.out_bits);
    for (std::size_t j = 0; j < spec.out_bits; ++j)
        if ((d[j / 8] >> (7 - j % 8)) & 1U)
            out.set(j);
    return out;
}

std::uint64_t default_retry_cap(unsigned t) {
    std::uint64_t fact = 1;
    for (unsigned i = 2; i <= t; ++i)
        fact *= i;
    return 1000 * fact;
}

SignResult sign(const niederreiter::SecretKey& sk, const HashSpec& spec, ByteView msg, Rng& rng,
                std::uint64_t retry_cap) {
    if (retry_cap == 0)
        retry_cap = default_retry_cap(sk.code.t());
    // Attempt a draws its counter from its own stream, so serial and parallel
    // searches pick the same winner.
    const Rng attempts(rng.next_seed());
    auto counter_of = [&](std::uint64_t a) { return 1 + attempts.fork(a).uniform_below(spec.max_counter()); };

    const kernels::Attempt<BitVector> attempt = [&](std::uint64_t a) -> std::optional<BitVector> {
        const BitVector s = hash_to_syndrome(spec, msg, counter_of(a));
        return goppa::try_decode(sk.code, binmat::mat_vec_mul(sk.q_inv, s));
    };
    auto found = kernels::first_success<BitVector>(retry_cap, attempt);
    if (!found)
        throw Error(Errc::RetryLimitExceeded, "no decodable counter in " + std::to_string(retry_cap) + " attempts");
    return {{counter_of(found->index), binmat::apply_permutation(sk.p_inv, found->value)}, found->index + 1};
}

bool verify(const niederreiter::PublicKey& pk, const HashSpec& spec, ByteView msg, const Signature& sig) {
    if (sig.x.size() != pk.n() || sig.x.weight() > pk.t)
        return false;
    if (sig.counter == 0 || sig.counter > spec.max_counter() || spec.out_bits != pk.redundancy())
        return false;
    return binmat::mat_vec_mul(pk.h_tilde, sig.x) == hash_to_syndrome(spec, msg, sig.counter);
}

} // namespace cibi::mcfs
