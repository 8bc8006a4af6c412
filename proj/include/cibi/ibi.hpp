#pragma once

#include "cibi/mcfs.hpp"
#include "cibi/niederreiter.hpp"
#include "cibi/stern.hpp"

#include <memory>
#include <optional>
#include <string>

// Identity-based identification: the authority's mCFS trapdoor turns an
// identity into a Stern secret, and the verifier recomputes the matching
// public identifier from the identity and the counter j alone.
namespace cibi::ibi {

struct MasterPublicKey {
    std::shared_ptr<const niederreiter::PublicKey> pk;
    mcfs::HashSpec hash;
    unsigned rounds = 28;

    unsigned m() const noexcept { return pk->m; }
    unsigned t() const noexcept { return pk->t; }
    std::size_t n() const noexcept { return pk->n(); }
    std::size_t redundancy() const noexcept { return pk->redundancy(); }
    // Stern parameters sharing this key's matrix.
    stern::SternParams stern_params(unsigned rounds_override = 0) const;
};

struct MasterSecretKey {
    niederreiter::SecretKey sk;
};

struct MasterKeyPair {
    MasterPublicKey mpk;
    MasterSecretKey msk;
};

struct UserSecretKey {
    binmat::BitVector s;
    std::uint64_t j = 0;
    unsigned w = 0;  // weight(s), bound into the identification statement

    friend bool operator==(const UserSecretKey&, const UserSecretKey&) = default;
};

struct ExtractResult {
    UserSecretKey usk;
    std::uint64_t attempts = 0;
};

MasterKeyPair master_keygen(unsigned m, unsigned t, unsigned rounds, Rng& rng);
MasterPublicKey make_master_public_key(niederreiter::PublicKey pk, unsigned rounds);

// Throws RetryLimitExceeded as mcfs::sign does.
ExtractResult extract_user_key(const MasterSecretKey& msk, const MasterPublicKey& mpk, ByteView id, Rng& rng,
                               std::uint64_t retry_cap = 0);

binmat::BitVector derive_identifier(const MasterPublicKey& mpk, ByteView id, std::uint64_t j);

// H~ s = derive_identifier(id, j), weight(s) = w <= t.
bool user_key_valid(const MasterPublicKey& mpk, ByteView id, const UserSecretKey& usk);

// --- interactive identification -----------------------------------------

struct Hello {
    Bytes id;
    std::uint64_t j = 0;
    unsigned w = 0;

    friend bool operator==(const Hello&, const Hello&) = default;
};

Bytes encode_hello(const Hello& h);
Hello decode_hello(ByteView b);

struct IdentifyOutcome {
    Hello hello;
    stern::SessionOutcome session;
};

// Sends HELLO, then runs the Stern prover until RESULT; returns the verdict.
bool prove_identity(wire::Channel& ch, const MasterPublicKey& mpk, ByteView id, const UserSecretKey& usk, Rng& rng);

// Reads HELLO, derives the identifier and runs `rounds` Stern rounds
// (0 selects mpk.rounds). When expected_id is set, a HELLO for another
// identity is a protocol violation.
IdentifyOutcome verify_identity(wire::Channel& ch, const MasterPublicKey& mpk, Rng& rng, unsigned rounds = 0,
                                std::optional<Bytes> expected_id = std::nullopt);

// In-process session over a memory channel. The prover claims claimed_id.
IdentifyOutcome identify(const MasterPublicKey& mpk, const UserSecretKey& usk, ByteView claimed_id, Rng& prover_rng,
                         Rng& verifier_rng, unsigned rounds = 0);

// --- Fiat-Shamir signature ----------------------------------------------

// Ternary digits from SHA-256(0x03 || len id || id || j || w || commitments ||
// len msg || msg || block counter), one byte per digit, bytes >= 252 skipped.
std::vector<stern::Challenge> fs_challenges(ByteView id, std::uint64_t j, unsigned w, ByteView all_commitments,
                                            ByteView msg, std::size_t rounds);

struct IbsSignature {
    std::uint64_t j = 0;
    unsigned w = 0;
    std::vector<stern::Commitments> commitments;
    std::vector<stern::Response> responses;

    std::size_t rounds() const noexcept { return commitments.size(); }
    friend bool operator==(const IbsSignature&, const IbsSignature&) = default;
};

Bytes concat_commitments(const std::vector<stern::Commitments>& c);

IbsSignature ibs_sign(const UserSecretKey& usk, const MasterPublicKey& mpk, ByteView id, ByteView msg,
                      unsigned rounds, Rng& rng);
bool ibs_verify(const MasterPublicKey& mpk, ByteView id, ByteView msg, const IbsSignature& sig);

} // namespace cibi::ibi
