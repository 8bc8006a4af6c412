#pragma once

#include "cibi/binmat.hpp"
#include "cibi/bytes.hpp"
#include "cibi/channel.hpp"
#include "cibi/codec.hpp"
#include "cibi/hash.hpp"
#include "cibi/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

// Stern's three-pass zero-knowledge identification over a public
// parity-check matrix H~.
//
// Commitments for a round with y, sigma and secret s:
//   c1 = H(enc(sigma) || enc(H~ y)),  c2 = H(enc(sigma(y))),  c3 = H(enc(sigma(y ^ s)))
// where enc(sigma) is n 16-bit big-endian images, vectors are packed
// LSB-first, and H is SHA-256 prefixed with kDomainCommitment. sigma is
// expanded from a 32-byte seed, and the seed is what a response reveals.
namespace cibi::stern {

struct SternParams {
    std::shared_ptr<const binmat::BitMatrix> h_tilde;
    unsigned t = 0;
    unsigned rounds = 1;

    std::size_t n() const noexcept { return h_tilde->cols(); }
    std::size_t redundancy() const noexcept { return h_tilde->rows(); }
};

// What the verifier checks against: the identifier H~ s and the declared
// weight of s.
struct Statement {
    binmat::BitVector identifier;
    unsigned weight = 0;
};

struct SternSecret {
    binmat::BitVector s;
};

struct Commitments {
    Digest c1{}, c2{}, c3{};

    friend bool operator==(const Commitments&, const Commitments&) = default;
};

struct Challenge {
    std::uint8_t b = 0;  // 0, 1 or 2

    friend bool operator==(const Challenge&, const Challenge&) = default;
};

struct RevealY {  // b = 0
    Seed256 sigma_seed{};
    binmat::BitVector y;
    friend bool operator==(const RevealY&, const RevealY&) = default;
};
struct RevealMasked {  // b = 1
    Seed256 sigma_seed{};
    binmat::BitVector y_xor_s;
    friend bool operator==(const RevealMasked&, const RevealMasked&) = default;
};
struct RevealPermuted {  // b = 2
    binmat::BitVector sigma_y;
    binmat::BitVector sigma_s;
    friend bool operator==(const RevealPermuted&, const RevealPermuted&) = default;
};

using Response = std::variant<RevealY, RevealMasked, RevealPermuted>;

inline std::uint8_t challenge_of(const Response& r) noexcept {
    return std::uint8_t(r.index());
}

struct RoundTranscript {
    Commitments commitments;
    Challenge challenge;
    Response response;
    bool accepted = false;

    friend bool operator==(const RoundTranscript&, const RoundTranscript&) = default;
};

// Hash primitives, exposed for the harness' cheating provers.
binmat::Permutation permutation_from_seed(const Seed256& seed, std::size_t n);
Digest commit_c1(const binmat::Permutation& sigma, const binmat::BitVector& syndrome);
Digest commit_vector(const binmat::BitVector& v);

// Single-use prover state for one round.
class ProverRoundState {
public:
    ProverRoundState(binmat::BitVector y, const Seed256& sigma_seed, const SternSecret& secret);

    const binmat::BitVector& y() const noexcept { return y_; }
    const binmat::Permutation& sigma() const noexcept { return sigma_; }
    const Seed256& sigma_seed() const noexcept { return seed_; }
    bool consumed() const noexcept { return consumed_; }

    // Throws StateReuse on a second call, RangeError for b > 2.
    Response respond(const SternSecret& secret, Challenge ch);

private:
    binmat::BitVector y_;
    Seed256 seed_;
    binmat::Permutation sigma_;
    binmat::BitVector sigma_y_;
    binmat::BitVector sigma_s_;
    bool consumed_ = false;
};

std::pair<ProverRoundState, Commitments> commit(const SternParams& params, const SternSecret& secret, Rng& rng);

bool verify_round(const SternParams& params, const Statement& st, const Commitments& com, Challenge ch,
                  const Response& resp);

// Uniform over {0,1,2}: one byte at a time, reject >= 252, reduce mod 3.
Challenge draw_challenge(Rng& rng);

// Smallest k with (2/3)^k <= beta; RangeError unless 0 < beta < 1.
unsigned rounds_for_security(double beta);

// --- byte encodings -------------------------------------------------------

Bytes encode_commitments(const Commitments& c);
Commitments decode_commitments(ByteView b);

// b=0: 0x00 || seed || y;  b=1: 0x01 || seed || y^s;
// b=2: 0x02 || sigma(y) || count u16 || ascending u16 positions of sigma(s).
Bytes encode_response(const Response& r);
// Strict: throws MalformedEnvelope/TruncatedInput on non-canonical input.
Response decode_response(ByteView b, std::size_t n);
// Streaming forms of the above, for records holding several responses.
void write_response(codec::ByteWriter& w, const Response& r);
Response read_response(codec::ByteReader& r, std::size_t n);

// --- sessions over a channel ----------------------------------------------

struct SessionOutcome {
    std::vector<RoundTranscript> rounds;
    bool decision = false;
};

// Prover loop: COMMIT, then answer each CHALLENGE, until RESULT arrives.
// The verifier ends a session by answering a COMMIT with RESULT.
bool prover_rounds(wire::Channel& ch, const SternParams& params, const SternSecret& secret, Rng& rng);

// Verifier loop for `rounds` rounds; sends RESULT. Throws ProtocolViolation
// (after sending a reject RESULT) on out-of-order or malformed messages.
SessionOutcome verifier_rounds(wire::Channel& ch, const SternParams& params, const Statement& st, unsigned rounds,
                               Rng& rng);

// Runs prover and verifier in-process over a memory channel.
SessionOutcome run_identification(const SternParams& params, const SternSecret& secret, const Statement& st,
                                  Rng& prover_rng, Rng& verifier_rng);

} // namespace cibi::stern
