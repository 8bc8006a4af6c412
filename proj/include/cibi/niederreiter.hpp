#pragma once

#include "cibi/binmat.hpp"
#include "cibi/goppa.hpp"
#include "cibi/rng.hpp"

#include <optional>

// Niederreiter encryption with the disguised parity-check matrix H~ = Q H P.
namespace cibi::niederreiter {

struct PublicKey {
    binmat::BitMatrix h_tilde;  // (n-k) x n
    unsigned m = 0;
    unsigned t = 0;

    std::size_t n() const noexcept { return h_tilde.cols(); }
    std::size_t redundancy() const noexcept { return h_tilde.rows(); }
    std::size_t k() const noexcept { return n() - redundancy(); }
};

// P is applied as a coordinate permutation: P x = apply_permutation(p, x).
struct SecretKey {
    SecretKey(binmat::BitMatrix q, goppa::GoppaCode code, binmat::Permutation p);

    binmat::BitMatrix q;
    goppa::GoppaCode code;
    binmat::Permutation p;
    binmat::BitMatrix q_inv;
    binmat::Permutation p_inv;
};

struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};

// Q H P, computed as a column gather of Q H.
PublicKey public_key_from(const SecretKey& sk);

KeyPair keygen(unsigned m, unsigned t, Rng& rng);

// Test hook: Q = I and P = identity, so h_tilde equals the code's H.
KeyPair keygen_unscrambled(unsigned m, unsigned t, Rng& rng);

// Throws WeightError unless weight(x) = t; DimensionMismatch on length.
binmat::BitVector encrypt(const PublicKey& pk, const binmat::BitVector& x);

// Returns the weight <= t preimage under H~, or nullopt.
std::optional<binmat::BitVector> try_decrypt(const SecretKey& sk, const binmat::BitVector& y);

// As try_decrypt; throws Undecodable.
binmat::BitVector decrypt(const SecretKey& sk, const binmat::BitVector& y);

} // namespace cibi::niederreiter
