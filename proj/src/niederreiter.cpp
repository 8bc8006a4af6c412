#include "cibi/niederreiter.hpp"

#include "cibi/error.hpp"

namespace cibi::niederreiter {

using binmat::BitMatrix;
using binmat::BitVector;

SecretKey::SecretKey(BitMatrix q_, goppa::GoppaCode code_, binmat::Permutation p_)
    : q(std::move(q_)), code(std::move(code_)), p(std::move(p_)), q_inv(binmat::mat_invert(q)), p_inv(p.inverse()) {
    if (q.rows() != code.redundancy() || p.size() != code.n())
        throw Error(Errc::DimensionMismatch, "secret key components disagree on dimensions");
}

PublicKey public_key_from(const SecretKey& sk) {
    // (Q H P) e = Q H (P e), so column i of H~ is column p[i] of Q H.
    const BitMatrix qh = binmat::mat_mul(sk.q, sk.code.parity_check());
    return {qh.gather_columns(sk.p.map()), sk.code.m(), sk.code.t()};
}

KeyPair keygen(unsigned m, unsigned t, Rng& rng) {
    goppa::GoppaCode code = goppa::build_goppa(m, t, rng);
    BitMatrix q = binmat::random_nonsingular(code.redundancy(), rng);
    binmat::Permutation p = binmat::Permutation::random(code.n(), rng);
    SecretKey sk(std::move(q), std::move(code), std::move(p));
    PublicKey pk = public_key_from(sk);
    return {std::move(pk), std::move(sk)};
}

KeyPair keygen_unscrambled(unsigned m, unsigned t, Rng& rng) {
    goppa::GoppaCode code = goppa::build_goppa(m, t, rng);
    const std::size_t r = code.redundancy(), n = code.n();
    SecretKey sk(BitMatrix::identity(r), std::move(code), binmat::Permutation::identity(n));
    PublicKey pk = public_key_from(sk);
    return {std::move(pk), std::move(sk)};
}

BitVector encrypt(const PublicKey& pk, const BitVector& x) {
    if (x.size() != pk.n())
        throw Error(Errc::DimensionMismatch, "plaintext length must be n");
    if (x.weight() != pk.t)
        throw Error(Errc::WeightError, "plaintext weight must equal t");
    return binmat::mat_vec_mul(pk.h_tilde, x);
}

std::optional<BitVector> try_decrypt(const SecretKey& sk, const BitVector& y) {
    if (y.size() != sk.code.redundancy())
        throw Error(Errc::DimensionMismatch, "ciphertext length must be n-k");
    auto e = goppa::try_decode(sk.code, binmat::mat_vec_mul(sk.q_inv, y));
    if (!e)
        return std::nullopt;
    return binmat::apply_permutation(sk.p_inv, *e);
}

BitVector decrypt(const SecretKey& sk, const BitVector& y) {
    auto x = try_decrypt(sk, y);
    if (!x)
        throw Error(Errc::Undecodable, "ciphertext is not a decodable syndrome");
    return std::move(*x);
}

} // namespace cibi::niederreiter
