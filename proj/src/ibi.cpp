#include "cibi/ibi.hpp"

#include "cibi/codec.hpp"
#include "cibi/error.hpp"

#include <thread>

namespace cibi::ibi {

using binmat::BitVector;

namespace {

constexpr std::size_t kMaxIdentityBytes = 1 << 16;

[[noreturn]] void reject_and_throw(wire::Channel& ch, const std::string& why) {
    try {
        ch.send({wire::MsgType::Result, Bytes{0}});
    } catch (const Error&) {
    }
    throw Error(Errc::ProtocolViolation, why);
}

} // namespace

stern::SternParams MasterPublicKey::stern_params(unsigned rounds_override) const {
    stern::SternParams p;
    p.h_tilde = std::shared_ptr<const binmat::BitMatrix>(pk, &pk->h_tilde);
    p.t = pk->t;
    p.rounds = rounds_override ? rounds_override : rounds;
    return p;
}

MasterPublicKey make_master_public_key(niederreiter::PublicKey pk, unsigned rounds) {
    if (rounds == 0)
        throw Error(Errc::ParameterError, "rounds must be at least 1");
    MasterPublicKey mpk;
    mpk.hash = mcfs::hash_spec_for(pk);
    mpk.pk = std::make_shared<const niederreiter::PublicKey>(std::move(pk));
    mpk.rounds = rounds;
    return mpk;
}

MasterKeyPair master_keygen(unsigned m, unsigned t, unsigned rounds, Rng& rng) {
    auto kp = niederreiter::keygen(m, t, rng);
    return {make_master_public_key(std::move(kp.pk), rounds), MasterSecretKey{std::move(kp.sk)}};
}

BitVector derive_identifier(const MasterPublicKey& mpk, ByteView id, std::uint64_t j) {
    return mcfs::hash_to_syndrome(mpk.hash, id, j);
}

bool user_key_valid(const MasterPublicKey& mpk, ByteView id, const UserSecretKey& usk) {
    if (usk.s.size() != mpk.n() || usk.w > mpk.t() || usk.s.weight() != usk.w)
        return false;
    if (usk.j == 0 || usk.j > mpk.hash.max_counter())
        return false;
    return binmat::mat_vec_mul(mpk.pk->h_tilde, usk.s) == derive_identifier(mpk, id, usk.j);
}

ExtractResult extract_user_key(const MasterSecretKey& msk, const MasterPublicKey& mpk, ByteView id, Rng& rng,
                               std::uint64_t retry_cap) {
    const auto res = mcfs::sign(msk.sk, mpk.hash, id, rng, retry_cap);
    ExtractResult out;
    out.usk.s = res.sig.x;
    out.usk.j = res.sig.counter;
    out.usk.w = unsigned(res.sig.x.weight());
    out.attempts = res.attempts;
    if (!user_key_valid(mpk, id, out.usk))
        throw Error(Errc::ParameterError, "master secret key does not match the public key");
    return out;
}

// ---------------------------------------------------------------------------

Bytes encode_hello(const Hello& h) {
    codec::ByteWriter w;
    w.blob(h.id);
    w.u64(h.j);
    w.u16(std::uint16_t(h.w));
    return std::move(w).bytes();
}

Hello decode_hello(ByteView b) {
    codec::ByteReader r(b);
    Hello h;
    h.id = r.blob(kMaxIdentityBytes);
    h.j = r.u64();
    h.w = r.u16();
    r.expect_done();
    return h;
}

bool prove_identity(wire::Channel& ch, const MasterPublicKey& mpk, ByteView id, const UserSecretKey& usk, Rng& rng) {
    ch.send({wire::MsgType::Hello, encode_hello({Bytes(id.begin(), id.end()), usk.j, usk.w})});
    return stern::prover_rounds(ch, mpk.stern_params(), stern::SternSecret{usk.s}, rng);
}

IdentifyOutcome verify_identity(wire::Channel& ch, const MasterPublicKey& mpk, Rng& rng, unsigned rounds,
                                std::optional<Bytes> expected_id) {
    IdentifyOutcome out;
    const wire::WireMessage first = ch.receive();
    if (first.type != wire::MsgType::Hello)
        reject_and_throw(ch, std::string("expected HELLO, got ") + wire::msg_type_name(first.type));
    try {
        out.hello = decode_hello(first.payload);
    } catch (const Error& e) {
        reject_and_throw(ch, std::string("malformed HELLO: ") + e.what());
    }
    const Hello& h = out.hello;
    if (h.w > mpk.t())
        reject_and_throw(ch, "declared weight exceeds t");
    if (h.j == 0 || h.j > mpk.hash.max_counter())
        reject_and_throw(ch, "counter j out of range");
    if (expected_id && *expected_id != h.id)
        reject_and_throw(ch, "HELLO names an unexpected identity");

    const stern::SternParams params = mpk.stern_params(rounds);
    const stern::Statement st{derive_identifier(mpk, h.id, h.j), h.w};
    out.session = stern::verifier_rounds(ch, params, st, params.rounds, rng);
    return out;
}

IdentifyOutcome identify(const MasterPublicKey& mpk, const UserSecretKey& usk, ByteView claimed_id, Rng& prover_rng,
                         Rng& verifier_rng, unsigned rounds) {
    auto [prover_end, verifier_end] = wire::MemoryChannel::make_pair();
    std::exception_ptr prover_error;
    std::thread prover([&, end = prover_end.get()] {
        try {
            prove_identity(*end, mpk, claimed_id, usk, prover_rng);
        } catch (...) {
            prover_error = std::current_exception();
        }
    });
    IdentifyOutcome out;
    try {
        out = verify_identity(*verifier_end, mpk, verifier_rng, rounds);
    } catch (...) {
        verifier_end->close();
        prover.join();
        throw;
    }
    prover.join();
    if (prover_error)
        std::rethrow_exception(prover_error);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<stern::Challenge> fs_challenges(ByteView id, std::uint64_t j, unsigned w, ByteView all_commitments,
                                            ByteView msg, std::size_t rounds) {
    Sha256 prefix;
    prefix.update_u8(kDomainFiatShamir)
        .update_u64_be(id.size())
        .update(id)
        .update_u64_be(j)
        .update_u16_be(std::uint16_t(w))
        .update(all_commitments)
        .update_u64_be(msg.size())
        .update(msg);

    std::vector<stern::Challenge> out;
    out.reserve(rounds);
    for (std::uint64_t block = 0; out.size() < rounds; ++block) {
        Sha256 h = prefix;
        const Digest d = h.update_u64_be(block).finish();
        for (std::uint8_t byte : d) {
            if (byte >= 252)
                continue;
            out.push_back({std::uint8_t(byte % 3)});
            if (out.size() == rounds)
                break;
        }
    }
    return out;
}

Bytes concat_commitments(const std::vector<stern::Commitments>& c) {
    Bytes out;
    out.reserve(96 * c.size());
    for (const auto& com : c) {
        const Bytes b = stern::encode_commitments(com);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

IbsSignature ibs_sign(const UserSecretKey& usk, const MasterPublicKey& mpk, ByteView id, ByteView msg,
                      unsigned rounds, Rng& rng) {
    if (rounds == 0)
        throw Error(Errc::ParameterError, "rounds must be at least 1");
    const stern::SternParams params = mpk.stern_params(rounds);
    const stern::SternSecret secret{usk.s};

    IbsSignature sig;
    sig.j = usk.j;
    sig.w = usk.w;
    std::vector<stern::ProverRoundState> states;
    states.reserve(rounds);
    for (unsigned r = 0; r < rounds; ++r) {
        auto [state, com] = stern::commit(params, secret, rng);
        states.push_back(std::move(state));
        sig.commitments.push_back(com);
    }
    const auto challenges = fs_challenges(id, sig.j, sig.w, concat_commitments(sig.commitments), msg, rounds);
    for (unsigned r = 0; r < rounds; ++r)
        sig.responses.push_back(states[r].respond(secret, challenges[r]));
    return sig;
}

bool ibs_verify(const MasterPublicKey& mpk, ByteView id, ByteView msg, const IbsSignature& sig) {
    const std::size_t rounds = sig.rounds();
    if (rounds == 0 || sig.responses.size() != rounds || sig.w > mpk.t())
        return false;
    if (sig.j == 0 || sig.j > mpk.hash.max_counter())
        return false;
    const stern::SternParams params = mpk.stern_params(unsigned(rounds));
    const stern::Statement st{derive_identifier(mpk, id, sig.j), sig.w};
    const auto challenges = fs_challenges(id, sig.j, sig.w, concat_commitments(sig.commitments), msg, rounds);
    for (std::size_t r = 0; r < rounds; ++r)
        if (!stern::verify_round(params, st, sig.commitments[r], challenges[r], sig.responses[r]))
            return false;
    return true;
}

} // namespace cibi::ibi
