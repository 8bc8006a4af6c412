#include "cibi/stern.hpp"

#include "cibi/codec.hpp"
#include "cibi/error.hpp"

#include <cmath>
#include <thread>

namespace cibi::stern {

using binmat::BitVector;
using binmat::Permutation;

binmat::Permutation permutation_from_seed(const Seed256& seed, std::size_t n) {
    Rng expand(Sha256().update_u8(kDomainPermutationSeed).update(seed).finish());
    return Permutation::random(n, expand);
}

Digest commit_c1(const Permutation& sigma, const BitVector& syndrome) {
    Bytes images(2 * sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        images[2 * i] = std::uint8_t(sigma[i] >> 8);
        images[2 * i + 1] = std::uint8_t(sigma[i]);
    }
    return Sha256().update_u8(kDomainCommitment).update(images).update(syndrome.to_bytes()).finish();
}

Digest commit_vector(const BitVector& v) {
    return Sha256().update_u8(kDomainCommitment).update(v.to_bytes()).finish();
}

ProverRoundState::ProverRoundState(BitVector y, const Seed256& sigma_seed, const SternSecret& secret)
    : y_(std::move(y)), seed_(sigma_seed), sigma_(permutation_from_seed(sigma_seed, y_.size())),
      sigma_y_(binmat::apply_permutation(sigma_, y_)), sigma_s_(binmat::apply_permutation(sigma_, secret.s)) {}

Response ProverRoundState::respond(const SternSecret& secret, Challenge ch) {
    if (consumed_)
        throw Error(Errc::StateReuse, "round state already answered a challenge");
    if (ch.b > 2)
        throw Error(Errc::RangeError, "challenge must be 0, 1 or 2");
    consumed_ = true;
    switch (ch.b) {
    case 0: return RevealY{seed_, y_};
    case 1: return RevealMasked{seed_, y_ ^ secret.s};
    default: return RevealPermuted{sigma_y_, sigma_s_};
    }
}

std::pair<ProverRoundState, Commitments> commit(const SternParams& params, const SternSecret& secret, Rng& rng) {
    if (secret.s.size() != params.n())
        throw Error(Errc::DimensionMismatch, "secret length must be n");
    BitVector y = BitVector::random(params.n(), rng);
    const Seed256 seed = rng.next_seed();
    const BitVector hy = binmat::mat_vec_mul(*params.h_tilde, y);
    ProverRoundState state(std::move(y), seed, secret);
    Commitments c;
    c.c1 = commit_c1(state.sigma(), hy);
    c.c2 = commit_vector(binmat::apply_permutation(state.sigma(), state.y()));
    c.c3 = commit_vector(binmat::apply_permutation(state.sigma(), state.y() ^ secret.s));
    return {std::move(state), c};
}

bool verify_round(const SternParams& params, const Statement& st, const Commitments& com, Challenge ch,
                  const Response& resp) {
    const std::size_t n = params.n();
    if (ch.b > 2 || challenge_of(resp) != ch.b || st.identifier.size() != params.redundancy())
        return false;
    if (const auto* r = std::get_if<RevealY>(&resp)) {
        if (r->y.size() != n)
            return false;
        const Permutation sigma = permutation_from_seed(r->sigma_seed, n);
        return com.c1 == commit_c1(sigma, binmat::mat_vec_mul(*params.h_tilde, r->y)) &&
               com.c2 == commit_vector(binmat::apply_permutation(sigma, r->y));
    }
    if (const auto* r = std::get_if<RevealMasked>(&resp)) {
        if (r->y_xor_s.size() != n)
            return false;
        // H~ y = H~ (y ^ s) ^ H~ s
        const Permutation sigma = permutation_from_seed(r->sigma_seed, n);
        const BitVector hy = binmat::mat_vec_mul(*params.h_tilde, r->y_xor_s) ^ st.identifier;
        return com.c1 == commit_c1(sigma, hy) && com.c3 == commit_vector(binmat::apply_permutation(sigma, r->y_xor_s));
    }
    const auto& r = std::get<RevealPermuted>(resp);
    if (r.sigma_y.size() != n || r.sigma_s.size() != n)
        return false;
    return r.sigma_s.weight() == st.weight && com.c2 == commit_vector(r.sigma_y) &&
           com.c3 == commit_vector(r.sigma_y ^ r.sigma_s);
}

Challenge draw_challenge(Rng& rng) {
    for (;;) {
        const std::uint8_t b = rng.next_byte();
        if (b < 252)
            return {std::uint8_t(b % 3)};
    }
}

unsigned rounds_for_security(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw Error(Errc::RangeError, "beta must lie in (0, 1)");
    const double ratio = 2.0 / 3.0;
    auto k = unsigned(std::max(1.0, std::ceil(std::log(beta) / std::log(ratio))));
    while (k > 1 && std::pow(ratio, double(k - 1)) <= beta)
        --k;
    while (std::pow(ratio, double(k)) > beta)
        ++k;
    return k;
}

// ---------------------------------------------------------------------------

Bytes encode_commitments(const Commitments& c) {
    codec::ByteWriter w;
    w.digest(c.c1);
    w.digest(c.c2);
    w.digest(c.c3);
    return std::move(w).bytes();
}

Commitments decode_commitments(ByteView b) {
    codec::ByteReader r(b);
    Commitments c;
    c.c1 = r.digest();
    c.c2 = r.digest();
    c.c3 = r.digest();
    r.expect_done();
    return c;
}

void write_response(codec::ByteWriter& w, const Response& resp) {
    w.u8(challenge_of(resp));
    if (const auto* r = std::get_if<RevealY>(&resp)) {
        w.raw(r->sigma_seed);
        w.packed(r->y);
    } else if (const auto* r = std::get_if<RevealMasked>(&resp)) {
        w.raw(r->sigma_seed);
        w.packed(r->y_xor_s);
    } else {
        const auto& p = std::get<RevealPermuted>(resp);
        w.packed(p.sigma_y);
        const auto support = p.sigma_s.support();
        w.u16(std::uint16_t(support.size()));
        for (std::size_t pos : support)
            w.u16(std::uint16_t(pos));
    }
}

Response read_response(codec::ByteReader& r, std::size_t n) {
    const std::uint8_t tag = r.u8();
    auto seed = [&] {
        Seed256 s{};
        const auto raw = r.raw(s.size());
        std::copy(raw.begin(), raw.end(), s.begin());
        return s;
    };
    switch (tag) {
    case 0: {
        RevealY v;
        v.sigma_seed = seed();
        v.y = r.packed(n);
        return v;
    }
    case 1: {
        RevealMasked v;
        v.sigma_seed = seed();
        v.y_xor_s = r.packed(n);
        return v;
    }
    case 2: {
        RevealPermuted v;
        v.sigma_y = r.packed(n);
        const std::uint16_t count = r.u16();
        v.sigma_s = BitVector(n);
        std::size_t prev = 0;
        for (std::uint16_t i = 0; i < count; ++i) {
            const std::size_t pos = r.u16();
            if (pos >= n || (i > 0 && pos <= prev))
                throw Error(Errc::MalformedEnvelope, "support positions must be ascending and < n");
            v.sigma_s.set(pos);
            prev = pos;
        }
        return v;
    }
    default:
        throw Error(Errc::MalformedEnvelope, "unknown response tag");
    }
}

Bytes encode_response(const Response& resp) {
    codec::ByteWriter w;
    write_response(w, resp);
    return std::move(w).bytes();
}

Response decode_response(ByteView b, std::size_t n) {
    codec::ByteReader r(b);
    Response out = read_response(r, n);
    r.expect_done();
    return out;
}

// ---------------------------------------------------------------------------

namespace {

wire::WireMessage result_message(bool accept) {
    return {wire::MsgType::Result, Bytes{std::uint8_t(accept ? 1 : 0)}};
}

[[noreturn]] void violation(wire::Channel& ch, const std::string& why) {
    try {
        ch.send(result_message(false));
    } catch (const Error&) {
    }
    throw Error(Errc::ProtocolViolation, why);
}

} // namespace

bool prover_rounds(wire::Channel& ch, const SternParams& params, const SternSecret& secret, Rng& rng) {
    for (;;) {
        auto [state, com] = commit(params, secret, rng);
        ch.send({wire::MsgType::Commit, encode_commitments(com)});
        const wire::WireMessage msg = ch.receive();
        if (msg.type == wire::MsgType::Result) {
            if (msg.payload.size() != 1 || msg.payload[0] > 1)
                throw Error(Errc::ProtocolViolation, "malformed RESULT");
            return msg.payload[0] == 1;
        }
        if (msg.type != wire::MsgType::Challenge || msg.payload.size() != 1 || msg.payload[0] > 2)
            throw Error(Errc::ProtocolViolation, "expected CHALLENGE or RESULT");
        ch.send({wire::MsgType::Response, encode_response(state.respond(secret, {msg.payload[0]}))});
    }
}

SessionOutcome verifier_rounds(wire::Channel& ch, const SternParams& params, const Statement& st, unsigned rounds,
                               Rng& rng) {
    SessionOutcome out;
    out.decision = true;
    for (unsigned i = 0; i < rounds; ++i) {
        const wire::WireMessage cm = ch.receive();
        if (cm.type != wire::MsgType::Commit || cm.payload.size() != 96)
            violation(ch, std::string("round ") + std::to_string(i) + ": expected COMMIT, got " +
                              wire::msg_type_name(cm.type));
        RoundTranscript tr;
        tr.commitments = decode_commitments(cm.payload);
        tr.challenge = draw_challenge(rng);
        ch.send({wire::MsgType::Challenge, Bytes{tr.challenge.b}});

        const wire::WireMessage rm = ch.receive();
        if (rm.type != wire::MsgType::Response)
            violation(ch, std::string("round ") + std::to_string(i) + ": expected RESPONSE, got " +
                              wire::msg_type_name(rm.type));
        try {
            tr.response = decode_response(rm.payload, params.n());
        } catch (const Error& e) {
            violation(ch, std::string("malformed RESPONSE: ") + e.what());
        }
        tr.accepted = verify_round(params, st, tr.commitments, tr.challenge, tr.response);
        out.decision = out.decision && tr.accepted;
        out.rounds.push_back(std::move(tr));
    }
    // The prover opens every round with a COMMIT; the last one is answered
    // with the verdict instead of a challenge.
    const wire::WireMessage last = ch.receive();
    if (last.type != wire::MsgType::Commit)
        violation(ch, std::string("expected closing COMMIT, got ") + wire::msg_type_name(last.type));
    ch.send(result_message(out.decision));
    return out;
}

SessionOutcome run_identification(const SternParams& params, const SternSecret& secret, const Statement& st,
                                  Rng& prover_rng, Rng& verifier_rng) {
    auto [prover_end, verifier_end] = wire::MemoryChannel::make_pair();
    std::exception_ptr prover_error;
    std::thread prover([&, end = prover_end.get()] {
        try {
            prover_rounds(*end, params, secret, prover_rng);
        } catch (...) {
            prover_error = std::current_exception();
        }
    });
    SessionOutcome out;
    try {
        out = verifier_rounds(*verifier_end, params, st, params.rounds, verifier_rng);
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

} // namespace cibi::stern
