#include "cibi/envelope.hpp"
#include "cibi/error.hpp"
#include "cibi/net.hpp"

#include <doctest.h>

#include <thread>

using namespace cibi;
using binmat::BitVector;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return Errc::ParameterError;
}

struct World {
    ibi::MasterKeyPair keys;
    Bytes id = to_bytes("alice@example.org");
    ibi::UserSecretKey usk;
};

const World& world() {
    static const World w = [] {
        Rng rng(31337);
        World out{ibi::master_keygen(10, 3, 12, rng)};
        out.usk = ibi::extract_user_key(out.keys.msk, out.keys.mpk, out.id, rng).usk;
        return out;
    }();
    return w;
}

} // namespace

TEST_CASE("wire frames") {
    const wire::WireMessage msg{wire::MsgType::Challenge, Bytes{2}};
    const Bytes f = wire::encode_frame(msg);
    CHECK(f == Bytes{0x12, 0, 0, 0, 1, 2});
    CHECK(wire::decode_frame(f) == msg);
    CHECK(code_of([] { wire::decode_frame(Bytes{0x15, 0, 0, 0, 0}); }) == Errc::ProtocolViolation);
}

TEST_CASE("envelope header checks") {
    const Bytes e = envelope::seal(envelope::Kind::Params, Bytes{1, 2, 3});
    CHECK(e.size() == envelope::kHeaderSize + 3);
    CHECK(Bytes(e.begin(), e.begin() + 6) == Bytes{'C', 'I', 'B', 'I', 1, 7});
    CHECK(envelope::open(e).body == Bytes{1, 2, 3});

    Bytes bad = e;
    bad[0] = 'X';
    CHECK(code_of([&] { envelope::open(bad); }) == Errc::MalformedEnvelope);
    bad = e;
    bad[4] = 2;
    CHECK(code_of([&] { envelope::open(bad); }) == Errc::VersionMismatch);
    bad = e;
    bad[5] = 9;
    CHECK(code_of([&] { envelope::open(bad); }) == Errc::MalformedEnvelope);
    bad = e;
    bad.pop_back();
    CHECK(code_of([&] { envelope::open(bad); }) == Errc::TruncatedInput);
    bad = e;
    bad.push_back(0);
    CHECK(code_of([&] { envelope::open(bad); }) == Errc::MalformedEnvelope);
    CHECK(code_of([&] { envelope::open(Bytes{'C', 'I'}); }) == Errc::TruncatedInput);
    CHECK(code_of([&] { envelope::open_as(envelope::Kind::Mpk, e); }) == Errc::MalformedEnvelope);
}

TEST_CASE("every envelope kind round-trips canonically") {
    const World& w = world();
    const auto& mpk = w.keys.mpk;
    Rng rng(1);

    const envelope::ParamsRecord params{10, 3, 28};
    const Bytes pe = envelope::encode_params(params);
    CHECK(envelope::decode_params(pe) == params);
    CHECK(envelope::encode_params(envelope::decode_params(pe)) == pe);

    const Bytes me = envelope::encode_mpk(mpk);
    const auto mpk2 = envelope::decode_mpk(me);
    CHECK(mpk2.pk->h_tilde == mpk.pk->h_tilde);
    CHECK(mpk2.hash == mpk.hash);
    CHECK(mpk2.rounds == 12);
    CHECK(envelope::encode_mpk(mpk2) == me);
    CHECK(me.size() == envelope::kHeaderSize + 1 + 4 + 2 + 4 + 8 + 30 * 128);

    const Bytes se = envelope::encode_msk(w.keys.msk);
    const auto msk2 = envelope::decode_msk(se);
    CHECK(envelope::encode_msk(msk2) == se);
    CHECK(niederreiter::public_key_from(msk2.sk).h_tilde == mpk.pk->h_tilde);
    const BitVector x = BitVector::random_weight(1024, 3, rng);
    CHECK(niederreiter::decrypt(msk2.sk, niederreiter::encrypt(*mpk.pk, x)) == x);

    const envelope::UserKeyRecord rec{mpk, w.id, w.usk};
    const Bytes ue = envelope::encode_usk(rec);
    const auto rec2 = envelope::decode_usk(ue);
    CHECK(rec2.usk == w.usk);
    CHECK(rec2.id == w.id);
    CHECK(envelope::encode_usk(rec2) == ue);
    envelope::UserKeyRecord forged = rec;
    forged.id = to_bytes("mallory");
    CHECK(code_of([&] { envelope::decode_usk(envelope::encode_usk(forged)); }) == Errc::MalformedEnvelope);

    const auto ms = mcfs::sign(w.keys.msk.sk, mpk.hash, to_bytes("m"), rng).sig;
    const Bytes mse = envelope::encode_mcfs_sig(ms);
    CHECK(envelope::decode_mcfs_sig(mse) == ms);
    CHECK(envelope::encode_mcfs_sig(envelope::decode_mcfs_sig(mse)) == mse);

    const auto sig = ibi::ibs_sign(w.usk, mpk, w.id, to_bytes("msg"), 28, rng);
    const Bytes ie = envelope::encode_ibs_sig(sig, mpk.n());
    std::size_t n = 0;
    CHECK(envelope::decode_ibs_sig(ie, &n) == sig);
    CHECK(n == 1024);
    CHECK(envelope::encode_ibs_sig(envelope::decode_ibs_sig(ie), 1024) == ie);

    Rng pr(2), vr(3);
    const auto outcome = ibi::identify(mpk, w.usk, w.id, pr, vr, 6);
    const auto tr = envelope::transcript_of(outcome, mpk.n());
    const Bytes te = envelope::encode_transcript(tr);
    CHECK(envelope::decode_transcript(te) == tr);
    CHECK(envelope::encode_transcript(envelope::decode_transcript(te)) == te);

    for (const Bytes* e : {&pe, &me, &se, &ue, &mse, &ie, &te}) {
        const Bytes cut(e->begin(), e->end() - 1);
        CHECK(code_of([&] { envelope::open(cut); }) == Errc::TruncatedInput);
    }
    CHECK(code_of([&] { envelope::decode_mpk(Bytes(me.begin(), me.end() - 1)); }) == Errc::TruncatedInput);
}

TEST_CASE("every single-bit mutation of a signature is rejected") {
    Rng rng(4);
    const auto keys = ibi::master_keygen(6, 2, 8, rng);
    const Bytes id = to_bytes("zed"), msg = to_bytes("short message");
    const auto usk = ibi::extract_user_key(keys.msk, keys.mpk, id, rng).usk;
    const Bytes enc = envelope::encode_ibs_sig(ibi::ibs_sign(usk, keys.mpk, id, msg, 10, rng), keys.mpk.n());
    REQUIRE(ibi::ibs_verify(keys.mpk, id, msg, envelope::decode_ibs_sig(enc)));

    std::size_t accepted = 0, decoded = 0;
    for (std::size_t bit = 0; bit < enc.size() * 8; ++bit) {
        Bytes m = enc;
        m[bit / 8] ^= std::uint8_t(1u << (bit % 8));
        try {
            const auto sig = envelope::decode_ibs_sig(m);
            ++decoded;
            accepted += ibi::ibs_verify(keys.mpk, id, msg, sig);
        } catch (const Error&) {
        }
    }
    MESSAGE(enc.size() * 8 << " mutations, " << decoded << " still decoded");
    CHECK(accepted == 0);
}

TEST_CASE("endpoint parsing") {
    const auto ep = net::parse_endpoint("127.0.0.1:7000");
    CHECK(ep.host == "127.0.0.1");
    CHECK(ep.port == 7000);
    CHECK(net::parse_endpoint("[::1]:80").host == "::1");
    CHECK_THROWS_AS(net::parse_endpoint("localhost"), Error);
    CHECK_THROWS_AS(net::parse_endpoint("h:99999"), Error);
    CHECK_THROWS_AS(net::parse_endpoint("h:8x"), Error);
}

TEST_CASE("loopback session matches the in-process transcript") {
    const World& w = world();
    const auto& mpk = w.keys.mpk;
    net::TcpListener listener({"127.0.0.1", 0});
    net::ServeOptions opts;
    opts.seed = 99;
    opts.max_sessions = 2;
    std::vector<net::SessionRecord> records;
    std::thread server([&] { records = net::serve_verifier(listener, mpk, opts); });

    const net::Endpoint ep{"127.0.0.1", listener.port()};
    Rng pr(7);
    CHECK(net::run_prover(ep, mpk, w.id, w.usk, pr));
    // a key for alice presented as bob
    Rng pr2(8);
    CHECK_FALSE(net::run_prover(ep, mpk, to_bytes("bob"), w.usk, pr2));
    server.join();

    REQUIRE(records.size() == 2);
    CHECK(records[0].accepted());
    CHECK_FALSE(records[1].accepted());
    CHECK(records[1].error.empty());

    Rng in_pr(7), in_vr = Rng(99).fork(0);
    const auto local = ibi::identify(mpk, w.usk, w.id, in_pr, in_vr);
    CHECK(local.session.decision);
    CHECK(envelope::encode_transcript(envelope::transcript_of(local, mpk.n())) == records[0].transcript);
    CHECK(envelope::decode_transcript(records[0].transcript).rounds.size() == 12);
}

TEST_CASE("prover that skips COMMIT gets a reject") {
    const World& w = world();
    net::TcpListener listener({"127.0.0.1", 0});
    net::ServeOptions opts;
    opts.max_sessions = 1;
    std::vector<net::SessionRecord> records;
    std::thread server([&] { records = net::serve_verifier(listener, w.keys.mpk, opts); });

    auto ch = net::SocketChannel::connect({"127.0.0.1", listener.port()});
    ch->send({wire::MsgType::Hello, ibi::encode_hello({w.id, w.usk.j, w.usk.w})});
    ch->send({wire::MsgType::Response, Bytes{0}});
    const auto reply = ch->receive();
    CHECK(reply == wire::WireMessage{wire::MsgType::Result, Bytes{0}});
    server.join();
    REQUIRE(records.size() == 1);
    CHECK_FALSE(records[0].accepted());
    CHECK(records[0].error.find("ProtocolViolation") != std::string::npos);
}

TEST_CASE("interrupted session surfaces ChannelError") {
    const World& w = world();
    net::TcpListener listener({"127.0.0.1", 0});
    std::thread server([&] {
        auto ch = listener.accept();
        ch->receive();  // HELLO
        ch->receive();  // first COMMIT
        ch->close();
    });
    Rng pr(9);
    const net::Endpoint ep{"127.0.0.1", listener.port()};
    CHECK(code_of([&] { net::run_prover(ep, w.keys.mpk, w.id, w.usk, pr); }) == Errc::ChannelError);
    server.join();
    CHECK(code_of([] { net::SocketChannel::connect({"127.0.0.1", 1}); }) == Errc::ChannelError);
}
