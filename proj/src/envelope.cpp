#include "cibi/envelope.hpp"

#include "cibi/codec.hpp"
#include "cibi/error.hpp"
#include "cibi/gf2m.hpp"

namespace cibi::envelope {

using binmat::BitVector;
using codec::ByteReader;
using codec::ByteWriter;

namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'I', 'B', 'I'};
constexpr std::size_t kMaxN = std::size_t(1) << 16;
constexpr std::size_t kMaxId = std::size_t(1) << 16;

[[noreturn]] void malformed(const std::string& why) {
    throw Error(Errc::MalformedEnvelope, why);
}

// m, field modulus, t
void write_code_params(ByteWriter& w, unsigned m, unsigned t) {
    w.u8(std::uint8_t(m));
    w.u32(gf2m::standard_params(m).modulus);
    w.u16(std::uint16_t(t));
}

std::pair<unsigned, unsigned> read_code_params(ByteReader& r) {
    const unsigned m = r.u8();
    const std::uint32_t modulus = r.u32();
    const unsigned t = r.u16();
    if (m < 2 || m > 16)
        malformed("field degree out of range");
    if (modulus != gf2m::standard_params(m).modulus)
        malformed("unsupported field modulus");
    try {
        goppa::check_code_params(m, t);
    } catch (const Error& e) {
        malformed(e.what());
    }
    return {m, t};
}

void write_mpk_body(ByteWriter& w, const ibi::MasterPublicKey& mpk) {
    write_code_params(w, mpk.m(), mpk.t());
    w.u32(mpk.rounds);
    w.matrix(mpk.pk->h_tilde);
}

ibi::MasterPublicKey read_mpk_body(ByteReader& r) {
    const auto [m, t] = read_code_params(r);
    const std::uint32_t rounds = r.u32();
    if (rounds == 0)
        malformed("rounds must be at least 1");
    const std::size_t n = std::size_t(1) << m;
    binmat::BitMatrix h = r.matrix(std::size_t(m) * t, n);
    if (h.rows() != std::size_t(m) * t || h.cols() != n)
        malformed("public matrix has the wrong shape");
    return ibi::make_master_public_key(niederreiter::PublicKey{std::move(h), m, t}, rounds);
}

void write_hello(ByteWriter& w, const ibi::Hello& h) {
    w.blob(h.id);
    w.u64(h.j);
    w.u16(std::uint16_t(h.w));
}

ibi::Hello read_hello(ByteReader& r) {
    ibi::Hello h;
    h.id = r.blob(kMaxId);
    h.j = r.u64();
    h.w = r.u16();
    return h;
}

std::size_t read_n(ByteReader& r) {
    const std::size_t n = r.u32();
    if (n == 0 || n > kMaxN)
        malformed("code length out of range");
    return n;
}

bool read_bool(ByteReader& r) {
    const std::uint8_t b = r.u8();
    if (b > 1)
        malformed("boolean byte must be 0 or 1");
    return b == 1;
}

stern::Commitments read_commitments(ByteReader& r) {
    stern::Commitments c;
    c.c1 = r.digest();
    c.c2 = r.digest();
    c.c3 = r.digest();
    return c;
}

std::size_t read_count(ByteReader& r, std::size_t min_bytes_each) {
    const std::size_t count = r.u32();
    if (count > r.remaining() / min_bytes_each)
        throw Error(Errc::TruncatedInput, "record count exceeds the remaining input");
    return count;
}

} // namespace

std::string_view kind_name(Kind k) noexcept {
    switch (k) {
    case Kind::Mpk: return "mpk";
    case Kind::Msk: return "msk";
    case Kind::Usk: return "usk";
    case Kind::McfsSig: return "mcfs_sig";
    case Kind::IbsSig: return "ibs_sig";
    case Kind::Transcript: return "transcript";
    case Kind::Params: return "params";
    }
    return "unknown";
}

Bytes seal(Kind kind, ByteView body) {
    ByteWriter w;
    w.raw(kMagic);
    w.u8(kVersion);
    w.u8(std::uint8_t(kind));
    w.u64(body.size());
    w.raw(body);
    return std::move(w).bytes();
}

Envelope open(ByteView bytes) {
    ByteReader r(bytes);
    const ByteView magic = r.raw(4);
    if (!std::equal(magic.begin(), magic.end(), kMagic))
        malformed("bad magic");
    const std::uint8_t version = r.u8();
    if (version != kVersion)
        throw Error(Errc::VersionMismatch, "envelope version " + std::to_string(version));
    const std::uint8_t kind = r.u8();
    if (kind < 0x01 || kind > 0x07)
        malformed("unknown kind " + std::to_string(kind));
    const std::uint64_t len = r.u64();
    if (len > r.remaining())
        throw Error(Errc::TruncatedInput, "body shorter than declared length");
    const ByteView body = r.raw(std::size_t(len));
    r.expect_done();
    return {Kind(kind), Bytes(body.begin(), body.end())};
}

Bytes open_as(Kind expected, ByteView bytes) {
    Envelope e = open(bytes);
    if (e.kind != expected)
        malformed(std::string("expected ") + std::string(kind_name(expected)) + ", found " +
                  std::string(kind_name(e.kind)));
    return std::move(e.body);
}

TranscriptRecord transcript_of(const ibi::IdentifyOutcome& out, std::size_t n) {
    return {out.hello, n, out.session.rounds, out.session.decision};
}

// ---------------------------------------------------------------------------

Bytes encode_params(const ParamsRecord& p) {
    ByteWriter w;
    write_code_params(w, p.m, p.t);
    w.u32(p.rounds);
    return seal(Kind::Params, w.bytes());
}

ParamsRecord decode_params(ByteView bytes) {
    const Bytes body = open_as(Kind::Params, bytes);
    ByteReader r(body);
    ParamsRecord p;
    std::tie(p.m, p.t) = read_code_params(r);
    p.rounds = r.u32();
    r.expect_done();
    return p;
}

Bytes encode_mpk(const ibi::MasterPublicKey& mpk) {
    ByteWriter w;
    write_mpk_body(w, mpk);
    return seal(Kind::Mpk, w.bytes());
}

ibi::MasterPublicKey decode_mpk(ByteView bytes) {
    const Bytes body = open_as(Kind::Mpk, bytes);
    ByteReader r(body);
    auto mpk = read_mpk_body(r);
    r.expect_done();
    return mpk;
}

Bytes encode_msk(const ibi::MasterSecretKey& msk) {
    const auto& sk = msk.sk;
    const unsigned t = sk.code.t();
    ByteWriter w;
    write_code_params(w, sk.code.m(), t);
    for (unsigned i = 0; i <= t; ++i)
        w.u16(std::uint16_t(sk.code.goppa_poly().coeff(i)));
    w.matrix(sk.q);
    w.permutation(sk.p);
    return seal(Kind::Msk, w.bytes());
}

ibi::MasterSecretKey decode_msk(ByteView bytes) {
    const Bytes body = open_as(Kind::Msk, bytes);
    ByteReader r(body);
    const auto [m, t] = read_code_params(r);
    std::vector<gf2m::Element> g(t + 1);
    for (auto& c : g) {
        c = r.u16();
        if (c >> m)
            malformed("Goppa coefficient outside the field");
    }
    const std::size_t red = std::size_t(m) * t, n = std::size_t(1) << m;
    binmat::BitMatrix q = r.matrix(red, red);
    if (q.rows() != red || q.cols() != red)
        malformed("scrambler has the wrong shape");
    binmat::Permutation p = r.permutation(n);
    r.expect_done();
    try {
        goppa::GoppaCode code(m, t, gf2m::Poly(std::move(g)));
        return {niederreiter::SecretKey(std::move(q), std::move(code), std::move(p))};
    } catch (const Error& e) {
        malformed(std::string("invalid secret key: ") + e.what());
    }
}

Bytes encode_usk(const UserKeyRecord& rec) {
    ByteWriter w;
    write_mpk_body(w, rec.mpk);
    w.blob(rec.id);
    w.u64(rec.usk.j);
    w.u16(std::uint16_t(rec.usk.w));
    w.packed(rec.usk.s);
    return seal(Kind::Usk, w.bytes());
}

UserKeyRecord decode_usk(ByteView bytes) {
    const Bytes body = open_as(Kind::Usk, bytes);
    ByteReader r(body);
    UserKeyRecord rec;
    rec.mpk = read_mpk_body(r);
    rec.id = r.blob(kMaxId);
    rec.usk.j = r.u64();
    rec.usk.w = r.u16();
    rec.usk.s = r.packed(rec.mpk.n());
    r.expect_done();
    if (!ibi::user_key_valid(rec.mpk, rec.id, rec.usk))
        malformed("user key does not match its identity");
    return rec;
}

Bytes encode_mcfs_sig(const mcfs::Signature& sig) {
    ByteWriter w;
    w.u64(sig.counter);
    w.bitvector(sig.x);
    return seal(Kind::McfsSig, w.bytes());
}

mcfs::Signature decode_mcfs_sig(ByteView bytes) {
    const Bytes body = open_as(Kind::McfsSig, bytes);
    ByteReader r(body);
    mcfs::Signature sig;
    sig.counter = r.u64();
    sig.x = r.bitvector(kMaxN);
    r.expect_done();
    return sig;
}

Bytes encode_ibs_sig(const ibi::IbsSignature& sig, std::size_t n) {
    ByteWriter w;
    w.u32(std::uint32_t(n));
    w.u64(sig.j);
    w.u16(std::uint16_t(sig.w));
    w.u32(std::uint32_t(sig.rounds()));
    for (const auto& c : sig.commitments) {
        w.digest(c.c1);
        w.digest(c.c2);
        w.digest(c.c3);
    }
    for (const auto& resp : sig.responses)
        stern::write_response(w, resp);
    return seal(Kind::IbsSig, w.bytes());
}

ibi::IbsSignature decode_ibs_sig(ByteView bytes, std::size_t* n_out) {
    const Bytes body = open_as(Kind::IbsSig, bytes);
    ByteReader r(body);
    const std::size_t n = read_n(r);
    ibi::IbsSignature sig;
    sig.j = r.u64();
    sig.w = r.u16();
    const std::size_t rounds = read_count(r, 96);
    for (std::size_t i = 0; i < rounds; ++i)
        sig.commitments.push_back(read_commitments(r));
    for (std::size_t i = 0; i < rounds; ++i)
        sig.responses.push_back(stern::read_response(r, n));
    r.expect_done();
    if (n_out)
        *n_out = n;
    return sig;
}

Bytes encode_transcript(const TranscriptRecord& t) {
    ByteWriter w;
    write_hello(w, t.hello);
    w.u32(std::uint32_t(t.n));
    w.u32(std::uint32_t(t.rounds.size()));
    for (const auto& rt : t.rounds) {
        w.digest(rt.commitments.c1);
        w.digest(rt.commitments.c2);
        w.digest(rt.commitments.c3);
        w.u8(rt.challenge.b);
        stern::write_response(w, rt.response);
        w.u8(rt.accepted ? 1 : 0);
    }
    w.u8(t.decision ? 1 : 0);
    return seal(Kind::Transcript, w.bytes());
}

TranscriptRecord decode_transcript(ByteView bytes) {
    const Bytes body = open_as(Kind::Transcript, bytes);
    ByteReader r(body);
    TranscriptRecord t;
    t.hello = read_hello(r);
    t.n = read_n(r);
    const std::size_t rounds = read_count(r, 96 + 3);
    for (std::size_t i = 0; i < rounds; ++i) {
        stern::RoundTranscript rt;
        rt.commitments = read_commitments(r);
        rt.challenge.b = r.u8();
        rt.response = stern::read_response(r, t.n);
        if (stern::challenge_of(rt.response) != rt.challenge.b)
            malformed("response does not match its challenge");
        rt.accepted = read_bool(r);
        t.rounds.push_back(std::move(rt));
    }
    t.decision = read_bool(r);
    r.expect_done();
    return t;
}

} // namespace cibi::envelope
