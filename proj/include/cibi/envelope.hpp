#pragma once

#include "cibi/ibi.hpp"
#include "cibi/mcfs.hpp"

#include <cstdint>
#include <string>

// Self-describing binary records:
//   "CIBI" || version 0x01 || kind || body_len (u64 BE) || body
namespace cibi::envelope {

inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 8;

enum class Kind : std::uint8_t {
    Mpk = 0x01,
    Msk = 0x02,
    Usk = 0x03,
    McfsSig = 0x04,
    IbsSig = 0x05,
    Transcript = 0x06,
    Params = 0x07,
};

std::string_view kind_name(Kind k) noexcept;

struct Envelope {
    Kind kind;
    Bytes body;
};

Bytes seal(Kind kind, ByteView body);
// MalformedEnvelope (magic, kind, trailing bytes), VersionMismatch, TruncatedInput.
Envelope open(ByteView bytes);
// As open, and the kind must match.
Bytes open_as(Kind expected, ByteView bytes);

struct ParamsRecord {
    unsigned m = 0;
    unsigned t = 0;
    unsigned rounds = 0;
    friend bool operator==(const ParamsRecord&, const ParamsRecord&) = default;
};

struct UserKeyRecord {
    ibi::MasterPublicKey mpk;  // the prover needs H~ to commit
    Bytes id;
    ibi::UserSecretKey usk;
};

struct TranscriptRecord {
    ibi::Hello hello;
    std::size_t n = 0;
    std::vector<stern::RoundTranscript> rounds;
    bool decision = false;
    friend bool operator==(const TranscriptRecord&, const TranscriptRecord&) = default;
};

TranscriptRecord transcript_of(const ibi::IdentifyOutcome& out, std::size_t n);

Bytes encode_params(const ParamsRecord& p);
ParamsRecord decode_params(ByteView bytes);

Bytes encode_mpk(const ibi::MasterPublicKey& mpk);
ibi::MasterPublicKey decode_mpk(ByteView bytes);

// Stores g, Q and P; the code matrix and inverses are rebuilt on load.
Bytes encode_msk(const ibi::MasterSecretKey& msk);
ibi::MasterSecretKey decode_msk(ByteView bytes);

Bytes encode_usk(const UserKeyRecord& rec);
UserKeyRecord decode_usk(ByteView bytes);

Bytes encode_mcfs_sig(const mcfs::Signature& sig);
mcfs::Signature decode_mcfs_sig(ByteView bytes);

Bytes encode_ibs_sig(const ibi::IbsSignature& sig, std::size_t n);
// n is read from the record; verification checks it against the key.
ibi::IbsSignature decode_ibs_sig(ByteView bytes, std::size_t* n = nullptr);

Bytes encode_transcript(const TranscriptRecord& t);
TranscriptRecord decode_transcript(ByteView bytes);

} // namespace cibi::envelope
