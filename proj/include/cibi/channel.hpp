#pragma once

#include "cibi/bytes.hpp"

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <utility>

// Length-prefixed message framing over an ordered byte stream:
// type (1 byte) || payload length (u32 BE) || payload.
namespace cibi::wire {

enum class MsgType : std::uint8_t {
    Hello = 0x10,
    Commit = 0x11,
    Challenge = 0x12,
    Response = 0x13,
    Result = 0x14,
};

const char* msg_type_name(MsgType t) noexcept;

struct WireMessage {
    MsgType type{};
    Bytes payload;

    friend bool operator==(const WireMessage&, const WireMessage&) = default;
};

inline constexpr std::size_t kFrameHeader = 5;
inline constexpr std::uint32_t kMaxPayload = 64U << 20;

Bytes encode_frame(const WireMessage& msg);
// Throws TruncatedInput or ProtocolViolation (unknown type, oversized payload).
WireMessage decode_frame(ByteView frame);

// A bidirectional ordered byte stream. send/receive throw ChannelError when
// the peer has gone away.
class Channel {
public:
    virtual ~Channel() = default;

    void send(const WireMessage& msg);
    WireMessage receive();

    // Further reads on the peer fail once buffered data is drained.
    virtual void close() = 0;

protected:
    virtual void write_all(ByteView data) = 0;
    virtual void read_exact(std::span<std::uint8_t> out) = 0;
};

// In-process byte pipe; each endpoint owns one direction for writing.
class MemoryChannel final : public Channel {
public:
    static std::pair<std::unique_ptr<MemoryChannel>, std::unique_ptr<MemoryChannel>> make_pair();

    void close() override;

protected:
    void write_all(ByteView data) override;
    void read_exact(std::span<std::uint8_t> out) override;

private:
    struct Pipe {
        std::mutex mu;
        std::condition_variable cv;
        std::deque<std::uint8_t> buf;
        bool closed = false;
    };
    MemoryChannel(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out) : in_(std::move(in)), out_(std::move(out)) {}

    std::shared_ptr<Pipe> in_;
    std::shared_ptr<Pipe> out_;
};

} // namespace cibi::wire
