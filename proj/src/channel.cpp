#include "cibi/channel.hpp"

#include "cibi/codec.hpp"
#include "cibi/error.hpp"

namespace cibi::wire {

const char* msg_type_name(MsgType t) noexcept {
    switch (t) {
    case MsgType::Hello: return "HELLO";
    case MsgType::Commit: return "COMMIT";
    case MsgType::Challenge: return "CHALLENGE";
    case MsgType::Response: return "RESPONSE";
    case MsgType::Result: return "RESULT";
    }
    return "UNKNOWN";
}

namespace {

MsgType checked_type(std::uint8_t b) {
    if (b < std::uint8_t(MsgType::Hello) || b > std::uint8_t(MsgType::Result))
        throw Error(Errc::ProtocolViolation, "unknown message type " + std::to_string(b));
    return MsgType(b);
}

} // namespace

Bytes encode_frame(const WireMessage& msg) {
    codec::ByteWriter w;
    w.u8(std::uint8_t(msg.type));
    w.u32(std::uint32_t(msg.payload.size()));
    w.raw(msg.payload);
    return std::move(w).bytes();
}

WireMessage decode_frame(ByteView frame) {
    codec::ByteReader r(frame);
    WireMessage msg;
    msg.type = checked_type(r.u8());
    const std::uint32_t len = r.u32();
    if (len > kMaxPayload)
        throw Error(Errc::ProtocolViolation, "payload too large");
    const auto p = r.raw(len);
    msg.payload.assign(p.begin(), p.end());
    if (!r.done())
        throw Error(Errc::ProtocolViolation, "trailing bytes after frame");
    return msg;
}

void Channel::send(const WireMessage& msg) {
    write_all(encode_frame(msg));
}

WireMessage Channel::receive() {
    std::uint8_t header[kFrameHeader];
    read_exact(header);
    codec::ByteReader r(header);
    WireMessage msg;
    msg.type = checked_type(r.u8());
    const std::uint32_t len = r.u32();
    if (len > kMaxPayload)
        throw Error(Errc::ProtocolViolation, "payload too large");
    msg.payload.resize(len);
    read_exact(msg.payload);
    return msg;
}

std::pair<std::unique_ptr<MemoryChannel>, std::unique_ptr<MemoryChannel>> MemoryChannel::make_pair() {
    auto a_to_b = std::make_shared<Pipe>();
    auto b_to_a = std::make_shared<Pipe>();
    return {std::unique_ptr<MemoryChannel>(new MemoryChannel(b_to_a, a_to_b)),
            std::unique_ptr<MemoryChannel>(new MemoryChannel(a_to_b, b_to_a))};
}

void MemoryChannel::close() {
    for (auto* p : {in_.get(), out_.get()}) {
        std::lock_guard lk(p->mu);
        p->closed = true;
        p->cv.notify_all();
    }
}

void MemoryChannel::write_all(ByteView data) {
    std::lock_guard lk(out_->mu);
    if (out_->closed)
        throw Error(Errc::ChannelError, "write on closed channel");
    out_->buf.insert(out_->buf.end(), data.begin(), data.end());
    out_->cv.notify_all();
}

void MemoryChannel::read_exact(std::span<std::uint8_t> out) {
    std::unique_lock lk(in_->mu);
    in_->cv.wait(lk, [&] { return in_->buf.size() >= out.size() || in_->closed; });
    if (in_->buf.size() < out.size())
        throw Error(Errc::ChannelError, "channel closed mid-message");
    std::copy_n(in_->buf.begin(), out.size(), out.begin());
    in_->buf.erase(in_->buf.begin(), in_->buf.begin() + std::ptrdiff_t(out.size()));
}

} // namespace cibi::wire
