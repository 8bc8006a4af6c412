#pragma once

#include "cibi/channel.hpp"
#include "cibi/envelope.hpp"
#include "cibi/ibi.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

// TCP transport for the identification protocol.
namespace cibi::net {

struct Endpoint {
    std::string host;
    std::uint16_t port = 0;
};

// "host:port"; ParameterError otherwise.
Endpoint parse_endpoint(std::string_view s);

class SocketChannel final : public wire::Channel {
public:
    explicit SocketChannel(int fd);
    ~SocketChannel() override;
    SocketChannel(const SocketChannel&) = delete;
    SocketChannel& operator=(const SocketChannel&) = delete;

    static std::unique_ptr<SocketChannel> connect(const Endpoint& ep);

    void close() override;
    // Receive timeout; 0 disables.
    void set_timeout(unsigned seconds);
    std::string peer() const;

protected:
    void write_all(ByteView data) override;
    void read_exact(std::span<std::uint8_t> out) override;

private:
    int fd_;
};

class TcpListener {
public:
    // Port 0 binds an ephemeral port; see port().
    explicit TcpListener(const Endpoint& ep);
    ~TcpListener();
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;

    std::uint16_t port() const noexcept { return port_; }
    // ChannelError once close() has been called.
    std::unique_ptr<SocketChannel> accept();
    void close();

private:
    int fd_;
    std::uint16_t port_ = 0;
};

struct SessionRecord {
    std::uint64_t index = 0;
    std::string peer;
    std::optional<ibi::IdentifyOutcome> outcome;
    std::string error;  // set when the session ended without a verdict
    Bytes transcript;   // transcript envelope, empty on error

    bool accepted() const noexcept { return outcome && outcome->session.decision; }
};

struct ServeOptions {
    unsigned rounds = 0;                // 0: the mpk default
    std::optional<std::uint64_t> seed;  // session i uses Rng(seed).fork(i)
    std::uint64_t max_sessions = 0;     // 0: until the listener is closed
    unsigned timeout_seconds = 30;
    std::function<void(const SessionRecord&)> on_session;  // called from session threads
};

// One thread per connection. Returns records ordered by session index.
std::vector<SessionRecord> serve_verifier(TcpListener& listener, const ibi::MasterPublicKey& mpk,
                                          const ServeOptions& opts);

bool run_prover(const Endpoint& ep, const ibi::MasterPublicKey& mpk, ByteView id, const ibi::UserSecretKey& usk,
                Rng& rng);

} // namespace cibi::net
