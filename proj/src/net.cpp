#include "cibi/net.hpp"

#include "cibi/error.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

namespace cibi::net {

namespace {

[[noreturn]] void sys_fail(const std::string& what) {
    throw Error(Errc::ChannelError, what + ": " + std::strerror(errno));
}

struct AddrInfo {
    addrinfo* list = nullptr;
    ~AddrInfo() {
        if (list)
            freeaddrinfo(list);
    }
};

AddrInfo resolve(const Endpoint& ep, bool passive) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = passive ? AI_PASSIVE : 0;
    AddrInfo ai;
    const std::string port = std::to_string(ep.port);
    const int rc = getaddrinfo(ep.host.empty() ? nullptr : ep.host.c_str(), port.c_str(), &hints, &ai.list);
    if (rc != 0)
        throw Error(Errc::ChannelError, "cannot resolve " + ep.host + ": " + gai_strerror(rc));
    return ai;
}

} // namespace

Endpoint parse_endpoint(std::string_view s) {
    const auto colon = s.rfind(':');
    if (colon == std::string_view::npos || colon + 1 == s.size())
        throw Error(Errc::ParameterError, "endpoint must be host:port");
    Endpoint ep;
    ep.host = std::string(s.substr(0, colon));
    if (ep.host.size() >= 2 && ep.host.front() == '[' && ep.host.back() == ']')
        ep.host = ep.host.substr(1, ep.host.size() - 2);
    unsigned long port = 0;
    for (char c : s.substr(colon + 1)) {
        if (c < '0' || c > '9')
            throw Error(Errc::ParameterError, "port must be numeric");
        port = port * 10 + unsigned(c - '0');
        if (port > 65535)
            throw Error(Errc::ParameterError, "port out of range");
    }
    ep.port = std::uint16_t(port);
    return ep;
}

// ---------------------------------------------------------------------------

SocketChannel::SocketChannel(int fd) : fd_(fd) {
    const int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

SocketChannel::~SocketChannel() {
    ::close(fd_);
}

std::unique_ptr<SocketChannel> SocketChannel::connect(const Endpoint& ep) {
    const AddrInfo ai = resolve(ep, false);
    int last_errno = 0;
    for (addrinfo* a = ai.list; a; a = a->ai_next) {
        const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
        if (fd < 0) {
            last_errno = errno;
            continue;
        }
        if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0)
            return std::make_unique<SocketChannel>(fd);
        last_errno = errno;
        ::close(fd);
    }
    errno = last_errno;
    sys_fail("connect to " + ep.host + ":" + std::to_string(ep.port));
}

void SocketChannel::close() {
    ::shutdown(fd_, SHUT_RDWR);
}

void SocketChannel::set_timeout(unsigned seconds) {
    timeval tv{};
    tv.tv_sec = time_t(seconds);
    setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
    setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
}

std::string SocketChannel::peer() const {
    sockaddr_storage ss{};
    socklen_t len = sizeof ss;
    if (getpeername(fd_, reinterpret_cast<sockaddr*>(&ss), &len) != 0)
        return "?";
    char host[INET6_ADDRSTRLEN] = {};
    std::uint16_t port = 0;
    if (ss.ss_family == AF_INET) {
        const auto* in = reinterpret_cast<const sockaddr_in*>(&ss);
        inet_ntop(AF_INET, &in->sin_addr, host, sizeof host);
        port = ntohs(in->sin_port);
        return std::string(host) + ":" + std::to_string(port);
    }
    const auto* in6 = reinterpret_cast<const sockaddr_in6*>(&ss);
    inet_ntop(AF_INET6, &in6->sin6_addr, host, sizeof host);
    port = ntohs(in6->sin6_port);
    return "[" + std::string(host) + "]:" + std::to_string(port);
}

void SocketChannel::write_all(ByteView data) {
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            sys_fail("send");
        }
        off += std::size_t(n);
    }
}

void SocketChannel::read_exact(std::span<std::uint8_t> out) {
    std::size_t off = 0;
    while (off < out.size()) {
        const ssize_t n = ::recv(fd_, out.data() + off, out.size() - off, 0);
        if (n == 0)
            throw Error(Errc::ChannelError, "connection closed by peer");
        if (n < 0) {
            if (errno == EINTR)
                continue;
            sys_fail("recv");
        }
        off += std::size_t(n);
    }
}

// ---------------------------------------------------------------------------

TcpListener::TcpListener(const Endpoint& ep) : fd_(-1) {
    const AddrInfo ai = resolve(ep, true);
    int last_errno = 0;
    for (addrinfo* a = ai.list; a; a = a->ai_next) {
        const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
        if (fd < 0) {
            last_errno = errno;
            continue;
        }
        const int one = 1;
        setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(fd, a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
            fd_ = fd;
            break;
        }
        last_errno = errno;
        ::close(fd);
    }
    if (fd_ < 0) {
        errno = last_errno;
        sys_fail("listen on " + ep.host + ":" + std::to_string(ep.port));
    }
    sockaddr_storage ss{};
    socklen_t len = sizeof ss;
    getsockname(fd_, reinterpret_cast<sockaddr*>(&ss), &len);
    port_ = ss.ss_family == AF_INET ? ntohs(reinterpret_cast<sockaddr_in*>(&ss)->sin_port)
                                    : ntohs(reinterpret_cast<sockaddr_in6*>(&ss)->sin6_port);
}

TcpListener::~TcpListener() {
    ::close(fd_);
}

std::unique_ptr<SocketChannel> TcpListener::accept() {
    for (;;) {
        const int fd = ::accept(fd_, nullptr, nullptr);
        if (fd >= 0)
            return std::make_unique<SocketChannel>(fd);
        if (errno != EINTR)
            sys_fail("accept");
    }
}

void TcpListener::close() {
    // wakes a blocked accept()
    ::shutdown(fd_, SHUT_RDWR);
}

// ---------------------------------------------------------------------------

std::vector<SessionRecord> serve_verifier(TcpListener& listener, const ibi::MasterPublicKey& mpk,
                                          const ServeOptions& opts) {
    std::mutex mu;
    std::vector<SessionRecord> records;
    std::vector<std::thread> workers;

    auto session = [&](std::uint64_t index, std::unique_ptr<SocketChannel> ch) {
        SessionRecord rec;
        rec.index = index;
        rec.peer = ch->peer();
        if (opts.timeout_seconds)
            ch->set_timeout(opts.timeout_seconds);
        try {
            Rng rng = opts.seed ? Rng(*opts.seed).fork(index) : Rng::from_os_entropy();
            rec.outcome = ibi::verify_identity(*ch, mpk, rng, opts.rounds);
            rec.transcript = envelope::encode_transcript(envelope::transcript_of(*rec.outcome, mpk.n()));
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        ch->close();
        if (opts.on_session)
            opts.on_session(rec);
        std::lock_guard lock(mu);
        records.push_back(std::move(rec));
    };

    for (std::uint64_t index = 0; opts.max_sessions == 0 || index < opts.max_sessions; ++index) {
        std::unique_ptr<SocketChannel> ch;
        try {
            ch = listener.accept();
        } catch (const Error&) {
            break;  // listener closed
        }
        workers.emplace_back(session, index, std::move(ch));
    }
    for (auto& w : workers)
        w.join();
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return records;
}

bool run_prover(const Endpoint& ep, const ibi::MasterPublicKey& mpk, ByteView id, const ibi::UserSecretKey& usk,
                Rng& rng) {
    const auto ch = SocketChannel::connect(ep);
    return ibi::prove_identity(*ch, mpk, id, usk, rng);
}

} // namespace cibi::net
