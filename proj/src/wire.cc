// Copyright 2026 The qetlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qetlab/wire.h"

#include <arpa/inet.h>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <thread>
#include <unistd.h>

#include "json.hpp"
#include "qetlab/errors.h"

namespace qetlab {

using nlohmann::ordered_json;

namespace {

std::string errno_text(const char *what) {
    return std::string(what) + ": " + std::strerror(errno);
}

ordered_json parse_frame(std::string_view frame) {
    if (frame.size() > kMaxFrameBytes) {
        throw ProtocolError("frame too long");
    }
    ordered_json j = ordered_json::parse(frame, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ProtocolError("malformed frame: not a JSON object");
    }
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw ProtocolError("malformed frame: missing kind");
    }
    return j;
}

double number_field(const ordered_json &j, const char *name) {
    if (!j.contains(name) || !j[name].is_number()) {
        throw ProtocolError(std::string("malformed frame: field '") + name + "' missing or not a number");
    }
    return j[name].get<double>();
}

void require_fields(const ordered_json &j, std::initializer_list<const char *> names) {
    if (j.size() != names.size()) {
        throw ProtocolError("malformed frame: unexpected field count");
    }
    for (const char *n : names) {
        if (!j.contains(n)) {
            throw ProtocolError(std::string("malformed frame: missing field '") + n + "'");
        }
    }
}

std::string expect_kind(const ordered_json &j, const char *kind) {
    std::string got = j["kind"].get<std::string>();
    if (got != kind) {
        throw ProtocolError(std::string("expected a '") + kind + "' frame, got '" + got + "'");
    }
    return got;
}

}  // namespace

SocketLineStream::SocketLineStream(int fd) : fd_(fd) {
}

SocketLineStream::~SocketLineStream() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

SocketLineStream::SocketLineStream(SocketLineStream &&other) noexcept
    : fd_(std::exchange(other.fd_, -1)), buffer_(std::move(other.buffer_)) {
}

SocketLineStream &SocketLineStream::operator=(SocketLineStream &&other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) {
            ::close(fd_);
        }
        fd_ = std::exchange(other.fd_, -1);
        buffer_ = std::move(other.buffer_);
    }
    return *this;
}

void SocketLineStream::write_line(std::string_view line) {
    if (line.find('\n') != std::string_view::npos) {
        throw ProtocolError("frame must not contain a newline");
    }
    std::string data(line);
    data.push_back('\n');
    std::size_t done = 0;
    while (done < data.size()) {
        ssize_t n = ::send(fd_, data.data() + done, data.size() - done, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw ProtocolError(errno_text("send"));
        }
        done += static_cast<std::size_t>(n);
    }
}

std::string SocketLineStream::read_line() {
    while (true) {
        auto pos = buffer_.find('\n');
        if (pos != std::string::npos) {
            std::string line = buffer_.substr(0, pos);
            buffer_.erase(0, pos + 1);
            return line;
        }
        if (buffer_.size() > kMaxFrameBytes) {
            throw ProtocolError("frame too long");
        }
        char chunk[512];
        ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw ProtocolError(errno_text("recv"));
        }
        if (n == 0) {
            throw ProtocolError("peer closed the stream");
        }
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

std::pair<SocketLineStream, SocketLineStream> socket_stream_pair() {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
        throw ProtocolError(errno_text("socketpair"));
    }
    return {SocketLineStream(fds[0]), SocketLineStream(fds[1])};
}

TcpListener::TcpListener(const std::string &host, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) {
        throw ProtocolError(errno_text("socket"));
    }
    int yes = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        throw InvalidInput("listen address must be a dotted IPv4 address: " + host);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0 || ::listen(fd_, 1) != 0) {
        std::string msg = errno_text("bind/listen");
        ::close(fd_);
        throw ProtocolError(msg);
    }
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr *>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

SocketLineStream TcpListener::accept_one() {
    while (true) {
        int fd = ::accept(fd_, nullptr, nullptr);
        if (fd >= 0) {
            return SocketLineStream(fd);
        }
        if (errno != EINTR) {
            throw ProtocolError(errno_text("accept"));
        }
    }
}

SocketLineStream tcp_connect(const std::string &host, std::uint16_t port, int timeout_ms) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo *res = nullptr;
    std::string service = std::to_string(port);
    if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &res) != 0 || res == nullptr) {
        throw ProtocolError("cannot resolve " + host);
    }
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    while (true) {
        int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
        if (fd < 0) {
            ::freeaddrinfo(res);
            throw ProtocolError(errno_text("socket"));
        }
        if (::connect(fd, res->ai_addr, res->ai_addrlen) == 0) {
            ::freeaddrinfo(res);
            return SocketLineStream(fd);
        }
        std::string msg = errno_text("connect");
        ::close(fd);
        if (std::chrono::steady_clock::now() >= deadline) {
            ::freeaddrinfo(res);
            throw ProtocolError(msg);
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
}

std::string encode_outcome_frame(const ChannelMessage &message) {
    ordered_json j;
    j["kind"] = message.kind;
    j["mu"] = message.mu;
    j["sent_at"] = message.sent_at;
    j["deliver_at"] = message.deliver_at;
    return j.dump();
}

ChannelMessage decode_outcome_frame(std::string_view frame) {
    ordered_json j = parse_frame(frame);
    ChannelMessage m;
    m.kind = expect_kind(j, "outcome");
    require_fields(j, {"kind", "mu", "sent_at", "deliver_at"});
    if (!j["mu"].is_number_integer()) {
        throw ProtocolError("malformed frame: mu must be an integer");
    }
    m.mu = j["mu"].get<int>();
    if (m.mu != 0 && m.mu != 1) {
        throw ProtocolError("malformed frame: mu must be 0 or 1");
    }
    m.sent_at = number_field(j, "sent_at");
    m.deliver_at = number_field(j, "deliver_at");
    return m;
}

std::string encode_hello_frame(const ModelParams &p, double latency) {
    ordered_json j;
    j["kind"] = "hello";
    j["h"] = p.h();
    j["k"] = p.k();
    j["t_c"] = latency;
    return j.dump();
}

HelloFrame decode_hello_frame(std::string_view frame) {
    ordered_json j = parse_frame(frame);
    expect_kind(j, "hello");
    require_fields(j, {"kind", "h", "k", "t_c"});
    return {number_field(j, "h"), number_field(j, "k"), number_field(j, "t_c")};
}

ProtocolTrace run_alice_over(LineStream &stream, const ModelParams &p, double latency, const RunOptions &options) {
    AliceParty alice(p, latency, options.seed);
    stream.write_line(encode_hello_frame(p, latency));

    ordered_json reply = parse_frame(stream.read_line());
    std::string kind = reply["kind"].get<std::string>();
    if (kind == "reject") {
        throw ProtocolError("handshake rejected by Bob: " + reply.value("reason", std::string("unspecified")));
    }
    expect_kind(reply, "hello_ack");

    ChannelMessage message = alice.measure_and_send();
    stream.write_line(encode_outcome_frame(message));
    ProtocolTrace trace = build_trace(p, latency, options, message.mu);

    ordered_json digest = parse_frame(stream.read_line());
    expect_kind(digest, "digest");
    if (!digest.contains("value") || !digest["value"].is_string()) {
        throw ProtocolError("malformed frame: digest value missing");
    }
    if (digest["value"].get<std::string>() != trace_digest(trace)) {
        throw ProtocolError("trace digest mismatch between Alice and Bob");
    }
    return trace;
}

ProtocolTrace run_bob_over(LineStream &stream, const ModelParams &p, double latency, const RunOptions &options) {
    BobParty bob(p, latency, options);
    HelloFrame hello;
    try {
        hello = decode_hello_frame(stream.read_line());
    } catch (const ProtocolError &e) {
        ordered_json reject{{"kind", "reject"}, {"reason", e.what()}};
        stream.write_line(reject.dump());
        throw;
    }
    if (hello.h != p.h() || hello.k != p.k() || hello.latency != latency) {
        ordered_json reject{{"kind", "reject"}, {"reason", "parameter mismatch"}};
        stream.write_line(reject.dump());
        throw ProtocolError("handshake rejected: parameter mismatch with Alice");
    }
    stream.write_line(ordered_json::object({{"kind", "hello_ack"}}).dump());

    ProtocolTrace trace = bob.on_deliver(decode_outcome_frame(stream.read_line()));
    stream.write_line(ordered_json::object({{"kind", "digest"}, {"value", trace_digest(trace)}}).dump());
    return trace;
}

}  // namespace qetlab
