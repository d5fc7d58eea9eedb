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

#ifndef QETLAB_WIRE_H
#define QETLAB_WIRE_H

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "qetlab/locc.h"

namespace qetlab {

/// Newline-delimited text stream.
class LineStream {
   public:
    virtual ~LineStream() = default;
    /// Writes `line` followed by '\n'. `line` must not contain a newline.
    virtual void write_line(std::string_view line) = 0;
    /// Reads up to the next '\n' (excluded). Throws ProtocolError on EOF or an oversized line.
    virtual std::string read_line() = 0;
};

/// LineStream over a connected socket; owns and closes the descriptor.
class SocketLineStream : public LineStream {
   public:
    explicit SocketLineStream(int fd);
    ~SocketLineStream() override;
    SocketLineStream(SocketLineStream &&other) noexcept;
    SocketLineStream &operator=(SocketLineStream &&other) noexcept;
    SocketLineStream(const SocketLineStream &) = delete;
    SocketLineStream &operator=(const SocketLineStream &) = delete;

    void write_line(std::string_view line) override;
    std::string read_line() override;

   private:
    int fd_ = -1;
    std::string buffer_;
};

/// Connected pair of local stream sockets.
std::pair<SocketLineStream, SocketLineStream> socket_stream_pair();

/// TCP listener on host:port (port 0 picks an ephemeral port).
class TcpListener {
   public:
    TcpListener(const std::string &host, std::uint16_t port);
    ~TcpListener();
    TcpListener(const TcpListener &) = delete;
    TcpListener &operator=(const TcpListener &) = delete;

    std::uint16_t port() const {
        return port_;
    }
    SocketLineStream accept_one();

   private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

/// Connect to host:port, retrying for up to `timeout_ms` while the peer is not yet listening.
SocketLineStream tcp_connect(const std::string &host, std::uint16_t port, int timeout_ms = 5000);

/// Longest accepted frame, in bytes.
inline constexpr std::size_t kMaxFrameBytes = 4096;

/// {"kind":"outcome","mu":1,"sent_at":0.0,"deliver_at":0.5}
std::string encode_outcome_frame(const ChannelMessage &message);
ChannelMessage decode_outcome_frame(std::string_view frame);

/// {"kind":"hello","h":3.0,"k":4.0,"t_c":0.5}
std::string encode_hello_frame(const ModelParams &p, double latency);

struct HelloFrame {
    double h = 0;
    double k = 0;
    double latency = 0;
};
HelloFrame decode_hello_frame(std::string_view frame);

/// Alice's end of a wire round: hello, await ack, send outcome, await Bob's digest and compare.
ProtocolTrace run_alice_over(LineStream &stream, const ModelParams &p, double latency, const RunOptions &options);

/// Bob's end: check the hello against local parameters (reject on mismatch), receive the outcome,
/// compute the trace and return its digest to Alice.
ProtocolTrace run_bob_over(LineStream &stream, const ModelParams &p, double latency, const RunOptions &options);

}  // namespace qetlab

#endif
