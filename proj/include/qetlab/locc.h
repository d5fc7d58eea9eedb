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

#ifndef QETLAB_LOCC_H
#define QETLAB_LOCC_H

#include <cstdint>
#include <string>
#include <vector>

#include "qetlab/audit.h"
#include "qetlab/model.h"
#include "qetlab/protocol.h"

namespace qetlab {

enum class BobPolicy {
    /// Fixed family angle -atan2(hk, h^2+2k^2)/2, whatever the latency.
    closed_form_theta,
    /// Re-optimize Bob's unitary for the evolved branches.
    optimize,
};

const char *to_string(BobPolicy policy);

struct RunOptions {
    BobPolicy policy = BobPolicy::optimize;
    BobMode mode = BobMode::family;
    OptimizerConfig optimizer;
    /// Seed for the sampled outcome carried by the classical message.
    std::uint64_t seed = 0;
};

/// Classical message from Alice to Bob. Times are model time (1/energy units), not wall time.
struct ChannelMessage {
    std::string kind = "outcome";
    int mu = 0;
    double sent_at = 0;
    double deliver_at = 0;
};

struct TraceEvent {
    double time = 0;
    std::string actor;
    std::string action;
};

struct ProtocolTrace {
    ModelParams params{1.0, 1.0};
    double latency = 0;
    double e_a = 0;
    double e_b_extracted = 0;
    /// e_b_extracted * latency.
    double uncertainty_product = 0;
    Verdict verdict = Verdict::unobservable;
    /// Outcome carried by the message (sampled; the energies are branch averages).
    int mu = 0;
    BobControl control;
    /// Ordered by sequence; times are non-decreasing.
    std::vector<TraceEvent> events;
};

/// Alice's side: measure at t = 0, then emit the outcome message.
class AliceParty {
   public:
    AliceParty(const ModelParams &p, double latency, std::uint64_t seed);

    ChannelMessage measure_and_send();
    const Branches &branches() const {
        return branches_;
    }

   private:
    enum class Stage { ready, sent };
    ModelParams params_;
    double latency_;
    std::uint64_t seed_;
    Branches branches_;
    Stage stage_ = Stage::ready;
};

/// Bob's side: on delivery, evolve the shared model to the delivery time and extract.
class BobParty {
   public:
    BobParty(const ModelParams &p, double latency, RunOptions options);

    /// Throws ProtocolError if the message is inconsistent with the agreed latency.
    ProtocolTrace on_deliver(const ChannelMessage &message);

   private:
    enum class Stage { waiting, done };
    ModelParams params_;
    double latency_;
    RunOptions options_;
    Stage stage_ = Stage::waiting;
};

/// Deterministic trace for a given delivered outcome; both parties compute it identically.
ProtocolTrace build_trace(const ModelParams &p, double latency, const RunOptions &options, int mu);

/// One in-process protocol round with model-time latency t_c >= 0.
ProtocolTrace run_once(const ModelParams &p, double latency, const RunOptions &options = {});

/// run_once at each latency; the grid must be non-empty, non-negative and strictly ascending.
std::vector<ProtocolTrace> sweep_latency(
    const ModelParams &p, const std::vector<double> &grid, const RunOptions &options = {});

/// FNV-1a 64 over a canonical full-precision serialization of the trace, as 16 hex digits.
std::string trace_digest(const ProtocolTrace &trace);

inline constexpr const char *kTraceCsvHeader = "h,k,t_c,e_a,e_b,product,verdict";
std::string trace_csv_row(const ProtocolTrace &trace);

}  // namespace qetlab

#endif
