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

#include "qetlab/locc.h"

#include <cmath>
#include <cstdio>

#include "qetlab/errors.h"
#include "qetlab/format.h"

namespace qetlab {

namespace {

void check_latency(double latency) {
    if (!std::isfinite(latency) || latency < 0) {
        throw InvalidInput("latency must be finite and non-negative");
    }
}

std::string exact(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

const char *to_string(BobPolicy policy) {
    return policy == BobPolicy::optimize ? "optimize" : "closed-form-theta";
}

AliceParty::AliceParty(const ModelParams &p, double latency, std::uint64_t seed)
    : params_(p), latency_(latency), seed_(seed) {
    check_latency(latency);
}

ChannelMessage AliceParty::measure_and_send() {
    if (stage_ != Stage::ready) {
        throw ProtocolError("Alice already measured in this round");
    }
    branches_ = measure_alice(ground_state_closed_form(params_));
    stage_ = Stage::sent;
    ChannelMessage msg;
    msg.mu = sample_outcome(branches_, seed_);
    msg.sent_at = 0.0;
    msg.deliver_at = msg.sent_at + latency_;
    return msg;
}

BobParty::BobParty(const ModelParams &p, double latency, RunOptions options)
    : params_(p), latency_(latency), options_(options) {
    check_latency(latency);
}

ProtocolTrace BobParty::on_deliver(const ChannelMessage &message) {
    if (stage_ != Stage::waiting) {
        throw ProtocolError("Bob already extracted in this round");
    }
    if (message.kind != "outcome") {
        throw ProtocolError("expected an outcome message, got '" + message.kind + "'");
    }
    if (message.mu != 0 && message.mu != 1) {
        throw ProtocolError("outcome bit must be 0 or 1");
    }
    if (message.sent_at != 0.0 || message.deliver_at != message.sent_at + latency_) {
        throw ProtocolError("message timing does not match the agreed latency");
    }
    stage_ = Stage::done;
    return build_trace(params_, latency_, options_, message.mu);
}

ProtocolTrace build_trace(const ModelParams &p, double latency, const RunOptions &options, int mu) {
    check_latency(latency);
    if (mu != 0 && mu != 1) {
        throw InvalidInput("outcome bit must be 0 or 1");
    }
    HamiltonianSet hams = build_hamiltonians(p);
    Branches measured = measure_alice(ground_state_closed_form(p));
    Branches evolved = evolve_branches(measured, hams, latency);

    ProtocolTrace trace;
    trace.params = p;
    trace.latency = latency;
    trace.mu = mu;
    trace.e_a = infused_energy(measured, hams);
    if (options.policy == BobPolicy::closed_form_theta) {
        trace.control = BobControl::family(family_theta_closed_form(p));
    } else {
        trace.control = optimize_bob(evolved, hams, options.optimizer, options.mode).control;
    }
    trace.e_b_extracted = extracted_energy(evolved, apply_bob(evolved, trace.control), hams);
    trace.uncertainty_product = trace.e_b_extracted * latency;
    trace.verdict = verdict_for(trace.uncertainty_product);

    std::string bit = "mu=" + std::to_string(mu);
    trace.events = {
        {0.0, "alice", "measure " + bit},
        {0.0, "alice", "send " + bit},
        {latency, "bob", "deliver " + bit},
        {latency, "bob", "extract e_b=" + format_number(trace.e_b_extracted)},
    };
    return trace;
}

ProtocolTrace run_once(const ModelParams &p, double latency, const RunOptions &options) {
    AliceParty alice(p, latency, options.seed);
    BobParty bob(p, latency, options);
    ChannelMessage message = alice.measure_and_send();
    return bob.on_deliver(message);
}

std::vector<ProtocolTrace> sweep_latency(
    const ModelParams &p, const std::vector<double> &grid, const RunOptions &options) {
    if (grid.empty()) {
        throw InvalidInput("latency grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); i++) {
        check_latency(grid[i]);
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidInput("latency grid must be strictly ascending");
        }
    }
    std::vector<ProtocolTrace> out;
    out.reserve(grid.size());
    for (double t : grid) {
        out.push_back(run_once(p, t, options));
    }
    return out;
}

std::string trace_digest(const ProtocolTrace &trace) {
    std::string text = exact(trace.params.h()) + ',' + exact(trace.params.k()) + ',' + exact(trace.latency) + ',' +
                       exact(trace.e_a) + ',' + exact(trace.e_b_extracted) + ',' + exact(trace.uncertainty_product) +
                       ',' + to_string(trace.verdict) + ",mu=" + std::to_string(trace.mu) + ',' +
                       to_string(trace.control.mode) + ',' + exact(trace.control.family_theta);
    for (const auto &su : trace.control.per_outcome) {
        text += ',' + exact(su.theta) + ',' + exact(su.axis[0]) + ',' + exact(su.axis[1]) + ',' + exact(su.axis[2]);
    }
    for (const auto &e : trace.events) {
        text += '\n' + exact(e.time) + ',' + e.actor + ',' + e.action;
    }
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string trace_csv_row(const ProtocolTrace &trace) {
    return format_number(trace.params.h()) + ',' + format_number(trace.params.k()) + ',' +
           format_number(trace.latency) + ',' + format_number(trace.e_a) + ',' + format_number(trace.e_b_extracted) +
           ',' + format_number(trace.uncertainty_product) + ',' + to_string(trace.verdict);
}

}  // namespace qetlab
