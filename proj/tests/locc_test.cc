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

#include "gtest/gtest.h"
#include "qetlab/errors.h"

using namespace qetlab;

TEST(run_once, zero_latency_matches_closed_form) {
    auto trace = run_once(ModelParams(3, 4), 0.0);
    EXPECT_NEAR(trace.e_a, 1.8, 1e-10);
    EXPECT_NEAR(trace.e_b_extracted, e_b_closed(ModelParams(3, 4)), 1e-6 * 0.344);
    EXPECT_EQ(trace.uncertainty_product, 0.0);
    EXPECT_EQ(trace.verdict, Verdict::unobservable);
}

TEST(run_once, consistent_with_engine_at_zero_latency) {
    ModelParams p(2, 1);
    auto hams = build_hamiltonians(p);
    auto branches = measure_alice(ground_state_closed_form(p));
    auto direct = optimize_bob(branches, hams, OptimizerConfig{}, BobMode::family);
    EXPECT_NEAR(run_once(p, 0.0).e_b_extracted, direct.extracted_energy, 1e-10);
}

TEST(run_once, event_log_order) {
    auto trace = run_once(ModelParams(3, 4), 0.25);
    ASSERT_EQ(trace.events.size(), 4u);
    EXPECT_EQ(trace.events[0].actor, "alice");
    EXPECT_EQ(trace.events[0].action.rfind("measure", 0), 0u);
    EXPECT_EQ(trace.events[1].action.rfind("send", 0), 0u);
    EXPECT_EQ(trace.events[2].actor, "bob");
    EXPECT_EQ(trace.events[2].action.rfind("deliver", 0), 0u);
    EXPECT_EQ(trace.events[3].action.rfind("extract", 0), 0u);
    EXPECT_EQ(trace.events[0].time, 0.0);
    EXPECT_EQ(trace.events[1].time, 0.0);
    EXPECT_EQ(trace.events[2].time, 0.25);
    EXPECT_EQ(trace.events[3].time, 0.25);
}

TEST(run_once, trace_recomputable) {
    ModelParams p(1.5, 0.8);
    for (auto mode : {BobMode::family, BobMode::full}) {
        RunOptions o;
        o.mode = mode;
        auto trace = run_once(p, 0.4, o);
        auto hams = build_hamiltonians(p);
        auto evolved = evolve_branches(measure_alice(ground_state_closed_form(p)), hams, trace.latency);
        double again = extracted_energy(evolved, apply_bob(evolved, trace.control), hams);
        EXPECT_NEAR(trace.e_b_extracted, again, 1e-10);
        EXPECT_NEAR(trace.uncertainty_product, trace.e_b_extracted * trace.latency, 1e-12);
    }
}

TEST(run_once, bit_identical_repeats) {
    RunOptions o;
    o.mode = BobMode::full;
    auto a = run_once(ModelParams(3, 4), 0.3, o);
    auto b = run_once(ModelParams(3, 4), 0.3, o);
    EXPECT_EQ(trace_digest(a), trace_digest(b));
    EXPECT_EQ(a.e_b_extracted, b.e_b_extracted);
}

TEST(run_once, closed_form_policy) {
    RunOptions o;
    o.policy = BobPolicy::closed_form_theta;
    ModelParams p(3, 4);
    auto trace = run_once(p, 0.0, o);
    EXPECT_EQ(trace.control.family_theta, family_theta_closed_form(p));
    EXPECT_NEAR(trace.e_b_extracted, e_b_closed(p), 1e-12);
}

TEST(run_once, rejects_negative_latency) {
    EXPECT_THROW(run_once(ModelParams(1, 1), -0.1), InvalidInput);
}

TEST(parties, bob_checks_message_timing) {
    ModelParams p(1, 1);
    BobParty bob(p, 0.5, {});
    ChannelMessage late{"outcome", 0, 0.0, 0.6};
    EXPECT_THROW(bob.on_deliver(late), ProtocolError);
    ChannelMessage wrong_kind{"hello", 0, 0.0, 0.5};
    EXPECT_THROW(bob.on_deliver(wrong_kind), ProtocolError);
    ChannelMessage ok{"outcome", 1, 0.0, 0.5};
    auto trace = bob.on_deliver(ok);
    EXPECT_EQ(trace.mu, 1);
    EXPECT_THROW(bob.on_deliver(ok), ProtocolError);
}

TEST(parties, alice_measures_once) {
    AliceParty alice(ModelParams(1, 1), 0.5, 3);
    auto msg = alice.measure_and_send();
    EXPECT_EQ(msg.kind, "outcome");
    EXPECT_EQ(msg.deliver_at, 0.5);
    EXPECT_NEAR(alice.branches()[0].probability, 0.5, 1e-12);
    EXPECT_THROW(alice.measure_and_send(), ProtocolError);
}

TEST(sweep_latency, single_point_equals_run_once) {
    ModelParams p(3, 4);
    auto sweep = sweep_latency(p, {0.0});
    ASSERT_EQ(sweep.size(), 1u);
    EXPECT_EQ(trace_digest(sweep[0]), trace_digest(run_once(p, 0.0)));
}

TEST(sweep_latency, grid_validation) {
    ModelParams p(1, 1);
    EXPECT_THROW(sweep_latency(p, {}), InvalidInput);
    EXPECT_THROW(sweep_latency(p, {0.2, 0.1}), InvalidInput);
    EXPECT_THROW(sweep_latency(p, {-0.1, 0.1}), InvalidInput);
}

TEST(sweep_latency, continuous_curve) {
    ModelParams p = ModelParams::from_alpha(1.0);
    std::vector<double> grid;
    const double dt = 0.02;
    for (int i = 0; i <= 50; i++) {
        grid.push_back(i * dt);
    }
    auto traces = sweep_latency(p, grid);
    for (std::size_t i = 1; i < traces.size(); i++) {
        EXPECT_LE(std::abs(traces[i].e_b_extracted - traces[i - 1].e_b_extracted), 10 * p.k() * dt);
    }
}

TEST(sweep_latency, alpha_two_products) {
    // Bob is re-optimized at each latency. Energy that has diffused to B by ordinary transport
    // becomes extractable, so the product exceeds f(alpha*) t k near t = 1/k and crosses 1 there.
    auto p = ModelParams::from_alpha(2.0);
    std::vector<double> grid;
    for (int i = 0; i <= 10; i++) {
        grid.push_back(0.1 * i);
    }
    auto traces = sweep_latency(p, grid);
    ASSERT_EQ(traces.size(), 11u);
    for (const auto &t : traces) {
        if (t.latency <= 0.5 + 1e-12) {
            EXPECT_LT(t.uncertainty_product, 1.0) << "t_c=" << t.latency;
            EXPECT_EQ(t.verdict, Verdict::unobservable);
        }
    }
    EXPECT_NEAR(traces.back().e_b_extracted, 1.007320038, 1e-6);
    EXPECT_EQ(traces.back().verdict, Verdict::observable);
}

TEST(trace_csv, header_and_row) {
    auto trace = run_once(ModelParams(3, 4), 0.0);
    EXPECT_STREQ(kTraceCsvHeader, "h,k,t_c,e_a,e_b,product,verdict");
    EXPECT_EQ(trace_csv_row(trace), "3,4,0,1.8,0.344003745318,0,unobservable");
}
