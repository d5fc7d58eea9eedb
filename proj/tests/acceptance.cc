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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "qetlab/audit.h"
#include "qetlab/locc.h"
#include "qetlab/model.h"
#include "qetlab/protocol.h"
#include "qetlab/wire.h"

#ifdef QETLAB_HAVE_CLI
#include "cli_app.h"
#endif

using namespace qetlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok && pass) {
            detail = what;
        }
        pass = pass && ok;
    }
};

std::string fmt(const char *pattern, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

double rel(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

Outcome ground_state_suite() {
    Outcome o;
    double worst_local = 0, worst_eig = 0, worst_fid = 0;
    for (const auto &p : oracle::random_model_params()) {
        auto hams = build_hamiltonians(p);
        auto closed = ground_state_closed_form(p);
        auto numeric = ground_state_numeric(p);
        for (const auto *op : {&hams.h_a, &hams.h_b, &hams.v}) {
            worst_local = std::max(worst_local, std::abs(expectation(closed.state, *op)));
            worst_local = std::max(worst_local, std::abs(expectation(numeric.state, *op)));
        }
        worst_eig = std::max(worst_eig, std::abs(hermitian_eig(hams.h_tot).eigenvalues[0]));
        worst_fid = std::max(worst_fid, 1 - std::norm(inner(closed.state, numeric.state)));
    }
    o.require(worst_local <= 1e-10, "local expectation " + fmt("%.3g", worst_local));
    o.require(worst_eig <= 1e-10, "lowest eigenvalue " + fmt("%.3g", worst_eig));
    o.require(worst_fid <= 1e-12, "infidelity " + fmt("%.3g", worst_fid));
    if (o.pass) {
        o.detail = fmt("max |<local>| %.2g, |lambda_0| %.2g, 1-F %.2g", worst_local, worst_eig, worst_fid);
    }
    return o;
}

Outcome measurement_suite() {
    Outcome o;
    double worst_prob = 0, worst_rel = 0;
    for (const auto &p : oracle::random_model_params()) {
        auto hams = build_hamiltonians(p);
        auto branches = measure_alice(ground_state_numeric(p));
        for (const auto &b : branches) {
            worst_prob = std::max(worst_prob, std::abs(b.probability - 0.5));
        }
        worst_rel = std::max(worst_rel, rel(infused_energy(branches, hams), e_a_closed(p)));
    }
    o.require(worst_prob <= 1e-12, "branch probability deviation " + fmt("%.3g", worst_prob));
    o.require(worst_rel <= 1e-10, "infused energy relative error " + fmt("%.3g", worst_rel));
    if (o.pass) {
        o.detail = fmt("max |p-1/2| %.2g, E_A rel err %.2g", worst_prob, worst_rel);
    }
    return o;
}

Outcome diffusion_suite() {
    Outcome o;
    double worst_abs = 0, worst_peak = 0;
    for (auto [h, k] : {std::pair{3.0, 4.0}, {1.0, 1.0}, {5.0, 1.0}}) {
        ModelParams p(h, k);
        auto hams = build_hamiltonians(p);
        auto branches = measure_alice(ground_state_numeric(p));
        double t_max = 2 * std::numbers::pi / k;
        for (int i = 0; i < 200; i++) {
            double t = t_max * i / 199;
            double sim = average_expectation(evolve_branches(branches, hams, t), hams.h_b);
            worst_abs = std::max(worst_abs, std::abs(sim - hb_expected(p, t)));
        }
        double peak_time = diffusion_period(p) / 2;
        double peak = average_expectation(evolve_branches(branches, hams, peak_time), hams.h_b);
        worst_peak = std::max(worst_peak, std::abs(peak - h * h / std::sqrt(h * h + k * k)));
    }
    o.require(worst_abs <= 1e-8, "<H_B(t)> deviation " + fmt("%.3g", worst_abs));
    o.require(worst_peak <= 1e-9, "peak deviation " + fmt("%.3g", worst_peak));
    if (o.pass) {
        o.detail = fmt("max |<H_B(t)> - closed| %.2g, peak err %.2g", worst_abs, worst_peak);
    }
    return o;
}

Outcome extraction_suite() {
    Outcome o;
    double worst_rel = 0;
    std::string excess;
    for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        auto p = ModelParams::from_alpha(alpha);
        auto hams = build_hamiltonians(p);
        auto branches = measure_alice(ground_state_numeric(p));
        auto family = optimize_bob(branches, hams, {}, BobMode::family);
        auto full = optimize_bob(branches, hams, {}, BobMode::full);
        worst_rel = std::max(worst_rel, rel(family.extracted_energy, e_b_closed(p)));
        o.require(full.extracted_energy >= family.extracted_energy - 1e-9,
                  fmt("full below family at alpha=%g", alpha));
        double d = full.extracted_energy - family.extracted_energy;
        if (d > 1e-9) {
            excess += fmt(" alpha=%g:+%.6g", alpha, d);
        }
    }
    o.require(worst_rel <= 1e-6, "family vs closed form " + fmt("%.3g", worst_rel));
    if (o.pass) {
        o.detail = fmt("family rel err %.2g; full-SU(2) excess:", worst_rel) + (excess.empty() ? " none" : excess);
    }
    return o;
}

Outcome passivity_suite() {
    Outcome o;
    double best_uninformed = -INFINITY, best_unmeasured = -INFINITY;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> gauss;
    for (const auto &p : oracle::random_model_params()) {
        auto hams = build_hamiltonians(p);
        auto ground = ground_state_numeric(p);
        auto branches = measure_alice(ground);
        best_uninformed =
            std::max(best_uninformed, optimize_bob(branches, hams, {}, BobMode::uninformed).extracted_energy);
        double e0 = expectation(ground.state, hams.h_tot);
        for (int i = 0; i < 500; i++) {
            Axis axis{gauss(rng), gauss(rng), gauss(rng)};
            double n = std::hypot(axis[0], axis[1], axis[2]);
            for (auto &a : axis) {
                a /= n;
            }
            auto u = kron(pauli::identity(), su2(angle(rng), axis));
            best_unmeasured = std::max(best_unmeasured, e0 - expectation(u * ground.state, hams.h_tot));
        }
    }
    o.require(best_uninformed <= 1e-9, "mu-independent extraction " + fmt("%.3g", best_uninformed));
    o.require(best_unmeasured <= 1e-12, "unmeasured extraction " + fmt("%.3g", best_unmeasured));
    if (o.pass) {
        o.detail = fmt("best mu-independent %.2g, best on unmeasured ground %.2g", best_uninformed, best_unmeasured);
    }
    return o;
}

Outcome alpha_scan_suite() {
    Outcome o;
    auto scan = scan_alpha({0.01, 20, 10000});
    auto doubled = scan_alpha({0.01, 20, 20000});
    double top = *std::max_element(scan.values.begin(), scan.values.end());
    o.require(top < 1, "f(alpha) reaches " + fmt("%.6g", top));
    o.require(scan.max_value > 0.10 && scan.max_value < 0.16, "max outside (0.10, 0.16)");
    double drift = std::abs(scan.max_value - doubled.max_value);
    o.require(drift < 1e-8, "grid-doubling drift " + fmt("%.3g", drift));
    std::string d = fmt("computed max f = %.12g at alpha = %.9g; reported about %g", scan.max_value,
                        scan.argmax_alpha, kReferenceMaxF);
    o.detail = o.pass ? d + fmt("; doubling drift %.2g", drift) : o.detail + "; " + d;
    return o;
}

Outcome contradiction_suite() {
    Outcome o;
    double worst_product = 0, worst_boundary = 0;
    for (double alpha : AlphaGrid{}.values()) {
        for (double k : {1.0, 2.5}) {
            auto p = ModelParams::from_alpha(alpha, k);
            for (double frac : {0.0, 0.1, 0.5, 0.9, 1.0}) {
                auto r = audit_minimal(p, frac / k);
                worst_product = std::max(worst_product, r.product);
                o.require(r.product < 1 && r.verdict == Verdict::unobservable,
                          fmt("observable at alpha=%g t*k=%g", alpha, frac));
            }
            worst_boundary = std::max(worst_boundary, std::abs(audit_minimal(p, 1 / k).product - f_alpha(alpha)));
        }
    }
    o.require(worst_boundary <= 1e-10, "boundary product vs f " + fmt("%.3g", worst_boundary));
    if (o.pass) {
        o.detail = fmt("max product %.12g, boundary err %.2g", worst_product, worst_boundary);
    }
    return o;
}

Outcome ion_suite() {
    Outcome o;
    double worst_sub = 0, worst_arg = 0, worst_product = 0;
    for (double gamma : {0.1, 0.5, 1.0}) {
        for (double zeta : {0.1, 1.0, 2.0, 5.0, 20.0}) {
            for (double nu : {0.1, 1.0, 10.0}) {
                for (double phi : {0.0, 0.3, std::numbers::pi / 8, std::numbers::pi / 4}) {
                    IonParams ip(gamma, zeta, nu, phi);
                    for (double e : {0.01, 0.5, 1.0, 3.0, 10.0}) {
                        double direct = gamma * e * std::exp(-zeta * e / nu) * std::pow(std::sin(2 * phi), 2);
                        double got = ion_output(ip, e);
                        double err = direct == 0 ? std::abs(got) : rel(got, direct);
                        worst_sub = std::max(worst_sub, err);
                    }
                    if (phi == std::numbers::pi / 4) {
                        worst_arg = std::max(worst_arg, rel(ion_maximize(ip).e_in_star, nu / zeta));
                    }
                    if (zeta >= 1) {
                        for (double frac : {0.1, 0.5, 1.0}) {
                            auto r = audit_ion(ip, frac / nu);
                            worst_product = std::max(worst_product, r.product);
                            o.require(r.product < 1 && r.verdict == Verdict::unobservable,
                                      fmt("ion observable at zeta=%g gamma=%g", zeta, gamma));
                        }
                    }
                }
            }
        }
    }
    o.require(worst_sub <= 1e-12, "substitution error " + fmt("%.3g", worst_sub));
    o.require(worst_arg <= 1e-8, "argmax error " + fmt("%.3g", worst_arg));
    bool flagged = audit_ion(IonParams(1.0, 0.1, 1.0, std::numbers::pi / 4), 1.0).regime_flagged;
    o.require(flagged, "zeta=0.1 gamma=1 not flagged");
    if (o.pass) {
        o.detail = fmt("substitution err %.2g, argmax err %.2g, max product %.6g; zeta=0.1 flagged", worst_sub,
                       worst_arg, worst_product);
    }
    return o;
}

Outcome determinism_suite() {
    Outcome o;
    for (auto p : {ModelParams(3, 4), ModelParams::from_alpha(2.0)}) {
        for (double latency : {0.0, 0.25, 1.0}) {
            for (std::uint64_t seed : {0u, 1u, 7u}) {
                RunOptions opt;
                opt.seed = seed;
                auto reference = trace_digest(run_once(p, latency, opt));
                o.require(trace_digest(run_once(p, latency, opt)) == reference, "repeat digest differs");
                auto [alice_end, bob_end] = socket_stream_pair();
                auto bob = std::async(std::launch::async, [&, stream = std::move(bob_end)]() mutable {
                    return run_bob_over(stream, p, latency, opt);
                });
                auto alice_trace = run_alice_over(alice_end, p, latency, opt);
                auto bob_trace = bob.get();
                o.require(trace_digest(alice_trace) == reference && trace_digest(bob_trace) == reference,
                          "wire digest differs from in-process");
            }
        }
    }
    double worst = 0;
    for (auto p : {ModelParams(3, 4), ModelParams::from_alpha(2.0), ModelParams(1, 1)}) {
        auto traces = sweep_latency(p, {0.0, 1e-6 / p.k()});
        worst = std::max(worst, rel(traces.back().e_b_extracted, e_b_closed(p)));
    }
    o.require(worst <= 1e-6, "E_B(t_c = 1e-6/k) rel err " + fmt("%.3g", worst));
    if (o.pass) {
        o.detail = fmt("18 digests match across repeat and wire; E_B(1e-6/k) rel err %.2g", worst);
    }
    return o;
}

Outcome cli_fixture_suite() {
    Outcome o;
#ifdef QETLAB_HAVE_CLI
    struct Case {
        std::vector<std::string> args;
        const char *golden;
    };
    std::vector<Case> cases = {
        {{"model", "--h", "3", "--k", "4"}, "model_h3_k4.txt"},
        {{"scan-alpha", "--points", "100"}, "scan_alpha_100.csv"},
        {{"audit", "minimal", "--alpha", "2", "--time", "0.25"}, "audit_minimal.json"},
        {{"audit", "ion", "--gamma", "0.5", "--zeta", "2", "--nu", "1", "--time", "1"}, "audit_ion.json"},
    };
    for (const auto &c : cases) {
        std::ostringstream out, err;
        int code = run_cli(c.args, out, err);
        std::ifstream in(std::string(QETLAB_GOLDEN_DIR) + "/" + c.golden, std::ios::binary);
        o.require(in.is_open(), std::string("missing ") + c.golden);
        std::stringstream expected;
        expected << in.rdbuf();
        o.require(code == 0 && out.str() == expected.str(), std::string("mismatch against ") + c.golden);
    }
    if (o.pass) {
        o.detail = "4 fixtures byte-identical";
    }
#else
    o.require(false, "built without the CLI");
#endif
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"ground state", ground_state_suite},
        {"measurement", measurement_suite},
        {"diffusion", diffusion_suite},
        {"extraction", extraction_suite},
        {"passivity", passivity_suite},
        {"alpha scan", alpha_scan_suite},
        {"minimal-model audit", contradiction_suite},
        {"trapped-ion audit", ion_suite},
        {"LOCC determinism", determinism_suite},
        {"CLI fixtures", cli_fixture_suite},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %2zu %-20s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
