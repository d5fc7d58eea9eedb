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

#include "cli_app.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qetlab/audit.h"
#include "qetlab/errors.h"
#include "qetlab/format.h"
#include "qetlab/locc.h"
#include "qetlab/model.h"
#include "qetlab/protocol.h"
#include "qetlab/tolerances.h"
#include "qetlab/wire.h"

namespace qetlab {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamOptions {
    double h = 0;
    double k = 0;
    double alpha = 0;
    CLI::Option *h_opt = nullptr;
    CLI::Option *k_opt = nullptr;
    CLI::Option *alpha_opt = nullptr;

    void attach(CLI::App *sub) {
        h_opt = sub->add_option("--h", h, "Site energy h (> 0)");
        k_opt = sub->add_option("--k", k, "Coupling energy k (> 0)");
        alpha_opt = sub->add_option("--alpha", alpha, "Ratio h/k; sets k = 1 so energies are in units of k");
    }

    bool alpha_mode() const {
        return alpha_opt->count() > 0;
    }

    ModelParams resolve() const {
        if (alpha_mode()) {
            if (h_opt->count() || k_opt->count()) {
                throw UsageError("--alpha cannot be combined with --h/--k");
            }
            return ModelParams::from_alpha(alpha, 1.0);
        }
        if (!h_opt->count() || !k_opt->count()) {
            throw UsageError("supply both --h and --k, or --alpha");
        }
        return ModelParams(h, k);
    }
};

struct RunFlags {
    std::string policy = "optimize";
    std::string bob = "family";
    std::uint64_t seed = 0;

    void attach(CLI::App *sub) {
        sub->add_option("--policy", policy, "Bob's policy: optimize | closed-form")
            ->check(CLI::IsMember({"optimize", "closed-form"}));
        sub->add_option("--bob", bob, "Bob's unitary parametrization when optimizing: family | full")
            ->check(CLI::IsMember({"family", "full"}));
        sub->add_option("--seed", seed, "Seed for the sampled outcome bit");
    }

    RunOptions options() const {
        RunOptions o;
        o.policy = policy == "optimize" ? BobPolicy::optimize : BobPolicy::closed_form_theta;
        o.mode = bob == "full" ? BobMode::full : BobMode::family;
        o.seed = seed;
        return o;
    }
};

std::vector<double> parse_latencies(const std::string &spec) {
    auto to_double = [&](const std::string &s) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            throw UsageError("bad latency value '" + s + "'");
        }
        if (used != s.size()) {
            throw UsageError("bad latency value '" + s + "'");
        }
        return v;
    };
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ':')) {
            parts.push_back(item);
        }
        if (parts.size() != 3) {
            throw UsageError("latency range must be start:stop:step");
        }
        double start = to_double(parts[0]);
        double stop = to_double(parts[1]);
        double step = to_double(parts[2]);
        if (!(step > 0) || stop < start) {
            throw UsageError("latency range needs step > 0 and stop >= start");
        }
        long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long i = 0; i < count; i++) {
            out.push_back(start + step * static_cast<double>(i));
        }
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(to_double(item));
        }
    }
    if (out.empty()) {
        throw UsageError("empty latency grid");
    }
    return out;
}

std::string pad(const std::string &s, std::size_t width) {
    return s.size() >= width ? s + ' ' : s + std::string(width - s.size(), ' ');
}

struct Check {
    std::string name;
    double closed_form;
    double numeric;
    double tolerance;

    double residual() const {
        return std::abs(closed_form - numeric);
    }
    bool ok() const {
        return residual() <= tolerance;
    }
};

struct ModelReport {
    ModelParams params;
    bool alpha_mode;
    std::array<double, 4> spectrum;
    StateVector ground;
    double e_a;
    double e_b;
    double period;
    double theta_star;
    std::vector<Check> checks;
};

ModelReport build_model_report(const ModelParams &p, bool alpha_mode) {
    HamiltonianSet hams = build_hamiltonians(p);
    auto spectrum = hermitian_eig(hams.h_tot);
    GroundState closed = ground_state_closed_form(p);
    GroundState numeric = ground_state_numeric(p);
    Branches branches = measure_alice(closed);
    OptimizerConfig cfg;
    auto extraction = optimize_bob(branches, hams, cfg, BobMode::family);
    double peak_time = std::numbers::pi / (4 * p.k());
    double peak_sim = average_expectation(evolve_branches(branches, hams, peak_time), hams.h_b);

    auto closed_spectrum = spectrum_closed_form(p);
    double spectrum_dev = 0;
    for (int i = 0; i < 4; i++) {
        spectrum_dev = std::max(spectrum_dev, std::abs(closed_spectrum[i] - spectrum.eigenvalues[i]));
    }
    double fidelity = std::norm(inner(closed.state, numeric.state));
    double scale = std::max(1.0, e_a_closed(p));

    ModelReport r{p, alpha_mode, closed_spectrum, closed.state, e_a_closed(p), e_b_closed(p), diffusion_period(p),
                  family_theta_closed_form(p), {}};
    r.checks = {
        {"spectrum_max_dev", 0.0, spectrum_dev, 1e-9},
        {"ground_energy", 0.0, spectrum.eigenvalues[0], Tolerances::residual},
        {"ground_fidelity", 1.0, fidelity, Tolerances::structural},
        {"ground_<H_A>", 0.0, expectation(closed.state, hams.h_a), Tolerances::residual},
        {"ground_<H_B>", 0.0, expectation(closed.state, hams.h_b), Tolerances::residual},
        {"ground_<V>", 0.0, expectation(closed.state, hams.v), Tolerances::residual},
        {"branch_probability", 0.5, branches[0].probability, Tolerances::structural},
        {"E_A", r.e_a, infused_energy(branches, hams), Tolerances::residual * scale},
        {"H_B_peak", r.e_a, peak_sim, 1e-9 * scale},
        {"E_B", r.e_b, extraction.extracted_energy, 1e-6 * r.e_b},
    };
    return r;
}

std::string model_table(const ModelReport &r) {
    std::ostringstream out;
    const auto &p = r.params;
    out << "qetlab model\n";
    out << "h = " << format_number(p.h()) << '\n';
    out << "k = " << format_number(p.k()) << '\n';
    out << "alpha = h/k = " << format_number(p.alpha()) << '\n';
    if (r.alpha_mode) {
        out << "units: k = 1 (energies in units of k)\n";
    }
    out << "sqrt(h^2+k^2) = " << format_number(p.gap_scale()) << '\n';
    out << "spectrum =";
    for (double e : r.spectrum) {
        out << ' ' << format_number(e);
    }
    out << '\n';
    out << "ground state (|++>, |+->, |-+>, |-->) =";
    for (std::size_t i = 0; i < 4; i++) {
        out << ' ' << format_number(r.ground[i].real());
    }
    out << '\n';
    out << "E_A = " << format_number(r.e_a) << '\n';
    out << "E_B = " << format_number(r.e_b) << '\n';
    out << "diffusion period pi/(2k) = " << format_number(r.period) << '\n';
    out << "bob family angle = " << format_number(r.theta_star) << '\n';
    out << '\n';
    out << pad("check", 20) << pad("closed_form", 20) << pad("numeric", 20) << pad("residual", 12)
        << pad("tolerance", 12) << "status\n";
    for (const auto &c : r.checks) {
        out << pad(c.name, 20) << pad(format_number(c.closed_form), 20) << pad(format_number(c.numeric), 20)
            << pad(format_number(c.residual()), 12) << pad(format_number(c.tolerance), 12) << (c.ok() ? "ok" : "FAIL")
            << '\n';
    }
    return out.str();
}

std::string model_json(const ModelReport &r) {
    ordered_json j;
    j["h"] = round_for_output(r.params.h());
    j["k"] = round_for_output(r.params.k());
    j["alpha"] = round_for_output(r.params.alpha());
    j["spectrum"] = ordered_json::array();
    for (double e : r.spectrum) {
        j["spectrum"].push_back(round_for_output(e));
    }
    j["ground_state"] = ordered_json::array();
    for (std::size_t i = 0; i < 4; i++) {
        j["ground_state"].push_back(round_for_output(r.ground[i].real()));
    }
    j["e_a"] = round_for_output(r.e_a);
    j["e_b"] = round_for_output(r.e_b);
    j["diffusion_period"] = round_for_output(r.period);
    j["bob_family_angle"] = round_for_output(r.theta_star);
    j["checks"] = ordered_json::array();
    for (const auto &c : r.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"closed_form", round_for_output(c.closed_form)},
                               {"numeric", round_for_output(c.numeric)},
                               {"residual", round_for_output(c.residual())},
                               {"tolerance", c.tolerance},
                               {"ok", c.ok()}});
    }
    return j.dump() + "\n";
}

ordered_json trace_json(const ProtocolTrace &t) {
    ordered_json j;
    j["h"] = round_for_output(t.params.h());
    j["k"] = round_for_output(t.params.k());
    j["t_c"] = round_for_output(t.latency);
    j["e_a"] = round_for_output(t.e_a);
    j["e_b"] = round_for_output(t.e_b_extracted);
    j["product"] = round_for_output(t.uncertainty_product);
    j["verdict"] = to_string(t.verdict);
    j["mu"] = t.mu;
    j["events"] = ordered_json::array();
    for (const auto &e : t.events) {
        j["events"].push_back({{"time", round_for_output(e.time)}, {"actor", e.actor}, {"action", e.action}});
    }
    j["digest"] = trace_digest(t);
    return j;
}

std::string traces_output(const std::vector<ProtocolTrace> &traces, const std::string &format, bool with_digest) {
    std::ostringstream out;
    if (format == "json") {
        for (const auto &t : traces) {
            out << trace_json(t).dump() << '\n';
        }
        return out.str();
    }
    out << kTraceCsvHeader << '\n';
    for (const auto &t : traces) {
        out << trace_csv_row(t) << '\n';
    }
    if (with_digest) {
        for (const auto &t : traces) {
            out << "# digest=" << trace_digest(t) << '\n';
        }
    }
    return out.str();
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string &endpoint, const std::string &default_host) {
    std::string host = default_host;
    std::string port_text = endpoint;
    auto colon = endpoint.rfind(':');
    if (colon != std::string::npos) {
        host = endpoint.substr(0, colon);
        port_text = endpoint.substr(colon + 1);
    }
    int port = 0;
    try {
        std::size_t used = 0;
        port = std::stoi(port_text, &used);
        if (used != port_text.size()) {
            throw std::invalid_argument("trailing");
        }
    } catch (const std::exception &) {
        throw UsageError("bad endpoint '" + endpoint + "'");
    }
    if (port < 0 || port > 65535) {
        throw UsageError("port out of range in '" + endpoint + "'");
    }
    return {host, static_cast<std::uint16_t>(port)};
}

void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    file << text;
    if (!file) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum energy teleportation laboratory: exact two-qubit simulation and observability audits",
                 "qetlab"};
    // --h is a model parameter, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    std::string output_path;

    auto *model = app.add_subcommand("model", "Hamiltonians, ground state and closed-form vs numeric cross-checks");
    ParamOptions model_params;
    model_params.attach(model);
    std::string model_format = "table";
    model->add_option("--format", model_format, "table | json")->check(CLI::IsMember({"table", "json"}));
    model->add_option("--output", output_path, "Write to this file instead of stdout");

    auto *scan = app.add_subcommand("scan-alpha", "Tabulate f(alpha) = E_B/k and locate its maximum");
    AlphaGrid grid;
    scan->add_option("--points", grid.points, "Number of grid points")->capture_default_str();
    scan->add_option("--min-alpha", grid.min_alpha, "Smallest alpha")->capture_default_str();
    scan->add_option("--max-alpha", grid.max_alpha, "Largest alpha")->capture_default_str();
    scan->add_option("--output", output_path, "Write to this file instead of stdout");

    auto *run = app.add_subcommand("run", "One protocol round with a classical-channel latency");
    ParamOptions run_params;
    run_params.attach(run);
    RunFlags run_flags;
    run_flags.attach(run);
    double latency = 0;
    std::string run_format = "csv";
    std::string wire_role;
    std::string listen_endpoint;
    std::string connect_endpoint;
    run->add_option("--latency", latency, "Model-time delay t_c before Bob acts (1/energy units)");
    run->add_option("--format", run_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--wire", wire_role, "Run one party over TCP: alice | bob")
        ->check(CLI::IsMember({"alice", "bob"}));
    run->add_option("--listen", listen_endpoint, "[HOST:]PORT to listen on (wire mode)");
    run->add_option("--connect", connect_endpoint, "HOST:PORT to connect to (wire mode)");
    run->add_option("--output", output_path, "Write to this file instead of stdout");

    auto *sweep = app.add_subcommand("sweep", "Protocol rounds over a latency grid");
    ParamOptions sweep_params;
    sweep_params.attach(sweep);
    RunFlags sweep_flags;
    sweep_flags.attach(sweep);
    std::string latencies;
    std::string sweep_format = "csv";
    sweep->add_option("--latencies", latencies, "start:stop:step (inclusive) or a comma-separated list")
        ->required();
    sweep->add_option("--format", sweep_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--output", output_path, "Write to this file instead of stdout");

    auto *audit = app.add_subcommand("audit", "Energy-time uncertainty audit of a teleported-energy claim");
    audit->require_subcommand(1);
    auto *audit_minimal_cmd = audit->add_subcommand("minimal", "Two-qubit model: E_B * t");
    ParamOptions audit_params;
    audit_params.attach(audit_minimal_cmd);
    double audit_time = 0;
    audit_minimal_cmd->add_option("--time", audit_time, "Teleportation time t (1/energy units)")->required();
    audit_minimal_cmd->add_option("--output", output_path, "Write to this file instead of stdout");

    auto *audit_ion_cmd = audit->add_subcommand("ion", "Trapped-ion protocol: phonon-scale E_out * t");
    // Illustrative defaults, not measured crystal values.
    double gamma = 0.5;
    double zeta = 2.0;
    double nu = 1.0;
    double phi = std::numbers::pi / 4;
    double ion_time = 0;
    audit_ion_cmd->add_option("--gamma", gamma, "gamma_N in (0, 1] (illustrative default)")->capture_default_str();
    audit_ion_cmd->add_option("--zeta", zeta, "zeta_N > 0 (illustrative default)")->capture_default_str();
    audit_ion_cmd->add_option("--nu", nu, "Phonon energy nu > 0")->capture_default_str();
    audit_ion_cmd->add_option("--phi", phi, "Angle phi (radians)")->capture_default_str();
    audit_ion_cmd->add_option("--time", ion_time, "Teleportation time t (1/energy units)")->required();
    audit_ion_cmd->add_option("--output", output_path, "Write to this file instead of stdout");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.push_back("qetlab");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_store) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "qetlab: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*model) {
            ModelReport report = build_model_report(model_params.resolve(), model_params.alpha_mode());
            emit(model_format == "json" ? model_json(report) : model_table(report), output_path, out);
            for (const auto &c : report.checks) {
                if (!c.ok()) {
                    err << "qetlab: residual above tolerance for " << c.name << '\n';
                    return kExitNumeric;
                }
            }
        } else if (*scan) {
            emit(alpha_scan_csv(scan_alpha(grid)), output_path, out);
        } else if (*run) {
            ModelParams p = run_params.resolve();
            RunOptions options = run_flags.options();
            ProtocolTrace trace;
            if (wire_role.empty()) {
                if (!listen_endpoint.empty() || !connect_endpoint.empty()) {
                    throw UsageError("--listen/--connect need --wire");
                }
                trace = run_once(p, latency, options);
            } else {
                bool listening = !listen_endpoint.empty();
                if (listening == !connect_endpoint.empty()) {
                    throw UsageError("wire mode needs exactly one of --listen or --connect");
                }
                std::unique_ptr<TcpListener> listener;
                std::unique_ptr<SocketLineStream> stream;
                if (listening) {
                    auto [host, port] = parse_endpoint(listen_endpoint, "127.0.0.1");
                    listener = std::make_unique<TcpListener>(host, port);
                    err << "qetlab: listening on " << host << ':' << listener->port() << '\n';
                    stream = std::make_unique<SocketLineStream>(listener->accept_one());
                } else {
                    auto [host, port] = parse_endpoint(connect_endpoint, "127.0.0.1");
                    stream = std::make_unique<SocketLineStream>(tcp_connect(host, port));
                }
                trace = wire_role == "alice" ? run_alice_over(*stream, p, latency, options)
                                             : run_bob_over(*stream, p, latency, options);
            }
            emit(traces_output({trace}, run_format, true), output_path, out);
        } else if (*sweep) {
            ModelParams p = sweep_params.resolve();
            auto traces = sweep_latency(p, parse_latencies(latencies), sweep_flags.options());
            emit(traces_output(traces, sweep_format, false), output_path, out);
        } else if (*audit_minimal_cmd) {
            emit(audit_report_json(audit_minimal(audit_params.resolve(), audit_time)) + "\n", output_path, out);
        } else if (*audit_ion_cmd) {
            emit(audit_report_json(audit_ion(IonParams(gamma, zeta, nu, phi), ion_time)) + "\n", output_path, out);
        }
    } catch (const UsageError &e) {
        err << "qetlab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidInput &e) {
        err << "qetlab: invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericFailure &e) {
        err << "qetlab: numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception &e) {
        err << "qetlab: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace qetlab
