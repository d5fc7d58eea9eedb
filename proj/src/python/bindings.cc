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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qetlab/audit.h"
#include "qetlab/errors.h"
#include "qetlab/format.h"
#include "qetlab/locc.h"
#include "qetlab/model.h"
#include "qetlab/protocol.h"

namespace py = pybind11;
using namespace qetlab;

namespace {

py::dict report_dict(const AuditReport &r) {
    py::dict d;
    d["protocol"] = to_string(r.protocol);
    d["energy"] = r.energy;
    d["time"] = r.time;
    d["product"] = r.product;
    d["threshold"] = r.threshold;
    d["verdict"] = to_string(r.verdict);
    d["notes"] = r.notes;
    d["regime_flagged"] = r.regime_flagged;
    return d;
}

py::dict trace_dict(const ProtocolTrace &t) {
    py::dict d;
    d["h"] = t.params.h();
    d["k"] = t.params.k();
    d["latency"] = t.latency;
    d["e_a"] = t.e_a;
    d["e_b"] = t.e_b_extracted;
    d["uncertainty_product"] = t.uncertainty_product;
    d["verdict"] = to_string(t.verdict);
    d["mu"] = t.mu;
    d["mode"] = to_string(t.control.mode);
    py::list events;
    for (const auto &e : t.events) {
        events.append(py::make_tuple(e.time, e.actor, e.action));
    }
    d["events"] = events;
    d["digest"] = trace_digest(t);
    return d;
}

RunOptions run_options(const std::string &policy, const std::string &bob, std::uint64_t seed) {
    RunOptions o;
    if (policy == "closed-form") {
        o.policy = BobPolicy::closed_form_theta;
    } else if (policy != "optimize") {
        throw InvalidInput("policy must be 'optimize' or 'closed-form'");
    }
    if (bob == "full") {
        o.mode = BobMode::full;
    } else if (bob != "family") {
        throw InvalidInput("bob must be 'family' or 'full'");
    }
    o.seed = seed;
    return o;
}

}  // namespace

PYBIND11_MODULE(_qetlab, m) {
    m.doc() = "Two-qubit energy teleportation model, LOCC runner and uncertainty audits";

    py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_RuntimeError);
    py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double>(), py::arg("h"), py::arg("k"))
        .def_static("from_alpha", &ModelParams::from_alpha, py::arg("alpha"), py::arg("k") = 1.0)
        .def_property_readonly("h", &ModelParams::h)
        .def_property_readonly("k", &ModelParams::k)
        .def_property_readonly("alpha", &ModelParams::alpha)
        .def("__repr__", [](const ModelParams &p) {
            return "ModelParams(h=" + format_number(p.h()) + ", k=" + format_number(p.k()) + ")";
        });

    m.def("ground_energy", [](const ModelParams &p) { return ground_state_numeric(p).energy; });
    m.def("spectrum", &spectrum_closed_form);
    m.def("e_a", &e_a_closed, "Energy infused by Alice's measurement");
    m.def("e_b", &e_b_closed, "Closed-form maximum energy Bob extracts at zero latency");
    m.def("hb_expected", &hb_expected, py::arg("params"), py::arg("t"));
    m.def("f_alpha", &f_alpha, py::arg("alpha"));

    m.def(
        "extract",
        [](const ModelParams &p, double latency, const std::string &bob) {
            if (bob != "full" && bob != "uninformed" && bob != "family") {
                throw InvalidInput("bob must be 'family', 'full' or 'uninformed'");
            }
            BobMode mode = bob == "full" ? BobMode::full : bob == "uninformed" ? BobMode::uninformed : BobMode::family;
            auto hams = build_hamiltonians(p);
            auto branches = evolve_branches(measure_alice(ground_state_numeric(p)), hams, latency);
            return optimize_bob(branches, hams, {}, mode).extracted_energy;
        },
        py::arg("params"), py::arg("latency") = 0.0, py::arg("bob") = "family",
        "Optimized energy extracted by Bob after the given latency");

    m.def(
        "scan_alpha",
        [](int points, double min_alpha, double max_alpha) {
            auto s = scan_alpha({min_alpha, max_alpha, points});
            py::dict d;
            d["alpha"] = s.grid;
            d["f_alpha"] = s.values;
            d["argmax_alpha"] = s.argmax_alpha;
            d["max_f_alpha"] = s.max_value;
            return d;
        },
        py::arg("points") = 10000, py::arg("min_alpha") = 0.01, py::arg("max_alpha") = 20.0);

    m.def(
        "run_once",
        [](const ModelParams &p, double latency, const std::string &policy, const std::string &bob,
           std::uint64_t seed) { return trace_dict(run_once(p, latency, run_options(policy, bob, seed))); },
        py::arg("params"), py::arg("latency") = 0.0, py::arg("policy") = "optimize", py::arg("bob") = "family",
        py::arg("seed") = 0);

    m.def(
        "sweep",
        [](const ModelParams &p, const std::vector<double> &latencies, const std::string &policy,
           const std::string &bob, std::uint64_t seed) {
            py::list out;
            for (const auto &t : sweep_latency(p, latencies, run_options(policy, bob, seed))) {
                out.append(trace_dict(t));
            }
            return out;
        },
        py::arg("params"), py::arg("latencies"), py::arg("policy") = "optimize", py::arg("bob") = "family",
        py::arg("seed") = 0);

    m.def(
        "audit_minimal", [](const ModelParams &p, double t) { return report_dict(audit_minimal(p, t)); },
        py::arg("params"), py::arg("time"));

    m.def(
        "audit_ion",
        [](double gamma, double zeta, double nu, double phi, double t) {
            return report_dict(audit_ion(IonParams(gamma, zeta, nu, phi), t));
        },
        py::arg("gamma"), py::arg("zeta"), py::arg("nu"), py::arg("phi"), py::arg("time"));

    m.def(
        "ion_maximize",
        [](double gamma, double zeta, double nu, double phi) {
            auto opt = ion_maximize(IonParams(gamma, zeta, nu, phi));
            return py::make_tuple(opt.e_in_star, opt.e_out_max);
        },
        py::arg("gamma"), py::arg("zeta"), py::arg("nu"), py::arg("phi"));
}
