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

#include "qetlab/protocol.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qetlab/errors.h"
#include "qetlab/optimize.h"
#include "qetlab/tolerances.h"

namespace qetlab {

namespace {

void check_mu(int mu) {
    if (mu != 0 && mu != 1) {
        throw InvalidInput("outcome index must be 0 or 1");
    }
}

double sign_of(int mu) {
    return mu == 0 ? 1.0 : -1.0;
}

/// Energy drop of one branch under I_A x U.
double branch_drop(const StateVector &state, double energy_before, const Matrix2 &u, const Matrix4 &h_tot) {
    StateVector after = kron(pauli::identity(), u) * state;
    return energy_before - expectation(after, h_tot);
}

// Deterministic start list for the SU(2) searches (rotation vectors).
const std::array<std::array<double, 3>, 6> kStarts{{
    {0.0, 0.0, 0.0},
    {0.4, 0.0, 0.0},
    {0.0, 0.4, 0.0},
    {0.0, 0.0, 0.4},
    {-0.3, 0.5, 0.2},
    {1.0, -0.6, 0.8},
}};

std::array<double, 3> to_array(const std::vector<double> &v) {
    return {v[0], v[1], v[2]};
}

}  // namespace

const char *to_string(BobMode mode) {
    switch (mode) {
        case BobMode::family:
            return "family";
        case BobMode::full:
            return "full";
        case BobMode::uninformed:
            return "uninformed";
    }
    return "?";
}

Su2Params Su2Params::from_rotation_vector(const std::array<double, 3> &r) {
    double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (!std::isfinite(len)) {
        throw InvalidInput("rotation vector must be finite");
    }
    if (len == 0) {
        return {};
    }
    return {len, {r[0] / len, r[1] / len, r[2] / len}};
}

BobControl BobControl::family(double theta) {
    if (!std::isfinite(theta)) {
        throw InvalidInput("family angle must be finite");
    }
    BobControl c;
    c.mode = BobMode::family;
    c.family_theta = theta;
    return c;
}

BobControl BobControl::full(const Su2Params &mu0, const Su2Params &mu1) {
    BobControl c;
    c.mode = BobMode::full;
    c.per_outcome = {mu0, mu1};
    return c;
}

BobControl BobControl::uninformed(const Su2Params &shared) {
    BobControl c;
    c.mode = BobMode::uninformed;
    c.per_outcome = {shared, shared};
    return c;
}

Matrix2 BobControl::unitary(int mu) const {
    check_mu(mu);
    if (mode == BobMode::family) {
        return su2(family_theta, {0.0, sign_of(mu), 0.0});
    }
    return per_outcome[mu].matrix();
}

void OptimizerConfig::validate() const {
    if (coarse_grid_points < 32) {
        throw InvalidInput("optimizer: coarse_grid_points must be at least 32");
    }
    if (!(refine_tolerance > 0) || !std::isfinite(refine_tolerance)) {
        throw InvalidInput("optimizer: refine_tolerance must be positive");
    }
    if (max_iterations < 1) {
        throw InvalidInput("optimizer: max_iterations must be positive");
    }
}

Matrix4 alice_projector(int mu) {
    check_mu(mu);
    return 0.5 * (Matrix4::identity() + sign_of(mu) * kron(pauli::x(), pauli::identity()));
}

Branches measure_alice(const GroundState &ground) {
    if (std::abs(ground.state.norm() - 1) > Tolerances::structural) {
        throw InvalidInput("measure_alice: state is not normalized");
    }
    Branches out;
    for (int mu = 0; mu < 2; mu++) {
        StateVector projected = alice_projector(mu) * ground.state;
        double p = std::norm(projected.norm());
        if (p <= Tolerances::structural) {
            throw NumericFailure("measure_alice: degenerate zero-probability branch");
        }
        out[mu] = {mu, p, projected.normalized()};
    }
    return out;
}

double average_expectation(const Branches &branches, const Matrix4 &op) {
    double acc = 0;
    for (const auto &b : branches) {
        acc += b.probability * expectation(b.state, op);
    }
    return acc;
}

double infused_energy(const Branches &branches, const HamiltonianSet &hams) {
    return average_expectation(branches, hams.h_tot);
}

Branches evolve_branches(const Branches &branches, const HamiltonianSet &hams, double t) {
    if (!std::isfinite(t) || t < 0) {
        throw InvalidInput("evolve_branches: time must be finite and non-negative");
    }
    if (t == 0) {
        return branches;
    }
    Matrix4 u = evolve_operator(hams.h_tot, t);
    Branches out = branches;
    for (auto &b : out) {
        b.state = u * b.state;
    }
    return out;
}

Branches apply_bob(const Branches &branches, const BobControl &control) {
    Branches out = branches;
    for (auto &b : out) {
        b.state = kron(pauli::identity(), control.unitary(b.mu)) * b.state;
    }
    return out;
}

double extracted_energy(const Branches &before, const Branches &after, const HamiltonianSet &hams) {
    double acc = 0;
    for (int mu = 0; mu < 2; mu++) {
        if (before[mu].mu != after[mu].mu || before[mu].probability != after[mu].probability) {
            throw InvalidInput("extracted_energy: branches do not correspond outcome by outcome");
        }
        acc += before[mu].probability *
               (expectation(before[mu].state, hams.h_tot) - expectation(after[mu].state, hams.h_tot));
    }
    return acc;
}

namespace {

ExtractionResult optimize_family(const Branches &branches, const HamiltonianSet &hams, const OptimizerConfig &cfg) {
    std::array<double, 2> before{expectation(branches[0].state, hams.h_tot), expectation(branches[1].state, hams.h_tot)};
    auto per_branch = [&](double theta, int mu) {
        return branch_drop(branches[mu].state, before[mu], su2(theta, {0.0, sign_of(mu), 0.0}), hams.h_tot);
    };
    auto objective = [&](double theta) {
        return branches[0].probability * per_branch(theta, 0) + branches[1].probability * per_branch(theta, 1);
    };

    // The objective has period pi in theta.
    const double pi = std::numbers::pi;
    const int n = cfg.coarse_grid_points;
    const double spacing = pi / n;
    int best_i = 0;
    double best_v = -INFINITY;
    for (int i = 0; i < n; i++) {
        double v = objective(-pi / 2 + spacing * i);
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }
    double center = -pi / 2 + spacing * best_i;
    auto refined = golden_section_maximize(objective, center - spacing, center + spacing, cfg.refine_tolerance,
                                           cfg.max_iterations);
    double theta = refined.x;
    if (theta < -pi / 2) {
        theta += pi;
    } else if (theta >= pi / 2) {
        theta -= pi;
    }
    if (best_v > refined.value) {
        theta = center;
    }

    ExtractionResult out;
    out.control = BobControl::family(theta);
    out.per_branch_energy = {per_branch(theta, 0), per_branch(theta, 1)};
    out.extracted_energy = objective(theta);
    return out;
}

NelderMeadOptions simplex_options(const OptimizerConfig &cfg) {
    NelderMeadOptions o;
    o.x_tol = cfg.refine_tolerance;
    o.max_iterations = cfg.max_iterations;
    return o;
}

ExtractionResult optimize_full(const Branches &branches, const HamiltonianSet &hams, const OptimizerConfig &cfg) {
    ExtractionResult family = optimize_family(branches, hams, cfg);
    std::array<Su2Params, 2> best_params;
    std::array<double, 2> best_drop{};
    for (int mu = 0; mu < 2; mu++) {
        const StateVector &state = branches[mu].state;
        double before = expectation(state, hams.h_tot);
        auto energy_after = [&](const std::vector<double> &r) {
            return before - branch_drop(state, before, Su2Params::from_rotation_vector(to_array(r)).matrix(), hams.h_tot);
        };

        std::vector<std::array<double, 3>> starts;
        starts.push_back({0.0, sign_of(mu) * family.control.family_theta, 0.0});
        starts.insert(starts.end(), kStarts.begin(), kStarts.end());

        double best_after = INFINITY;
        std::array<double, 3> best_r{};
        for (const auto &start : starts) {
            auto found = nelder_mead_minimize(energy_after, {start.begin(), start.end()}, simplex_options(cfg));
            if (found.value < best_after) {
                best_after = found.value;
                best_r = to_array(found.x);
            }
        }
        best_params[mu] = Su2Params::from_rotation_vector(best_r);
        best_drop[mu] = branch_drop(state, before, best_params[mu].matrix(), hams.h_tot);
    }
    ExtractionResult out;
    out.control = BobControl::full(best_params[0], best_params[1]);
    out.per_branch_energy = best_drop;
    out.extracted_energy = branches[0].probability * best_drop[0] + branches[1].probability * best_drop[1];
    return out;
}

ExtractionResult optimize_uninformed(
    const Branches &branches, const HamiltonianSet &hams, const OptimizerConfig &cfg) {
    std::array<double, 2> before{expectation(branches[0].state, hams.h_tot), expectation(branches[1].state, hams.h_tot)};
    auto drops = [&](const Su2Params &params) {
        Matrix2 u = params.matrix();
        return std::array<double, 2>{branch_drop(branches[0].state, before[0], u, hams.h_tot),
                                     branch_drop(branches[1].state, before[1], u, hams.h_tot)};
    };
    auto negated = [&](const std::vector<double> &r) {
        auto d = drops(Su2Params::from_rotation_vector(to_array(r)));
        return -(branches[0].probability * d[0] + branches[1].probability * d[1]);
    };

    double best = INFINITY;
    std::array<double, 3> best_r{};
    for (const auto &start : kStarts) {
        auto found = nelder_mead_minimize(negated, {start.begin(), start.end()}, simplex_options(cfg));
        if (found.value < best) {
            best = found.value;
            best_r = to_array(found.x);
        }
    }
    Su2Params params = Su2Params::from_rotation_vector(best_r);
    ExtractionResult out;
    out.control = BobControl::uninformed(params);
    out.per_branch_energy = drops(params);
    out.extracted_energy =
        branches[0].probability * out.per_branch_energy[0] + branches[1].probability * out.per_branch_energy[1];
    return out;
}

}  // namespace

ExtractionResult optimize_bob(
    const Branches &branches, const HamiltonianSet &hams, const OptimizerConfig &cfg, BobMode mode) {
    cfg.validate();
    switch (mode) {
        case BobMode::family:
            return optimize_family(branches, hams, cfg);
        case BobMode::full:
            return optimize_full(branches, hams, cfg);
        case BobMode::uninformed:
            return optimize_uninformed(branches, hams, cfg);
    }
    throw InvalidInput("optimize_bob: unknown mode");
}

double family_theta_closed_form(const ModelParams &p) {
    double h = p.h();
    double k = p.k();
    return -0.5 * std::atan2(h * k, h * h + 2 * k * k);
}

int sample_outcome(const Branches &branches, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // 53 random bits -> [0, 1), independent of the standard library's distribution implementation.
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u < branches[0].probability ? 0 : 1;
}

}  // namespace qetlab
