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

#ifndef QETLAB_PROTOCOL_H
#define QETLAB_PROTOCOL_H

#include <array>
#include <cstdint>

#include "qetlab/linalg.h"
#include "qetlab/model.h"

namespace qetlab {

/// One outcome of Alice's sigma^x_A measurement.
struct OutcomeBranch {
    int mu = 0;
    double probability = 0;
    /// Normalized post-measurement state.
    StateVector state;
};

/// Both outcomes, indexed by mu.
using Branches = std::array<OutcomeBranch, 2>;

/// How Bob's conditioned unitary is parametrized.
enum class BobMode {
    /// U_B(mu) = cos(theta) I + i (-1)^mu sin(theta) sigma^y.
    family,
    /// Independent SU(2) element per outcome.
    full,
    /// One SU(2) element for both outcomes (Bob ignores the classical bit).
    uninformed,
};

const char *to_string(BobMode mode);

struct Su2Params {
    double theta = 0;
    Axis axis{0.0, 0.0, 1.0};

    /// theta = |r|, axis = r/|r| (z axis when r = 0).
    static Su2Params from_rotation_vector(const std::array<double, 3> &r);
    Matrix2 matrix() const {
        return su2(theta, axis);
    }
};

struct BobControl {
    BobMode mode = BobMode::family;
    double family_theta = 0;
    /// Used by full and uninformed modes; both entries are equal in uninformed mode.
    std::array<Su2Params, 2> per_outcome{};

    static BobControl family(double theta);
    static BobControl full(const Su2Params &mu0, const Su2Params &mu1);
    static BobControl uninformed(const Su2Params &shared);

    /// Bob's 2x2 unitary for outcome mu.
    Matrix2 unitary(int mu) const;
};

struct ExtractionResult {
    double extracted_energy = 0;
    BobControl control;
    /// Unweighted energy drop in each branch; extracted_energy = sum_mu p(mu) * per_branch_energy[mu].
    std::array<double, 2> per_branch_energy{};
};

struct OptimizerConfig {
    int coarse_grid_points = 64;
    double refine_tolerance = 1e-10;
    int max_iterations = 10000;

    void validate() const;
};

/// Projector (1 + (-1)^mu sigma^x_A)/2.
Matrix4 alice_projector(int mu);

/// Exhaustive branch enumeration of the sigma^x_A measurement.
/// Throws NumericFailure if a branch has (numerically) zero probability.
Branches measure_alice(const GroundState &ground);

/// Average <H_tot> over branches minus the ground energy (which is zero by construction).
double infused_energy(const Branches &branches, const HamiltonianSet &hams);

/// Branch-averaged expectation of `op`.
double average_expectation(const Branches &branches, const Matrix4 &op);

/// Evolve each branch with exp(-i H_tot t). Probabilities unchanged.
Branches evolve_branches(const Branches &branches, const HamiltonianSet &hams, double t);

/// Replace branch mu by (I_A x U_B(mu)) |psi_mu>.
Branches apply_bob(const Branches &branches, const BobControl &control);

/// sum_mu p(mu) (<H_tot>_before - <H_tot>_after). Positive means energy left the system.
double extracted_energy(const Branches &before, const Branches &after, const HamiltonianSet &hams);

/// Maximize the extracted energy over Bob's controls of the given mode.
/// Family: coarse grid over theta in [-pi/2, pi/2) then golden-section refinement.
/// Full/uninformed: Nelder-Mead from a fixed list of starts (full mode is seeded with the family
/// optimum, so it never does worse). Deterministic for identical inputs.
ExtractionResult optimize_bob(
    const Branches &branches, const HamiltonianSet &hams, const OptimizerConfig &cfg, BobMode mode);

/// Family angle that attains the closed-form extraction right after the measurement:
/// -atan2(hk, h^2 + 2k^2) / 2.
double family_theta_closed_form(const ModelParams &p);

/// Draw one outcome with the branch probabilities (seeded mt19937_64).
int sample_outcome(const Branches &branches, std::uint64_t seed);

}  // namespace qetlab

#endif
