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

#ifndef QETLAB_MODEL_H
#define QETLAB_MODEL_H

#include "qetlab/linalg.h"

namespace qetlab {

/// Energy constants of the two-qubit model (hbar = 1). Both strictly positive and finite.
class ModelParams {
   public:
    ModelParams(double h, double k);
    /// h = alpha * k.
    static ModelParams from_alpha(double alpha, double k = 1.0);

    double h() const {
        return h_;
    }
    double k() const {
        return k_;
    }
    double alpha() const {
        return h_ / k_;
    }
    /// sqrt(h^2 + k^2).
    double gap_scale() const;

    bool operator==(const ModelParams &) const = default;

   private:
    double h_;
    double k_;
};

struct HamiltonianSet {
    Matrix4 h_a;
    Matrix4 h_b;
    Matrix4 v;
    Matrix4 h_tot;
};

struct GroundState {
    StateVector state;
    double energy = 0;
};

/// H_A = h sz_A + h^2/E, H_B = h sz_B + h^2/E, V = 2k sx_A sx_B + 2k^2/E with E = sqrt(h^2+k^2);
/// scalar offsets multiply the 4x4 identity. The offsets put the ground energy at exactly zero.
HamiltonianSet build_hamiltonians(const ModelParams &p);

/// Analytic ground state: amplitude sqrt((1 - h/E)/2) on |++>, -sqrt((1 + h/E)/2) on |-->.
GroundState ground_state_closed_form(const ModelParams &p);

/// Lowest eigenpair of H_tot from the Jacobi solver, phase-aligned with the closed form.
GroundState ground_state_numeric(const ModelParams &p);

/// Energy injected at A by the sigma^x_A measurement: h^2/E.
double e_a_closed(const ModelParams &p);

/// Average <H_B(t)> after the measurement: h^2/(2E) (1 - cos(4kt)).
double hb_expected(const ModelParams &p, double t);

/// Period of the diffusion curve, pi/(2k).
double diffusion_period(const ModelParams &p);

/// Optimal energy extracted at B right after the measurement:
/// ((h^2+2k^2)/E) (sqrt(1 + h^2 k^2/(h^2+2k^2)^2) - 1).
double e_b_closed(const ModelParams &p);

/// The spectrum {0, 2E - 2k, 2E + 2k, 4E}, ascending.
std::array<double, 4> spectrum_closed_form(const ModelParams &p);

}  // namespace qetlab

#endif
