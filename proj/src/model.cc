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

#include "qetlab/model.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qetlab/errors.h"

namespace qetlab {

ModelParams::ModelParams(double h, double k) : h_(h), k_(k) {
    if (!std::isfinite(h) || !std::isfinite(k) || !(h > 0) || !(k > 0)) {
        throw InvalidInput("model parameters h and k must be finite and strictly positive");
    }
}

ModelParams ModelParams::from_alpha(double alpha, double k) {
    if (!std::isfinite(alpha) || !(alpha > 0)) {
        throw InvalidInput("alpha must be finite and strictly positive");
    }
    return ModelParams(alpha * k, k);
}

double ModelParams::gap_scale() const {
    return std::hypot(h_, k_);
}

HamiltonianSet build_hamiltonians(const ModelParams &p) {
    double h = p.h();
    double k = p.k();
    double e = p.gap_scale();
    auto id = Matrix4::identity();
    HamiltonianSet out;
    out.h_a = h * kron(pauli::z(), pauli::identity()) + (h * h / e) * id;
    out.h_b = h * kron(pauli::identity(), pauli::z()) + (h * h / e) * id;
    out.v = (2 * k) * kron(pauli::x(), pauli::x()) + (2 * k * k / e) * id;
    out.h_tot = out.h_a + out.h_b + out.v;
    return out;
}

GroundState ground_state_closed_form(const ModelParams &p) {
    double ratio = p.h() / p.gap_scale();
    GroundState g;
    g.state[0] = std::sqrt((1 - ratio) / 2);
    g.state[3] = -std::sqrt((1 + ratio) / 2);
    g.energy = 0;
    return g;
}

GroundState ground_state_numeric(const ModelParams &p) {
    auto spectrum = hermitian_eig(build_hamiltonians(p).h_tot);
    GroundState g;
    g.state = spectrum.eigenvectors[0];
    g.energy = spectrum.eigenvalues[0];
    // The solver makes the largest component positive; the closed form has it negative on |-->.
    if (g.state[3].real() > 0) {
        g.state *= Complex(-1, 0);
    }
    return g;
}

double e_a_closed(const ModelParams &p) {
    return p.h() * p.h() / p.gap_scale();
}

double hb_expected(const ModelParams &p, double t) {
    if (!std::isfinite(t) || t < 0) {
        throw InvalidInput("hb_expected: time must be finite and non-negative");
    }
    return e_a_closed(p) / 2 * (1 - std::cos(4 * p.k() * t));
}

double diffusion_period(const ModelParams &p) {
    return std::numbers::pi / (2 * p.k());
}

double e_b_closed(const ModelParams &p) {
    double h2 = p.h() * p.h();
    double k2 = p.k() * p.k();
    double xi = h2 + 2 * k2;
    double eta = p.h() * p.k() / xi;
    // sqrt(1 + eta^2) - 1 written without cancellation.
    double bracket = eta * eta / (std::sqrt(1 + eta * eta) + 1);
    return xi / p.gap_scale() * bracket;
}

std::array<double, 4> spectrum_closed_form(const ModelParams &p) {
    double e = p.gap_scale();
    double k = p.k();
    std::array<double, 4> out{0.0, 2 * e - 2 * k, 2 * e + 2 * k, 4 * e};
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qetlab
