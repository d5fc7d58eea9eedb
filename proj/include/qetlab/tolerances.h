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

#ifndef QETLAB_TOLERANCES_H
#define QETLAB_TOLERANCES_H

namespace qetlab {

/// Every numeric tolerance used by the library, in one place.
struct Tolerances {
    /// Structural checks: Hermiticity, unit axes, normalization, probabilities.
    static constexpr double structural = 1e-12;
    /// Quantities obtained through a numeric route (diagonalization, evolution, simulated energies).
    static constexpr double residual = 1e-10;
    /// Off-diagonal mass (relative to the Frobenius norm) at which Jacobi sweeps stop.
    static constexpr double jacobi_off_diagonal = 1e-17;
    static constexpr int jacobi_max_sweeps = 64;
    /// Eigenvalues closer than this (relative to max(1, |H|_max)) form a degenerate cluster.
    static constexpr double degeneracy = 1e-9;
    /// Uncertainty threshold E * t >= 1 in hbar = 1 units.
    static constexpr double observability_threshold = 1.0;
};

}  // namespace qetlab

#endif
