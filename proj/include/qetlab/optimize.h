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

#ifndef QETLAB_OPTIMIZE_H
#define QETLAB_OPTIMIZE_H

#include <functional>
#include <vector>

namespace qetlab {

struct ScalarOptimum {
    double x = 0;
    double value = 0;
    int iterations = 0;
};

/// Golden-section maximization of a unimodal function on [lo, hi], stopping when the bracket is
/// narrower than x_tol. Throws NumericFailure (carrying the best value) when max_iterations runs out.
ScalarOptimum golden_section_maximize(
    const std::function<double(double)> &f, double lo, double hi, double x_tol, int max_iterations);

/// Same search, driven by a strict ordering. `better(a, b)` must return true iff f(a) > f(b).
/// Use this when the objective's difference can be evaluated more accurately than the objective.
ScalarOptimum golden_section_search(
    const std::function<bool(double, double)> &better,
    const std::function<double(double)> &f,
    double lo,
    double hi,
    double x_tol,
    int max_iterations);

struct NelderMeadOptions {
    /// Initial simplex edge along each coordinate.
    double step = 0.25;
    /// Converged once the simplex diameter falls below this.
    double x_tol = 1e-10;
    int max_iterations = 10000;
};

struct SimplexOptimum {
    std::vector<double> x;
    double value = 0;
    int iterations = 0;
};

/// Nelder-Mead minimization from x0 (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// The returned value never exceeds f(x0).
SimplexOptimum nelder_mead_minimize(
    const std::function<double(const std::vector<double> &)> &f,
    const std::vector<double> &x0,
    const NelderMeadOptions &options);

}  // namespace qetlab

#endif
