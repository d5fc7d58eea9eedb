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

#include "qetlab/optimize.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qetlab/errors.h"

namespace qetlab {

namespace {
constexpr double kInvPhi = 0.6180339887498948482;
}

ScalarOptimum golden_section_search(
    const std::function<bool(double, double)> &better,
    const std::function<double(double)> &f,
    double lo,
    double hi,
    double x_tol,
    int max_iterations) {
    if (!(lo < hi) || !(x_tol > 0)) {
        throw InvalidInput("golden_section_search: need lo < hi and x_tol > 0");
    }
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    int it = 0;
    while (b - a > x_tol) {
        if (it == max_iterations) {
            double best = better(c, d) ? c : d;
            throw NumericFailure("golden-section search exhausted its iteration budget", f(best));
        }
        if (better(c, d)) {
            b = d;
            d = c;
            c = b - kInvPhi * (b - a);
        } else {
            a = c;
            c = d;
            d = a + kInvPhi * (b - a);
        }
        it++;
    }
    double x = 0.5 * (a + b);
    return {x, f(x), it};
}

ScalarOptimum golden_section_maximize(
    const std::function<double(double)> &f, double lo, double hi, double x_tol, int max_iterations) {
    // Cache the two interior evaluations; each step reuses one of them.
    double cached_x[2] = {NAN, NAN};
    double cached_f[2] = {0, 0};
    int slot = 0;
    auto eval = [&](double x) {
        for (int i = 0; i < 2; i++) {
            if (cached_x[i] == x) {
                return cached_f[i];
            }
        }
        double v = f(x);
        cached_x[slot] = x;
        cached_f[slot] = v;
        slot ^= 1;
        return v;
    };
    return golden_section_search([&](double a, double b) { return eval(a) > eval(b); }, f, lo, hi, x_tol,
                                 max_iterations);
}

SimplexOptimum nelder_mead_minimize(
    const std::function<double(const std::vector<double> &)> &f,
    const std::vector<double> &x0,
    const NelderMeadOptions &options) {
    const std::size_t n = x0.size();
    if (n == 0) {
        throw InvalidInput("nelder_mead_minimize: empty start point");
    }
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; i++) {
        pts[i + 1][i] += options.step;
    }
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; i++) {
        vals[i] = f(pts[i]);
    }
    std::vector<std::size_t> order(n + 1);

    auto affine = [&](const std::vector<double> &from, const std::vector<double> &to, double t) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; i++) {
            out[i] = from[i] + t * (to[i] - from[i]);
        }
        return out;
    };

    int it = 0;
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return vals[a] < vals[b];
        });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double diameter = 0;
        for (std::size_t i = 0; i <= n; i++) {
            double dist = 0;
            for (std::size_t j = 0; j < n; j++) {
                dist = std::max(dist, std::abs(pts[i][j] - pts[best][j]));
            }
            diameter = std::max(diameter, dist);
        }
        if (diameter <= options.x_tol) {
            return {pts[best], vals[best], it};
        }
        if (it == options.max_iterations) {
            throw NumericFailure("Nelder-Mead exhausted its iteration budget", vals[best]);
        }
        it++;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; i++) {
            if (i == worst) {
                continue;
            }
            for (std::size_t j = 0; j < n; j++) {
                centroid[j] += pts[i][j] / static_cast<double>(n);
            }
        }

        auto reflected = affine(centroid, pts[worst], -1.0);
        double f_reflected = f(reflected);
        if (f_reflected < vals[best]) {
            auto expanded = affine(centroid, pts[worst], -2.0);
            double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                pts[worst] = std::move(expanded);
                vals[worst] = f_expanded;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < vals[second]) {
            pts[worst] = std::move(reflected);
            vals[worst] = f_reflected;
            continue;
        }
        bool outside = f_reflected < vals[worst];
        auto contracted = outside ? affine(centroid, reflected, 0.5) : affine(centroid, pts[worst], 0.5);
        double f_contracted = f(contracted);
        if (f_contracted < (outside ? f_reflected : vals[worst])) {
            pts[worst] = std::move(contracted);
            vals[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= n; i++) {
            if (i == best) {
                continue;
            }
            pts[i] = affine(pts[best], pts[i], 0.5);
            vals[i] = f(pts[i]);
        }
    }
}

}  // namespace qetlab
