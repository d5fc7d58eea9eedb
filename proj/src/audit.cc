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

#include "qetlab/audit.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qetlab/errors.h"
#include "qetlab/format.h"
#include "qetlab/optimize.h"
#include "qetlab/tolerances.h"

namespace qetlab {

const char *to_string(Verdict verdict) {
    return verdict == Verdict::observable ? "observable" : "unobservable";
}

Verdict verdict_for(double product) {
    return product >= Tolerances::observability_threshold ? Verdict::observable : Verdict::unobservable;
}

const char *to_string(AuditProtocol protocol) {
    return protocol == AuditProtocol::minimal ? "minimal" : "trapped-ion";
}

double f_alpha(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0)) {
        throw InvalidInput("f_alpha: alpha must be finite and positive");
    }
    double a2 = alpha * alpha;
    double x = alpha / (a2 + 2);
    double bracket = x * x / (std::sqrt(1 + x * x) + 1);
    return (a2 + 2) / std::sqrt(a2 + 1) * bracket;
}

std::vector<double> AlphaGrid::values() const {
    if (!std::isfinite(min_alpha) || !std::isfinite(max_alpha) || !(min_alpha > 0) || !(max_alpha > min_alpha)) {
        throw InvalidInput("alpha grid needs 0 < min_alpha < max_alpha");
    }
    if (points < 3) {
        throw InvalidInput("alpha grid needs at least 3 points");
    }
    std::vector<double> out(points);
    for (int i = 0; i < points; i++) {
        out[i] = min_alpha + (max_alpha - min_alpha) * i / (points - 1);
    }
    out.back() = max_alpha;
    return out;
}

AlphaScanResult scan_alpha(const AlphaGrid &grid) {
    AlphaScanResult out;
    out.grid = grid.values();
    out.values.reserve(out.grid.size());
    for (double a : out.grid) {
        out.values.push_back(f_alpha(a));
    }
    auto best = std::max_element(out.values.begin(), out.values.end()) - out.values.begin();
    std::size_t lo = best == 0 ? 0 : best - 1;
    std::size_t hi = std::min<std::size_t>(best + 1, out.grid.size() - 1);
    out.argmax_alpha = out.grid[best];
    out.max_value = out.values[best];
    auto refined = golden_section_maximize(f_alpha, out.grid[lo], out.grid[hi], 1e-12, 200);
    if (refined.value > out.max_value) {
        out.argmax_alpha = refined.x;
        out.max_value = refined.value;
    }
    return out;
}

double uncertainty_product(double energy, double time) {
    if (!std::isfinite(energy) || !std::isfinite(time) || energy < 0 || time < 0) {
        throw InvalidInput("uncertainty_product: energy and time must be finite and non-negative");
    }
    return energy * time;
}

AuditReport audit_minimal(const ModelParams &p, double t) {
    AuditReport r;
    r.protocol = AuditProtocol::minimal;
    r.energy = e_b_closed(p);
    r.time = t;
    r.product = uncertainty_product(r.energy, t);
    r.threshold = Tolerances::observability_threshold;
    r.verdict = verdict_for(r.product);
    r.notes.push_back("H_A normalized to h*sigma^z_A + h^2/sqrt(h^2+k^2) (acts on site A)");
    r.notes.push_back("energy = E_B = f(alpha)*k with alpha = " + format_number(p.alpha()) +
                      ", f(alpha) = " + format_number(f_alpha(p.alpha())));
    double tk = t * p.k();
    if (tk <= 1) {
        r.notes.push_back("t*k = " + format_number(tk) + " <= 1: within the QET regime t << 1/k");
    } else {
        r.notes.push_back("t*k = " + format_number(tk) +
                          " > 1: outside the QET regime t << 1/k (threshold demonstration only)");
    }
    return r;
}

IonParams::IonParams(double gamma_n, double zeta_n, double nu, double phi)
    : gamma_n_(gamma_n), zeta_n_(zeta_n), nu_(nu), phi_(phi) {
    if (!std::isfinite(gamma_n) || !(gamma_n > 0) || gamma_n > 1) {
        throw InvalidInput("gamma_n must lie in (0, 1]");
    }
    if (!std::isfinite(zeta_n) || !(zeta_n > 0)) {
        throw InvalidInput("zeta_n must be finite and positive");
    }
    if (!std::isfinite(nu) || !(nu > 0)) {
        throw InvalidInput("nu must be finite and positive");
    }
    if (!std::isfinite(phi)) {
        throw InvalidInput("phi must be finite");
    }
}

double ion_output(const IonParams &ip, double e_in) {
    if (!std::isfinite(e_in) || e_in < 0) {
        throw InvalidInput("ion_output: input energy must be finite and non-negative");
    }
    double s = std::sin(2 * ip.phi());
    return ip.gamma_n() * e_in * std::exp(-ip.zeta_n() * e_in / ip.nu()) * s * s;
}

IonOptimum ion_maximize(const IonParams &ip) {
    const double zeta = ip.zeta_n();
    const double nu = ip.nu();
    auto value = [&](double e) { return ip.gamma_n() * e * std::exp(-zeta * e / nu); };
    // Compare points through log f(a) - log f(b) = log1p((a-b)/b) - zeta (a-b)/nu, which keeps full
    // relative precision near the maximum where f itself is flat.
    auto better = [&](double a, double b) {
        if (b <= 0) {
            return a > 0;
        }
        if (a <= 0) {
            return false;
        }
        double d = a - b;
        return std::log1p(d / b) - zeta * d / nu > 0;
    };

    double hi = nu;
    int doublings = 0;
    while (!better(hi / 2, hi)) {
        hi *= 2;
        if (++doublings > 2000) {
            throw NumericFailure("ion_maximize: could not bracket the maximum");
        }
    }
    auto found = golden_section_search(better, value, 0.0, hi, 1e-14 * hi, 400);

    IonOptimum out;
    out.e_in_star = found.x;
    out.e_out_max = value(found.x);
    out.e_in_star_calculus = nu / zeta;
    out.e_out_max_calculus = ip.gamma_n() * (nu / zeta) * std::exp(-1.0);
    out.phonon_scale_output = ip.gamma_n() * nu * std::exp(-zeta);
    double rel = std::abs(out.e_in_star - out.e_in_star_calculus) / out.e_in_star_calculus;
    if (rel > 1e-8) {
        throw NumericFailure("ion_maximize: bracketed search disagrees with the stationary point", out.e_out_max);
    }
    return out;
}

AuditReport audit_ion(const IonParams &ip, double t) {
    auto opt = ion_maximize(ip);
    double bound = ip.nu() * std::exp(-ip.zeta_n());

    AuditReport r;
    r.protocol = AuditProtocol::trapped_ion;
    r.energy = ion_output(ip, ip.nu());
    r.time = t;
    r.product = uncertainty_product(r.energy, t);
    r.threshold = Tolerances::observability_threshold;
    r.verdict = verdict_for(r.product);
    r.regime_flagged = opt.e_out_max > bound;

    r.notes.push_back("energy = E_out at phonon-scale input E_in = nu = " + format_number(ip.nu()));
    r.notes.push_back("bound nu*exp(-zeta) = " + format_number(bound));
    r.notes.push_back("unconstrained maximum E_out = " + format_number(opt.e_out_max) + " at E_in = nu/zeta = " +
                      format_number(opt.e_in_star) + "; product at this time = " +
                      format_number(opt.e_out_max * t));
    if (r.regime_flagged) {
        r.notes.push_back("flagged: unconstrained maximum exceeds nu*exp(-zeta); the phonon-scale bound does not "
                          "hold for these parameters");
    }
    double tnu = t * ip.nu();
    if (tnu > 1) {
        r.notes.push_back("t*nu = " + format_number(tnu) + " > 1: outside the regime t < 1/nu");
    }
    return r;
}

}  // namespace qetlab
