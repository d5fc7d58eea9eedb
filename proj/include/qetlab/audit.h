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

#ifndef QETLAB_AUDIT_H
#define QETLAB_AUDIT_H

#include <string>
#include <vector>

#include "qetlab/model.h"

namespace qetlab {

enum class Verdict { observable, unobservable };
const char *to_string(Verdict verdict);

/// Observable iff product >= 1 (hbar = 1).
Verdict verdict_for(double product);

/// Teleported energy in units of k with h = alpha k:
/// ((alpha^2+2)/sqrt(alpha^2+1)) (sqrt(1 + alpha^2/(alpha^2+2)^2) - 1).
double f_alpha(double alpha);

/// Reference value for the maximum of f(alpha), printed next to the computed maximum.
inline constexpr double kReferenceMaxF = 0.13;

/// Inclusive, evenly spaced alpha grid.
struct AlphaGrid {
    double min_alpha = 0.01;
    double max_alpha = 20.0;
    int points = 10000;

    std::vector<double> values() const;
};

struct AlphaScanResult {
    std::vector<double> grid;
    std::vector<double> values;
    /// Location and value of the maximum after golden-section refinement around the best grid point.
    double argmax_alpha = 0;
    double max_value = 0;
};

AlphaScanResult scan_alpha(const AlphaGrid &grid);

/// e * t with hbar = 1. Both arguments must be non-negative.
double uncertainty_product(double energy, double time);

enum class AuditProtocol { minimal, trapped_ion };
const char *to_string(AuditProtocol protocol);

struct AuditReport {
    AuditProtocol protocol = AuditProtocol::minimal;
    double energy = 0;
    double time = 0;
    double product = 0;
    double threshold = 1.0;
    Verdict verdict = Verdict::unobservable;
    std::vector<std::string> notes;
    /// Trapped-ion only: the unconstrained maximum exceeds nu exp(-zeta), so the phonon-scale
    /// bound used for the product does not hold for these parameters.
    bool regime_flagged = false;
};

/// Minimal model: energy = e_b_closed(p), product = energy * t.
AuditReport audit_minimal(const ModelParams &p, double t);

/// Trapped-ion protocol parameters. gamma_n in (0, 1], zeta_n > 0, nu > 0 (phonon energy).
/// No default corresponds to a measured crystal; the CLI demo values are illustrative.
class IonParams {
   public:
    IonParams(double gamma_n, double zeta_n, double nu, double phi);

    double gamma_n() const {
        return gamma_n_;
    }
    double zeta_n() const {
        return zeta_n_;
    }
    double nu() const {
        return nu_;
    }
    double phi() const {
        return phi_;
    }

   private:
    double gamma_n_;
    double zeta_n_;
    double nu_;
    double phi_;
};

/// gamma_n e_in exp(-zeta_n e_in / nu) sin^2(2 phi).
double ion_output(const IonParams &ip, double e_in);

struct IonOptimum {
    /// Maximizer over e_in (with sin^2(2 phi) = 1) from the bracketed search.
    double e_in_star = 0;
    double e_out_max = 0;
    /// Stationary point nu / zeta_n and its value gamma_n (nu / zeta_n) / e.
    double e_in_star_calculus = 0;
    double e_out_max_calculus = 0;
    /// Output at the phonon-scale input e_in = nu: gamma_n nu exp(-zeta_n).
    double phonon_scale_output = 0;
};

/// Throws NumericFailure if the search disagrees with the stationary point beyond 1e-8 relative.
IonOptimum ion_maximize(const IonParams &ip);

/// Trapped-ion audit: energy = ion_output(ip, nu), product = energy * t. Sets regime_flagged when
/// the unconstrained maximum exceeds nu exp(-zeta_n).
AuditReport audit_ion(const IonParams &ip, double t);

}  // namespace qetlab

#endif
