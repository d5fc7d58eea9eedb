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

#ifndef QETLAB_FORMAT_H
#define QETLAB_FORMAT_H

#include <string>
#include <vector>

#include "qetlab/audit.h"

namespace qetlab {

/// 12 significant digits; magnitudes below 1e-12 print as 0.
std::string format_number(double x);

/// Round to the value format_number prints, so JSON emitters reproduce the same digits.
double round_for_output(double x);

/// One-line JSON object: protocol, energy, time, product, threshold, verdict, notes.
std::string audit_report_json(const AuditReport &report);

/// `alpha,f_alpha` rows plus a trailing `#` summary line.
std::string alpha_scan_csv(const AlphaScanResult &scan);

}  // namespace qetlab

#endif
