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

#include "qetlab/format.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace qetlab {

std::string format_number(double x) {
    if (std::abs(x) < 1e-12) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round_for_output(double x) {
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::string audit_report_json(const AuditReport &report) {
    nlohmann::ordered_json j;
    j["protocol"] = to_string(report.protocol);
    j["energy"] = round_for_output(report.energy);
    j["time"] = round_for_output(report.time);
    j["product"] = round_for_output(report.product);
    j["threshold"] = report.threshold;
    j["verdict"] = to_string(report.verdict);
    j["notes"] = report.notes;
    return j.dump();
}

std::string alpha_scan_csv(const AlphaScanResult &scan) {
    std::ostringstream out;
    out << "alpha,f_alpha\n";
    for (std::size_t i = 0; i < scan.grid.size(); i++) {
        out << format_number(scan.grid[i]) << ',' << format_number(scan.values[i]) << '\n';
    }
    out << "# argmax_alpha=" << format_number(scan.argmax_alpha) << ",max_f_alpha=" << format_number(scan.max_value)
        << ",reference_max_f_alpha=" << format_number(kReferenceMaxF) << '\n';
    return out.str();
}

}  // namespace qetlab
