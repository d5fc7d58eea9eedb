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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.h"
#include "gtest/gtest.h"

using namespace qetlab;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_golden(const std::string &name) {
    std::ifstream in(std::string(QETLAB_GOLDEN_DIR) + "/" + name, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> data_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            lines.push_back(line);
        }
    }
    return lines;
}

}  // namespace

TEST(cli, golden_outputs) {
    struct Case {
        std::vector<std::string> args;
        const char *golden;
    };
    std::vector<Case> cases = {
        {{"model", "--h", "3", "--k", "4"}, "model_h3_k4.txt"},
        {{"scan-alpha", "--points", "100"}, "scan_alpha_100.csv"},
        {{"audit", "minimal", "--alpha", "2", "--time", "0.25"}, "audit_minimal.json"},
        {{"audit", "ion", "--gamma", "0.5", "--zeta", "2", "--nu", "1", "--time", "1"}, "audit_ion.json"},
        {{"run", "--h", "3", "--k", "4", "--latency", "0.1", "--seed", "7"}, "run_h3_k4.csv"},
    };
    for (const auto &c : cases) {
        auto r = run(c.args);
        EXPECT_EQ(r.code, kExitOk) << c.golden << ": " << r.err;
        EXPECT_EQ(r.out, read_golden(c.golden)) << c.golden;
    }
}

TEST(cli, repeated_runs_byte_identical) {
    for (std::vector<std::string> args : {std::vector<std::string>{"model", "--alpha", "1.5", "--format", "json"},
                                          {"sweep", "--h", "3", "--k", "4", "--latencies", "0:0.5:0.1"},
                                          {"run", "--alpha", "2", "--latency", "0.3", "--bob", "full"}}) {
        auto a = run(args);
        auto b = run(args);
        EXPECT_EQ(a.code, kExitOk) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(cli, missing_or_conflicting_parameters_are_usage_errors) {
    EXPECT_EQ(run({"model"}).code, kExitUsage);
    EXPECT_EQ(run({"model", "--h", "3"}).code, kExitUsage);
    EXPECT_EQ(run({"model", "--h", "3", "--k", "4", "--alpha", "1"}).code, kExitUsage);
    EXPECT_EQ(run({"model", "--h", "-3", "--k", "4"}).code, kExitUsage);
    EXPECT_EQ(run({"audit", "minimal", "--alpha", "2"}).code, kExitUsage);
    EXPECT_EQ(run({"audit", "ion", "--gamma", "2", "--time", "1"}).code, kExitUsage);
    EXPECT_EQ(run({"run", "--h", "3", "--k", "4", "--latency", "-1"}).code, kExitUsage);
    EXPECT_EQ(run({"sweep", "--h", "3", "--k", "4", "--latencies", "1:0:0.1"}).code, kExitUsage);
    EXPECT_EQ(run({"scan-alpha", "--points", "1"}).code, kExitUsage);
    EXPECT_EQ(run({"bogus"}).code, kExitUsage);
    auto r = run({"model", "--h", "3"});
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
}

TEST(cli, help_exits_zero) {
    EXPECT_EQ(run({"--help"}).code, kExitOk);
    EXPECT_EQ(run({"audit", "ion", "--help"}).code, kExitOk);
}

TEST(cli, scan_alpha_row_count_and_trailer) {
    auto r = run({"scan-alpha", "--points", "1000"});
    ASSERT_EQ(r.code, kExitOk);
    auto rows = data_lines(r.out);
    ASSERT_EQ(rows.size(), 1001u);
    EXPECT_EQ(rows[0], "alpha,f_alpha");
    EXPECT_NE(r.out.find("# argmax_alpha="), std::string::npos);
    EXPECT_NE(r.out.find("reference_max_f_alpha=0.13"), std::string::npos);
}

TEST(cli, sweep_inclusive_grid) {
    auto r = run({"sweep", "--alpha", "2", "--latencies", "0:1:0.1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(data_lines(r.out).size(), 12u);
    auto list = run({"sweep", "--alpha", "2", "--latencies", "0,0.5,1"});
    ASSERT_EQ(list.code, kExitOk) << list.err;
    EXPECT_EQ(data_lines(list.out).size(), 4u);
}

TEST(cli, audit_minimal_regime_demo_is_observable) {
    auto r = run({"audit", "minimal", "--alpha", "2", "--time", "100"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find(R"("verdict":"observable")"), std::string::npos);
}

TEST(cli, output_file) {
    auto path = std::filesystem::temp_directory_path() / "qetlab_cli_test_output.json";
    std::filesystem::remove(path);
    auto r = run({"audit", "minimal", "--alpha", "2", "--time", "0.25", "--output", path.string()});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), read_golden("audit_minimal.json"));
    std::filesystem::remove(path);
}
