// Copyright 2026 The qclock Authors
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

#include "qclock/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include <json.hpp>

using namespace qclock;

namespace {

struct Invocation {
    int status;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = cli::run(std::move(args), out, err);
    return {status, out.str(), err.str()};
}

using CsvRow = std::vector<std::string>;

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        CsvRow row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

const CsvRow kHeader{"n", "observer", "method", "cost", "stderr", "analytic", "error"};

}  // namespace

TEST(CliExact, single_qubit_three_observers) {
    auto r = invoke({"exact", "--n", "1", "--observers", "3", "--reference", "flat"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], kHeader);
    const double expected[] = {1.0, 1.5, 1.75};
    for (int j = 1; j <= 3; ++j) {
        EXPECT_EQ(rows[j][0], "1");
        EXPECT_EQ(rows[j][1], std::to_string(j));
        EXPECT_EQ(rows[j][2], "exact");
        EXPECT_DOUBLE_EQ(std::stod(rows[j][3]), expected[j - 1]);
        EXPECT_DOUBLE_EQ(std::stod(rows[j][5]), expected[j - 1]);
        EXPECT_LE(std::stod(rows[j][6]), 1e-10);
    }
    EXPECT_TRUE(r.out.ends_with('\n'));
}

TEST(CliExact, degenerate_clock) {
    auto r = invoke({"exact", "--n", "0", "--observers", "2"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(std::stod(rows[1][3]), 2.0);
    EXPECT_EQ(std::stod(rows[2][3]), 2.0);
}

TEST(CliExact, optimal_reference_round_trips_bit_exactly) {
    auto r = invoke({"exact", "--n", "10", "--observers", "1", "--reference", "optimal"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto rows = parse_csv(r.out);
    const double library =
        observer_chain_exact(optimal_reference_state(ClockSpec(10)), 1, default_cost()).costs[0];
    EXPECT_EQ(std::stod(rows[1][3]), library);
    EXPECT_EQ(rows[1][5], "");  // no closed form for this reference
    EXPECT_EQ(rows[1][6], "");
}

TEST(CliExact, store_states_json) {
    auto r = invoke({"exact", "--n", "2", "--observers", "3", "--format", "json", "--store-states"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["states"].size(), 3u);
    EXPECT_EQ(doc["states"][2]["observer"], 3);
    EXPECT_EQ(doc["states"][0]["real"].size(), 3u);
    EXPECT_NEAR(doc["states"][1]["real"][0][1].get<double>(), (2.0 / 3.0) / 3.0, 1e-15);

    EXPECT_EQ(invoke({"exact", "--n", "2", "--store-states"}).status, 2);
}

TEST(CliMc, five_qubits_within_four_sigma) {
    auto r = invoke({"mc", "--n", "5", "--observers", "4", "--trials", "100000", "--seed", "42"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 5u);
    for (int j = 1; j <= 4; ++j) {
        EXPECT_EQ(rows[j][2], "mc");
        EXPECT_GT(std::stod(rows[j][4]), 0.0);
        EXPECT_DOUBLE_EQ(std::stod(rows[j][5]), mean_cost_analytic(5, j));
        EXPECT_LE(std::abs(std::stod(rows[j][6])), 4.0);
    }
}

TEST(CliMc, repeat_runs_are_identical) {
    const std::vector<std::string> args{"mc", "--n", "3", "--observers", "3", "--trials", "20000", "--seed", "9"};
    auto a = invoke(args), b = invoke(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    auto json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    EXPECT_EQ(invoke(json_args).out, invoke(json_args).out);
}

TEST(CliMc, default_seed_is_fixed) {
    const std::vector<std::string> args{"mc", "--n", "2", "--trials", "3000"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
    auto explicit_seed = invoke({"mc", "--n", "2", "--trials", "3000", "--seed", std::to_string(cli::kDefaultSeed)});
    EXPECT_EQ(invoke(args).out, explicit_seed.out);
}

TEST(CliMc, optimal_reference_scored_against_exact_chain) {
    auto r = invoke({"mc", "--n", "10", "--observers", "2", "--trials", "20000", "--reference", "optimal"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto rows = parse_csv(r.out);
    const auto exact = observer_chain_exact(optimal_reference_state(ClockSpec(10)), 2, default_cost());
    EXPECT_EQ(std::stod(rows[1][5]), exact.costs[0]);
    EXPECT_EQ(std::stod(rows[2][5]), exact.costs[1]);
}

TEST(CliMc, delays_accepted) {
    auto r = invoke({"mc", "--n", "3", "--observers", "3", "--trials", "2000", "--delays", "0.5,1.5"});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(invoke({"mc", "--n", "3", "--observers", "3", "--trials", "2000", "--delays", "0.5"}).status, 0);
    EXPECT_EQ(invoke({"mc", "--n", "3", "--observers", "3", "--trials", "2000", "--delays", "1,2,3"}).status, 2);
    EXPECT_EQ(invoke({"mc", "--n", "3", "--observers", "3", "--trials", "2000", "--delays", "1,x"}).status, 2);
}

TEST(CliCompare, sweep_table) {
    auto r = invoke({"compare", "--n", "1,2,5,10", "--observers", "10"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 41u);
    double worst = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        worst = std::max(worst, std::abs(std::stod(rows[i][3]) - std::stod(rows[i][5])));
        if (rows[i][1] == "1") {
            const int n = std::stoi(rows[i][0]);
            EXPECT_NEAR(std::stod(rows[i][3]), 2.0 / (n + 1), 1e-15);
        }
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(CliCompare, optional_monte_carlo_rows) {
    auto r = invoke({"compare", "--n", "1,3", "--observers", "2", "--trials", "5000", "--format", "json"});
    ASSERT_EQ(r.status, 0) << r.err;
    auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["rows"].size(), 8u);
    int mc = 0;
    for (const auto& row : doc["rows"]) mc += row["method"] == "mc";
    EXPECT_EQ(mc, 4);
}

TEST(CliCompare, rejects_empty_list) {
    EXPECT_EQ(invoke({"compare", "--n", "", "--observers", "3"}).status, 2);
    EXPECT_EQ(invoke({"compare", "--n", ",", "--observers", "3"}).status, 2);
    EXPECT_EQ(invoke({"compare", "--n", "1,-2"}).status, 2);
    EXPECT_EQ(invoke({"compare", "--n", "1,two"}).status, 2);
}

TEST(CliOutput, json_and_csv_carry_the_same_rows) {
    auto csv = invoke({"exact", "--n", "4", "--observers", "3"});
    auto json = invoke({"exact", "--n", "4", "--observers", "3", "--format", "json"});
    ASSERT_EQ(json.status, 0);
    auto rows = parse_csv(csv.out);
    auto doc = nlohmann::json::parse(json.out);
    ASSERT_EQ(doc.size(), 1u);
    ASSERT_EQ(doc["rows"].size(), rows.size() - 1);
    for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
        const auto& obj = doc["rows"][i];
        std::vector<std::string> keys;
        for (auto it = obj.begin(); it != obj.end(); ++it) keys.push_back(it.key());
        std::sort(keys.begin(), keys.end());
        auto header = kHeader;
        std::sort(header.begin(), header.end());
        EXPECT_EQ(keys, header);
        EXPECT_EQ(obj["n"].get<int>(), std::stoi(rows[i + 1][0]));
        EXPECT_EQ(obj["observer"].get<int>(), std::stoi(rows[i + 1][1]));
        EXPECT_EQ(obj["cost"].get<double>(), std::stod(rows[i + 1][3]));
        EXPECT_EQ(obj["analytic"].get<double>(), std::stod(rows[i + 1][5]));
    }
}

TEST(CliOutput, seventeen_significant_digits) {
    EXPECT_EQ(format_number(2.0 / 11.0), "0.18181818181818182");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(std::nullopt), "");
    EXPECT_EQ(format_number(-HUGE_VAL), "-inf");
}

TEST(CliOutput, writes_to_file) {
    const auto path = std::filesystem::temp_directory_path() / "qclock_cli_test.csv";
    auto r = invoke({"exact", "--n", "1", "--observers", "2", "--output", path.string()});
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), invoke({"exact", "--n", "1", "--observers", "2"}).out);
    std::filesystem::remove(path);

    EXPECT_EQ(invoke({"exact", "--n", "1", "--output", "/nonexistent-dir/x.csv"}).status, 1);
}

TEST(CliUsage, exit_status_two) {
    EXPECT_EQ(invoke({}).status, 2);
    EXPECT_EQ(invoke({"mc", "--trials", "0"}).status, 2);
    EXPECT_EQ(invoke({"mc", "--n", "3", "--trials", "0"}).status, 2);
    EXPECT_EQ(invoke({"mc", "--n", "3"}).status, 2);
    EXPECT_EQ(invoke({"exact", "--n", "-1"}).status, 2);
    EXPECT_EQ(invoke({"exact", "--n", "3", "--observers", "0"}).status, 2);
    EXPECT_EQ(invoke({"exact", "--n", "3", "--bogus"}).status, 2);
    EXPECT_EQ(invoke({"exact", "--n", "3", "--reference", "squeezed"}).status, 2);
    EXPECT_EQ(invoke({"exact", "--n", "3", "--format", "xml"}).status, 2);
    EXPECT_EQ(invoke({"exact", "--n", "3", "--trials", "10"}).status, 2);
    EXPECT_EQ(invoke({"frobnicate"}).status, 2);
    auto r = invoke({"mc", "--n", "3", "--trials", "0"});
    EXPECT_NE(r.err.find("trials"), std::string::npos);
}

TEST(CliUsage, help_exits_zero) {
    auto r = invoke({"--help"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("exact"), std::string::npos);
}
