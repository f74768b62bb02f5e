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

#pragma once

// Command-line front end: `exact`, `mc` and `compare` subcommands. Exit status is
// 0 on success, 1 on numeric or internal failure, 2 on usage errors.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qclock/channel.hpp"
#include "qclock/cost.hpp"
#include "qclock/report.hpp"
#include "qclock/trajectory.hpp"

namespace qclock::cli {

inline constexpr std::uint64_t kDefaultSeed = 20000507;

enum class Mode { exact, mc, compare };

struct ExperimentConfig {
    Mode mode = Mode::exact;
    std::vector<int> n_values;
    int observers = 1;
    ReferenceKind reference = ReferenceKind::flat;
    std::int64_t trials = 0;
    std::uint64_t seed = kDefaultSeed;
    bool random_seed = false;
    std::string format = "csv";
    std::string output;
    std::vector<double> delays;
    bool store_states = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

inline std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split_list(text)) {
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw UsageError("--n: '" + item + "' is not an integer");
        }
        if (pos != item.size()) throw UsageError("--n: '" + item + "' is not an integer");
        if (value < 0) throw UsageError("--n: values must be >= 0");
        out.push_back(value);
    }
    if (out.empty()) throw UsageError("--n: list is empty");
    return out;
}

inline std::vector<double> parse_delays(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        std::size_t pos = 0;
        double value = 0;
        try {
            value = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw UsageError("--delays: '" + item + "' is not a number");
        }
        if (pos != item.size() || !std::isfinite(value)) throw UsageError("--delays: '" + item + "' is not a number");
        out.push_back(value);
    }
    return out;
}

inline void validate(const ExperimentConfig& c) {
    if (c.observers < 1) throw UsageError("--observers must be >= 1");
    if (c.mode == Mode::mc && c.trials < 1) throw UsageError("--trials must be >= 1");
    if (!c.delays.empty() && c.delays.size() != 1 && static_cast<int>(c.delays.size()) != c.observers - 1)
        throw UsageError("--delays: expected 1 or observers-1 values");
    if (c.store_states && c.format != "json") throw UsageError("--store-states requires --format json");
}

inline std::vector<ResultRow> mc_rows(const ExperimentConfig& c, int n) {
    const ClockSpec spec(n);
    const SymmetricState reference = make_reference(spec, c.reference);
    const CostFunction f = default_cost();
    TrajectoryOptions options;
    options.delays = c.delays;
    const McEstimate est = run_experiment(c.seed, reference, c.observers, c.trials, f, options);

    // Reference value for the z column: closed form for the flat state, exact chain otherwise.
    std::vector<double> expected;
    if (c.reference == ReferenceKind::flat) {
        for (int j = 1; j <= c.observers; ++j) expected.push_back(mean_cost_analytic(n, j));
    } else {
        expected = observer_chain_exact(reference, c.observers, f, {c.reference, false}).costs;
    }

    std::vector<ResultRow> rows;
    for (int j = 1; j <= c.observers; ++j) {
        const auto i = static_cast<std::size_t>(j - 1);
        const double diff = est.mean_cost[i] - expected[i];
        double z = 0.0;
        if (diff != 0.0) z = est.std_error[i] > 0.0 ? diff / est.std_error[i] : std::copysign(HUGE_VAL, diff);
        rows.push_back({n, j, "mc", est.mean_cost[i], est.std_error[i], expected[i], z});
    }
    return rows;
}

}  // namespace detail

/// Runs one already-parsed configuration and writes the table to `out`.
inline int execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    detail::validate(config);
    const CostFunction f = default_cost();
    std::vector<ResultRow> rows;
    std::vector<ObserverChainReport> chains;

    for (int n : config.n_values) {
        const ClockSpec spec(n);
        if (config.mode != Mode::mc) {
            chains.push_back(observer_chain_exact(make_reference(spec, config.reference), config.observers, f,
                                                  {config.reference, config.store_states}));
            auto exact = exact_rows(chains.back());
            rows.insert(rows.end(), exact.begin(), exact.end());
        }
        if (config.mode == Mode::mc || (config.mode == Mode::compare && config.trials > 0)) {
            auto mc = detail::mc_rows(config, n);
            for (const auto& row : mc) {
                if (row.error && std::abs(*row.error) > 4.0)
                    err << "warning: N=" << row.n << " observer " << row.observer << " has |z| = "
                        << format_number(std::abs(*row.error)) << " > 4\n";
            }
            rows.insert(rows.end(), mc.begin(), mc.end());
        }
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output.empty()) {
        file.open(config.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << config.output << " for writing\n";
            return 1;
        }
        sink = &file;
    }
    if (config.format == "json")
        write_json(*sink, rows, config.store_states ? &chains : nullptr);
    else
        write_csv(*sink, rows);
    sink->flush();
    if (!*sink) {
        err << "error: failed writing output\n";
        return 1;
    }
    return 0;
}

/// Parses `args` (without the program name) and runs the selected subcommand.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sequential non-communicating observers of an N-qubit quantum clock", "qclock"};
    app.require_subcommand(1);

    ExperimentConfig config;
    int n_single = 0;
    std::string n_list, delays, reference = "flat";

    auto add_common = [&](CLI::App* sub, bool list_n) {
        if (list_n)
            sub->add_option("--n", n_list, "Comma-separated list of qubit counts")->required();
        else
            sub->add_option("--n", n_single, "Number of qubits N")->required()->check(CLI::NonNegativeNumber);
        sub->add_option("--observers", config.observers, "Number of successive observers k (max k for compare)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--reference", reference, "Reference state")->check(CLI::IsMember({"flat", "optimal"}));
        sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", config.output, "Write results to PATH instead of standard output");
    };
    auto add_sampling = [&](CLI::App* sub, bool required) {
        auto* trials = sub->add_option("--trials", config.trials, "Monte Carlo trajectories")->check(CLI::PositiveNumber);
        if (required) trials->required();
        sub->add_option("--seed", config.seed, "Base seed of the per-trial random streams");
        sub->add_flag("--random-seed", config.random_seed, "Draw the seed from system entropy");
        sub->add_option("--delays", delays, "Comma-separated free-evolution times between observers");
    };

    auto* exact = app.add_subcommand("exact", "Exact per-observer costs from the recycling channel");
    add_common(exact, false);
    exact->add_flag("--store-states", config.store_states, "Include intermediate density matrices (json only)");

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of per-observer costs");
    add_common(mc, false);
    add_sampling(mc, true);

    auto* compare = app.add_subcommand("compare", "Sweep N and k, tabulating exact, analytic and optional MC costs");
    add_common(compare, true);
    add_sampling(compare, false);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (exact->parsed()) config.mode = Mode::exact;
        if (mc->parsed()) config.mode = Mode::mc;
        if (compare->parsed()) config.mode = Mode::compare;
        config.n_values = config.mode == Mode::compare ? detail::parse_n_list(n_list) : std::vector<int>{n_single};
        config.reference = reference == "optimal" ? ReferenceKind::optimal : ReferenceKind::flat;
        config.delays = detail::parse_delays(delays);
        if (config.random_seed) {
            std::random_device rd;
            config.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
            err << "seed: " << config.seed << '\n';
        }
        return execute(config, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qclock::cli
