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

// Tabular result rows shared by every CLI command, with CSV and JSON writers.
// Column order is fixed: n, observer, method, cost, stderr, analytic, error.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qclock/channel.hpp"

namespace qclock {

struct ResultRow {
    int n;
    int observer;
    std::string method;
    double cost;
    std::optional<double> std_error;
    std::optional<double> analytic;
    /// |exact - analytic| for exact rows, z-score against the reference value for mc rows.
    std::optional<double> error;
};

/// Exact-chain rows for one clock size. `analytic` and `error` are filled for the flat reference only.
inline std::vector<ResultRow> exact_rows(const ObserverChainReport& report) {
    std::vector<ResultRow> rows;
    const int n = report.spec.n_qubits();
    for (std::size_t i = 0; i < report.costs.size(); ++i) {
        const int j = static_cast<int>(i) + 1;
        ResultRow row{n, j, "exact", report.costs[i], 0.0, std::nullopt, std::nullopt};
        if (report.reference == ReferenceKind::flat) {
            row.analytic = mean_cost_analytic(n, j);
            row.error = std::abs(row.cost - *row.analytic);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string format_number(std::optional<double> value) {
    if (!value) return {};
    if (std::isnan(*value)) return "nan";
    if (std::isinf(*value)) return *value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *value);
    return buf;
}

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << "n,observer,method,cost,stderr,analytic,error\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.observer << ',' << r.method << ',' << format_number(r.cost) << ','
           << format_number(r.std_error) << ',' << format_number(r.analytic) << ',' << format_number(r.error) << '\n';
    }
}

inline nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    nlohmann::ordered_json re = nlohmann::ordered_json::array(), im = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json re_row = nlohmann::ordered_json::array(), im_row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"real", std::move(re)}, {"imag", std::move(im)}};
}

/// {"rows": [...]} plus, when given, a "states" array of {n, observer, real, imag}.
inline nlohmann::ordered_json rows_to_json(const std::vector<ResultRow>& rows,
                                   const std::vector<ObserverChainReport>* chains = nullptr) {
    auto opt = [](std::optional<double> v) -> nlohmann::ordered_json {
        if (!v || !std::isfinite(*v)) return nullptr;
        return *v;
    };
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        doc["rows"].push_back({{"n", r.n},
                               {"observer", r.observer},
                               {"method", r.method},
                               {"cost", opt(r.cost)},
                               {"stderr", opt(r.std_error)},
                               {"analytic", opt(r.analytic)},
                               {"error", opt(r.error)}});
    }
    if (chains) {
        doc["states"] = nlohmann::ordered_json::array();
        for (const auto& chain : *chains) {
            if (!chain.states) continue;
            for (std::size_t i = 0; i < chain.states->size(); ++i) {
                nlohmann::ordered_json s = matrix_to_json((*chain.states)[i].entries());
                s["n"] = chain.spec.n_qubits();
                s["observer"] = static_cast<int>(i) + 1;
                doc["states"].push_back(std::move(s));
            }
        }
    }
    return doc;
}

inline void write_json(std::ostream& os, const std::vector<ResultRow>& rows,
                       const std::vector<ObserverChainReport>* chains = nullptr) {
    os << rows_to_json(rows, chains).dump(2) << '\n';
}

}  // namespace qclock
