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

// Monte Carlo sampling of observer chains. Each trajectory draws a true time and,
// per observer, a private apparatus orientation; outcomes follow the Born rule and
// the state collapses onto the observed phase state before the next observer.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "qclock/clock.hpp"
#include "qclock/cost.hpp"
#include "qclock/rng.hpp"

namespace qclock {

struct Round {
    double orientation;
    int outcome;
    double estimate;
    /// Clock reading the estimate is scored against (true time plus elapsed delays).
    double true_phase;
    double cost;
};

struct TrajectoryRecord {
    double true_phase;
    std::vector<Round> rounds;
};

struct TrajectoryOptions {
    /// Free evolution between observers: empty, one value used for every gap, or k-1 values.
    std::vector<double> delays;
    /// Pin the true time instead of drawing it.
    std::optional<double> true_phase;
    /// Pin the apparatus orientations (must then hold exactly k values).
    std::vector<double> orientations;
};

/// Delay before observer j+1 (j is 1-based), validated against k.
inline double delay_after(std::span<const double> delays, int j, int k) {
    if (delays.empty()) return 0.0;
    if (delays.size() == 1) return delays[0];
    if (static_cast<int>(delays.size()) != k - 1)
        throw DomainError("delays: expected 1 or k-1 = " + std::to_string(k - 1) + " values, got " +
                          std::to_string(delays.size()));
    return delays[static_cast<std::size_t>(j - 1)];
}

/// Inverse-CDF draw: first index whose cumulative weight exceeds u * total.
/// Ties go to the lower index.
inline int sample_outcome(std::span<const double> probabilities, double u) {
    std::vector<double> cdf(probabilities.size());
    double acc = 0.0;
    for (std::size_t r = 0; r < probabilities.size(); ++r) {
        acc += std::max(probabilities[r], 0.0);
        cdf[r] = acc;
    }
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * acc);
    const auto idx = std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1);
    return static_cast<int>(idx);
}

inline TrajectoryRecord sample_trajectory(TrialRng& rng, const SymmetricState& reference, int k,
                                          const CostFunction& f, const TrajectoryOptions& options = {}) {
    if (k < 1) throw DomainError("sample_trajectory: number of observers must be >= 1");
    if (!options.orientations.empty() && static_cast<int>(options.orientations.size()) != k)
        throw DomainError("sample_trajectory: pinned orientations must hold one value per observer");
    if (k > 1) delay_after(options.delays, 1, k);

    const ClockSpec& spec = reference.spec();
    const double t = options.true_phase ? wrap_angle(*options.true_phase) : kTwoPi * rng.uniform();
    TrajectoryRecord record{t, {}};
    record.rounds.reserve(static_cast<std::size_t>(k));

    double truth = t;
    SymmetricState psi = evolve(reference, t);
    for (int j = 1; j <= k; ++j) {
        const double alpha =
            options.orientations.empty() ? kTwoPi * rng.uniform() : options.orientations[static_cast<std::size_t>(j - 1)];
        const PhaseBasis basis(spec, alpha);
        const std::vector<double> p = born_probabilities(psi, basis);
        const int r = sample_outcome(p, rng.uniform());
        const double estimate = basis.estimate(r);
        record.rounds.push_back({basis.orientation(), r, estimate, truth, eval_cost(f, estimate - truth)});
        psi = basis.state(r);
        if (j < k) {
            const double tau = delay_after(options.delays, j, k);
            if (tau != 0.0) {
                psi = evolve(psi, tau);
                truth = wrap_angle(truth + tau);
            }
        }
    }
    return record;
}

struct McEstimate {
    std::vector<double> mean_cost;
    std::vector<double> std_error;
    std::int64_t trials;
    std::uint64_t seed;

    friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

namespace detail {

/// Running mean and sum of squared deviations; merged pairwise in a fixed order.
struct Moments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(count + o.count);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.count) / n;
        m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
        count += o.count;
    }
};

inline constexpr std::int64_t kBlockSize = 1024;

}  // namespace detail

/// Mean per-observer cost over `trials` independent trajectories. Trials are split
/// into fixed-size blocks; block results are merged in block order, so the output is
/// bit-identical for any `workers` (0 = hardware concurrency).
inline McEstimate run_experiment(std::uint64_t seed, const SymmetricState& reference, int k, std::int64_t trials,
                                 const CostFunction& f, const TrajectoryOptions& options = {}, unsigned workers = 0) {
    if (trials < 1) throw DomainError("run_experiment: trials must be >= 1");
    if (k < 1) throw DomainError("run_experiment: number of observers must be >= 1");
    if (k > 1) delay_after(options.delays, 1, k);

    const std::int64_t blocks = (trials + detail::kBlockSize - 1) / detail::kBlockSize;
    std::vector<std::vector<detail::Moments>> per_block(static_cast<std::size_t>(blocks),
                                                        std::vector<detail::Moments>(static_cast<std::size_t>(k)));
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        for (std::int64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            auto& acc = per_block[static_cast<std::size_t>(b)];
            const std::int64_t end = std::min(trials, (b + 1) * detail::kBlockSize);
            for (std::int64_t i = b * detail::kBlockSize; i < end; ++i) {
                TrialRng rng(seed, static_cast<std::uint64_t>(i));
                const TrajectoryRecord rec = sample_trajectory(rng, reference, k, f, options);
                for (int j = 0; j < k; ++j) acc[static_cast<std::size_t>(j)].add(rec.rounds[static_cast<std::size_t>(j)].cost);
            }
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, blocks));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }

    McEstimate out{std::vector<double>(static_cast<std::size_t>(k)), std::vector<double>(static_cast<std::size_t>(k)),
                   trials, seed};
    for (int j = 0; j < k; ++j) {
        detail::Moments total;
        for (const auto& block : per_block) total.merge(block[static_cast<std::size_t>(j)]);
        const double var = trials > 1 ? total.m2 / static_cast<double>(trials - 1) : 0.0;
        out.mean_cost[static_cast<std::size_t>(j)] = total.mean;
        out.std_error[static_cast<std::size_t>(j)] = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    }
    return out;
}

}  // namespace qclock
