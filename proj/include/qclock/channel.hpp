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

// Orientation-averaged measure-and-discard channel: the state an observer leaves
// behind for the next one when neither the apparatus orientation nor the outcome
// is communicated.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qclock/clock.hpp"
#include "qclock/cost.hpp"

namespace qclock {

/// E(rho): every entry on off-diagonal band d becomes c_d / (N+1).
inline DensityMatrix apply_channel(const DensityMatrix& rho) {
    const int dim = rho.spec().dimension();
    Matrix out(dim, dim);
    for (int d = -(dim - 1); d < dim; ++d) {
        const complex value = rho.band_sum(d) / static_cast<double>(dim);
        for (int m = std::max(0, -d); m < dim && m + d < dim; ++m) out(m, m + d) = value;
    }
    return DensityMatrix::unchecked(rho.spec(), std::move(out));
}

/// E(rho) by brute force: average of sum_r p_r |Psi_r^a><Psi_r^a| over `nodes`
/// equally spaced orientations. The integrand is a trigonometric polynomial of
/// degree <= 2N in the orientation, so the grid is exact once nodes >= 2N + 2.
inline DensityMatrix apply_channel_quadrature(const DensityMatrix& rho, int nodes) {
    const int n = rho.spec().n_qubits();
    if (nodes < 2 * n + 2)
        throw QuadratureDegreeError("apply_channel_quadrature: need at least " + std::to_string(2 * n + 2) +
                                    " nodes for N=" + std::to_string(n) + ", got " + std::to_string(nodes));
    const int dim = rho.spec().dimension();
    Matrix acc = Matrix::Zero(dim, dim);
    for (int j = 0; j < nodes; ++j) {
        const PhaseBasis basis(rho.spec(), kTwoPi * j / nodes);
        const std::vector<double> p = born_probabilities(rho, basis);
        for (int r = 0; r < dim; ++r) {
            const Vector& v = basis.state(r).amplitudes();
            acc += p[static_cast<std::size_t>(r)] * (v * v.adjoint());
        }
    }
    acc /= static_cast<double>(nodes);
    return DensityMatrix::unchecked(rho.spec(), std::move(acc));
}

enum class ReferenceKind { flat, optimal, custom };

inline std::string_view to_string(ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::flat: return "flat";
        case ReferenceKind::optimal: return "optimal";
        case ReferenceKind::custom: return "custom";
    }
    return "custom";
}

/// Reference state for a named kind; `custom` has no canonical state.
inline SymmetricState make_reference(const ClockSpec& spec, ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::flat: return reference_phase_state(spec);
        case ReferenceKind::optimal: return optimal_reference_state(spec);
        case ReferenceKind::custom: break;
    }
    throw DomainError("make_reference: custom references must be supplied explicitly");
}

struct ChainOptions {
    ReferenceKind reference = ReferenceKind::custom;
    bool store_states = false;
};

struct ObserverChainReport {
    ClockSpec spec;
    ReferenceKind reference;
    /// costs[j-1] is the mean cost of observer j.
    std::vector<double> costs;
    /// Omega_j at t = 0, present only when requested.
    std::optional<std::vector<DensityMatrix>> states;
};

/// Exact mean costs of k successive non-communicating observers:
/// Omega_1 = |ref><ref|, Omega_{j+1} = E(Omega_j), cost_j = mean_cost_of_state(Omega_j).
/// Throws NumericError if an intermediate state leaves the set of density matrices,
/// or, for real nonnegative references, if band sums pick up an imaginary part or
/// the costs decrease.
inline ObserverChainReport observer_chain_exact(const SymmetricState& reference, int k, const CostFunction& f,
                                                ChainOptions options = {}) {
    if (k < 1) throw DomainError("observer_chain_exact: number of observers must be >= 1");
    ObserverChainReport report{reference.spec(), options.reference, {}, std::nullopt};
    report.costs.reserve(static_cast<std::size_t>(k));
    if (options.store_states) {
        report.states.emplace();
        report.states->reserve(static_cast<std::size_t>(k));
    }

    const bool real_reference = reference.has_real_nonnegative_amplitudes();
    const int n = reference.spec().n_qubits();
    DensityMatrix omega = DensityMatrix::pure(reference);
    for (int j = 1; j <= k; ++j) {
        if (std::abs(omega.trace() - 1.0) > kSpectralTol)
            throw NumericError("observer_chain_exact: trace drifted at observer " + std::to_string(j));
        if (real_reference) {
            for (int d = 1; d <= std::min(f.degree(), n); ++d) {
                if (std::abs(omega.band_sum(d).imag()) > kSpectralTol)
                    throw NumericError("observer_chain_exact: complex band sum at observer " + std::to_string(j));
            }
        }
        const double cost = mean_cost_of_state(omega, f);
        if (real_reference && !report.costs.empty() && cost < report.costs.back() - kConstructiveTol)
            throw NumericError("observer_chain_exact: cost decreased at observer " + std::to_string(j));
        report.costs.push_back(cost);
        if (options.store_states) {
            omega.validate();
            report.states->push_back(omega);
        }
        if (j < k) omega = apply_channel(omega);
    }
    return report;
}

}  // namespace qclock
