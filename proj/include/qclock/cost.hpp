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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qclock/clock.hpp"

namespace qclock {

/// Even, 2pi-periodic cost f(t) = w0 - sum_k w_k cos(k t) with w_k >= 0.
class CostFunction {
  public:
    CostFunction(double w0, std::vector<double> weights) : w0_(w0), weights_(std::move(weights)) {
        for (std::size_t k = 0; k < weights_.size(); ++k) {
            if (!std::isfinite(weights_[k]) || weights_[k] < 0.0)
                throw DomainError("CostFunction: Fourier weight w_" + std::to_string(k + 1) +
                                  " must be finite and nonnegative");
        }
        if (!std::isfinite(w0_)) throw DomainError("CostFunction: offset must be finite");
    }

    double offset() const noexcept { return w0_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    /// w_k for k >= 1, zero beyond the stored terms.
    double weight(int k) const noexcept {
        return (k >= 1 && static_cast<std::size_t>(k) <= weights_.size()) ? weights_[static_cast<std::size_t>(k - 1)]
                                                                           : 0.0;
    }
    int degree() const noexcept { return static_cast<int>(weights_.size()); }

    double operator()(double delta) const {
        double f = w0_;
        for (std::size_t k = 0; k < weights_.size(); ++k) f -= weights_[k] * std::cos(static_cast<double>(k + 1) * delta);
        return f;
    }

    /// w0 + sum_k w_k, the largest value f can take.
    double upper_bound() const {
        double s = w0_;
        for (double w : weights_) s += w;
        return s;
    }

  private:
    double w0_;
    std::vector<double> weights_;
};

/// 4 sin^2(t/2) = 2 - 2 cos t.
inline CostFunction default_cost() { return CostFunction(2.0, {2.0}); }

inline double eval_cost(const CostFunction& f, double delta) { return f(delta); }

/// Lower bound on the mean cost of any covariant measurement for a pure reference
/// with real nonnegative amplitudes: w0 - sum_k w_k sum_m a_m a_{m+k}.
inline double holevo_bound(const SymmetricState& psi, const CostFunction& f) {
    if (!psi.has_real_nonnegative_amplitudes())
        throw ConventionError("holevo_bound: amplitudes must be real and nonnegative");
    const Vector& a = psi.amplitudes();
    const int dim = psi.spec().dimension();
    double bound = f.offset();
    for (int k = 1; k <= f.degree() && k < dim; ++k) {
        double overlap = 0.0;
        for (int m = 0; m + k < dim; ++m) overlap += a(m).real() * a(m + k).real();
        bound -= f.weight(k) * overlap;
    }
    return bound;
}

/// Mean cost of reading the clock prepared in `rho` with the phase-state apparatus,
/// averaged over a uniform prior on the true time and a uniform apparatus orientation:
/// w0 - sum_k w_k Re(c_k), c_k the k-th band sum of rho.
inline double mean_cost_of_state(const DensityMatrix& rho, const CostFunction& f) {
    double cost = f.offset();
    for (int k = 1; k <= f.degree() && k <= rho.spec().n_qubits(); ++k) cost -= f.weight(k) * rho.band_sum(k).real();
    return cost;
}

/// Closed-form mean cost of observer k for the flat reference and the default cost:
/// 2 [1 - (N/(N+1))^k].
inline double mean_cost_analytic(int n_qubits, int observer) {
    if (n_qubits < 0) throw DomainError("mean_cost_analytic: N must be nonnegative");
    if (observer < 1) throw DomainError("mean_cost_analytic: observer index must be >= 1");
    const double ratio = static_cast<double>(n_qubits) / static_cast<double>(n_qubits + 1);
    return 2.0 * (1.0 - std::pow(ratio, observer));
}

}  // namespace qclock
