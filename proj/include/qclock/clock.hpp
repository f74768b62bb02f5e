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

// States, phase-state bases, free evolution and von Neumann measurement on the
// (N+1)-dimensional symmetric subspace of N two-level systems. Basis vector |m>
// carries m excitations and is an eigenvector of the generator with eigenvalue m.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qclock/errors.hpp"

namespace qclock {

using complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance for identities that hold by construction.
inline constexpr double kConstructiveTol = 1e-12;
/// Tolerance for spectral quantities and accumulated roundoff.
inline constexpr double kSpectralTol = 1e-10;

/// Maps an angle onto [0, 2pi).
inline double wrap_angle(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

class ClockSpec {
  public:
    explicit ClockSpec(int n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits < 0) throw DomainError("ClockSpec: number of qubits must be nonnegative");
    }

    int n_qubits() const noexcept { return n_qubits_; }
    int dimension() const noexcept { return n_qubits_ + 1; }

    /// Eigenvalue of the generator on |m>.
    double generator_eigenvalue(int m) const {
        check_level(m);
        return static_cast<double>(m);
    }

    /// Dense diagonal generator diag(0, 1, ..., N).
    Matrix generator() const {
        Matrix h = Matrix::Zero(dimension(), dimension());
        for (int m = 0; m < dimension(); ++m) h(m, m) = static_cast<double>(m);
        return h;
    }

    void check_level(int m) const {
        if (m < 0 || m > n_qubits_)
            throw IndexError("index " + std::to_string(m) + " outside 0.." + std::to_string(n_qubits_));
    }

    friend bool operator==(const ClockSpec&, const ClockSpec&) = default;

  private:
    int n_qubits_;
};

inline void require_same_spec(const ClockSpec& a, const ClockSpec& b, const char* what) {
    if (!(a == b))
        throw DimensionError(std::string(what) + ": clock sizes differ (N=" + std::to_string(a.n_qubits()) +
                             " vs N=" + std::to_string(b.n_qubits()) + ")");
}

/// Pure state on the symmetric subspace, stored as amplitudes over |0>..|N>.
class SymmetricState {
  public:
    /// Throws DomainError unless the amplitudes have unit norm within 1e-12.
    SymmetricState(ClockSpec spec, Vector amplitudes) : spec_(spec), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != spec_.dimension())
            throw DimensionError("SymmetricState: expected " + std::to_string(spec_.dimension()) + " amplitudes");
        if (std::abs(amplitudes_.squaredNorm() - 1.0) > kConstructiveTol)
            throw DomainError("SymmetricState: amplitudes are not normalized");
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    static SymmetricState normalized(ClockSpec spec, Vector amplitudes) {
        const double norm = amplitudes.norm();
        if (!(norm > 0.0)) throw DomainError("SymmetricState: zero vector cannot be normalized");
        amplitudes /= norm;
        return SymmetricState(spec, std::move(amplitudes));
    }

    const ClockSpec& spec() const noexcept { return spec_; }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    complex amplitude(int m) const {
        spec_.check_level(m);
        return amplitudes_(m);
    }

    /// <this|other>
    complex inner(const SymmetricState& other) const {
        require_same_spec(spec_, other.spec_, "inner");
        return amplitudes_.dot(other.amplitudes_);
    }

    /// True when every amplitude is real and nonnegative within `tol`.
    bool has_real_nonnegative_amplitudes(double tol = kConstructiveTol) const {
        for (Eigen::Index m = 0; m < amplitudes_.size(); ++m) {
            if (std::abs(amplitudes_(m).imag()) > tol || amplitudes_(m).real() < -tol) return false;
        }
        return true;
    }

  private:
    ClockSpec spec_;
    Vector amplitudes_;
};

/// Density operator on the symmetric subspace.
class DensityMatrix {
  public:
    /// Validated construction: Hermitian and unit trace within 1e-12, spectrum above -1e-10.
    static DensityMatrix from_matrix(ClockSpec spec, Matrix entries) {
        DensityMatrix rho(spec, std::move(entries));
        rho.validate();
        return rho;
    }

    /// Skips the eigenvalue check. For results of trace- and positivity-preserving maps.
    static DensityMatrix unchecked(ClockSpec spec, Matrix entries) { return DensityMatrix(spec, std::move(entries)); }

    static DensityMatrix pure(const SymmetricState& psi) {
        const Vector& a = psi.amplitudes();
        return DensityMatrix(psi.spec(), a * a.adjoint());
    }

    static DensityMatrix maximally_mixed(ClockSpec spec) {
        const int d = spec.dimension();
        return DensityMatrix(spec, Matrix::Identity(d, d) / static_cast<double>(d));
    }

    const ClockSpec& spec() const noexcept { return spec_; }
    const Matrix& entries() const noexcept { return entries_; }
    complex operator()(int m, int n) const { return entries_(m, n); }

    double trace() const { return entries_.trace().real(); }

    double hermiticity_defect() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

    /// c_d = sum_m rho(m, m+d), for -N <= d <= N; zero outside that range.
    complex band_sum(int d) const {
        const int dim = spec_.dimension();
        if (d >= dim || d <= -dim) return {0.0, 0.0};
        complex c{0.0, 0.0};
        if (d >= 0) {
            for (int m = 0; m + d < dim; ++m) c += entries_(m, m + d);
        } else {
            for (int m = -d; m < dim; ++m) c += entries_(m, m + d);
        }
        return c;
    }

    /// Throws NumericError on the first violated density-matrix invariant.
    void validate() const {
        if (entries_.rows() != spec_.dimension() || entries_.cols() != spec_.dimension())
            throw DimensionError("DensityMatrix: expected a square matrix of dimension " +
                                 std::to_string(spec_.dimension()));
        if (!entries_.allFinite()) throw NumericError("DensityMatrix: non-finite entry");
        if (hermiticity_defect() > kConstructiveTol) throw NumericError("DensityMatrix: not Hermitian");
        if (std::abs(entries_.trace() - complex{1.0, 0.0}) > kConstructiveTol)
            throw NumericError("DensityMatrix: trace differs from 1");
        if (min_eigenvalue() < -kSpectralTol) throw NumericError("DensityMatrix: negative eigenvalue");
    }

  private:
    DensityMatrix(ClockSpec spec, Matrix entries) : spec_(spec), entries_(std::move(entries)) {}

    ClockSpec spec_;
    Matrix entries_;
};

/// Phase state with outcome index r for an apparatus at orientation alpha:
/// amplitude of |m> is exp(i (2 pi r / (N+1) + alpha) m) / sqrt(N+1).
inline SymmetricState phase_state(const ClockSpec& spec, int r, double alpha) {
    spec.check_level(r);
    const int dim = spec.dimension();
    const double theta = kTwoPi * r / dim + alpha;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    Vector a(dim);
    for (int m = 0; m < dim; ++m) a(m) = std::polar(scale, theta * m);
    return SymmetricState(spec, std::move(a));
}

/// Flat superposition of all |m>, the r = 0 phase state at orientation 0.
inline SymmetricState reference_phase_state(const ClockSpec& spec) {
    const int dim = spec.dimension();
    return SymmetricState(spec, Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

/// Sine-profile reference state minimizing the single-observer cost for large N.
/// Amplitudes are sin(pi (m + 1/2) / (N+1)), renormalized numerically.
inline SymmetricState optimal_reference_state(const ClockSpec& spec) {
    const int dim = spec.dimension();
    Vector a(dim);
    for (int m = 0; m < dim; ++m) a(m) = std::sin(std::numbers::pi * (m + 0.5) / dim);
    return SymmetricState::normalized(spec, std::move(a));
}

/// Free evolution for time t: a_m -> exp(i t m) a_m.
inline SymmetricState evolve(const SymmetricState& psi, double t) {
    Vector a = psi.amplitudes();
    for (Eigen::Index m = 0; m < a.size(); ++m) a(m) *= std::polar(1.0, t * static_cast<double>(m));
    return SymmetricState(psi.spec(), std::move(a));
}

/// Free evolution for time t: rho(m, n) -> exp(i t (m - n)) rho(m, n).
inline DensityMatrix evolve(const DensityMatrix& rho, double t) {
    Matrix e = rho.entries();
    for (Eigen::Index m = 0; m < e.rows(); ++m) {
        for (Eigen::Index n = 0; n < e.cols(); ++n) e(m, n) *= std::polar(1.0, t * static_cast<double>(m - n));
    }
    return DensityMatrix::unchecked(rho.spec(), std::move(e));
}

/// Orthonormal phase-state basis of one apparatus orientation.
class PhaseBasis {
  public:
    PhaseBasis(ClockSpec spec, double orientation) : spec_(spec), orientation_(wrap_angle(orientation)) {
        states_.reserve(spec_.dimension());
        for (int r = 0; r < spec_.dimension(); ++r) states_.push_back(phase_state(spec_, r, orientation_));
    }

    const ClockSpec& spec() const noexcept { return spec_; }
    double orientation() const noexcept { return orientation_; }
    int size() const noexcept { return spec_.dimension(); }
    const std::vector<SymmetricState>& states() const noexcept { return states_; }

    const SymmetricState& state(int r) const {
        spec_.check_level(r);
        return states_[static_cast<std::size_t>(r)];
    }

    /// Time reading associated with outcome r: orientation + 2 pi r / (N+1), wrapped to [0, 2pi).
    double estimate(int r) const {
        spec_.check_level(r);
        return wrap_angle(orientation_ + kTwoPi * r / spec_.dimension());
    }

  private:
    ClockSpec spec_;
    double orientation_;
    std::vector<SymmetricState> states_;
};

/// p_r = <Psi_r|rho|Psi_r> for each outcome of the basis.
inline std::vector<double> born_probabilities(const DensityMatrix& rho, const PhaseBasis& basis) {
    require_same_spec(rho.spec(), basis.spec(), "born_probabilities");
    std::vector<double> p(static_cast<std::size_t>(basis.size()));
    for (int r = 0; r < basis.size(); ++r) {
        const Vector& v = basis.state(r).amplitudes();
        p[static_cast<std::size_t>(r)] = v.dot(rho.entries() * v).real();
    }
    return p;
}

/// Pure-state shortcut: p_r = |<Psi_r|psi>|^2.
inline std::vector<double> born_probabilities(const SymmetricState& psi, const PhaseBasis& basis) {
    require_same_spec(psi.spec(), basis.spec(), "born_probabilities");
    std::vector<double> p(static_cast<std::size_t>(basis.size()));
    for (int r = 0; r < basis.size(); ++r) p[static_cast<std::size_t>(r)] = std::norm(basis.state(r).inner(psi));
    return p;
}

/// Post-measurement state for outcome r: the rank-one projector onto that basis state.
inline DensityMatrix collapse(const PhaseBasis& basis, int r) { return DensityMatrix::pure(basis.state(r)); }

}  // namespace qclock
