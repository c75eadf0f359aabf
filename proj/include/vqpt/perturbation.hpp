// Copyright 2026 The vqpt Authors
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

// Classical reference computations: exact diagonalization, nondegenerate
// Rayleigh-Schroedinger corrections, coefficient ODEs for a driven system in
// the interaction picture, and the closed-form two-level Rabi populations.
// Units have hbar = 1.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "vqpt/error.hpp"
#include "vqpt/hamiltonian.hpp"
#include "vqpt/ode.hpp"
#include "vqpt/pauli.hpp"

namespace vqpt {

inline constexpr double kDegeneracyGap = 1e-8;

/// Ascending energies with orthonormal eigenvectors as matrix columns.
struct SpectralData {
    Eigen::VectorXd energies;
    Matrix states;

    Eigen::Index size() const { return energies.size(); }
    Amplitudes state(Eigen::Index k) const { return states.col(k); }
};

namespace detail {

// Largest-magnitude component (first on ties) made real and positive.
inline void fix_phase(Eigen::Ref<Amplitudes> v) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        best = std::max(best, std::abs(v(i)));
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) >= best - 1e-12) {
            v *= std::conj(v(i)) / std::abs(v(i));
            return;
        }
    }
}

// Replace an eigenvector block spanning a degenerate eigenspace with the
// Gram-Schmidt orthonormalization of its projections of e_0, e_1, ...
inline void canonicalize_block(Eigen::Ref<Matrix> block) {
    const Eigen::Index dim = block.rows();
    const Eigen::Index k = block.cols();
    const Matrix projector = block * block.adjoint();
    Matrix out(dim, k);
    Eigen::Index filled = 0;
    for (Eigen::Index j = 0; j < dim && filled < k; ++j) {
        Amplitudes v = projector.col(j);
        for (Eigen::Index c = 0; c < filled; ++c) {
            v -= out.col(c).dot(v) * out.col(c);
        }
        // a second pass keeps the basis orthonormal to round-off
        for (Eigen::Index c = 0; c < filled; ++c) {
            v -= out.col(c).dot(v) * out.col(c);
        }
        const double nv = v.norm();
        if (nv > 1e-6) {
            out.col(filled++) = v / nv;
        }
    }
    block = out;
}

} // namespace detail

inline SpectralData exact_diagonalize(const Matrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    if (eig.info() != Eigen::Success) {
        throw ConvergenceError("eigensolver failed");
    }
    SpectralData out{eig.eigenvalues(), eig.eigenvectors()};
    const Eigen::Index n = out.size();
    const double scale = 1.0 + out.energies.cwiseAbs().maxCoeff();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && out.energies(stop) - out.energies(start) <= 1e-10 * scale) {
            ++stop;
        }
        if (stop - start > 1) {
            detail::canonicalize_block(out.states.middleCols(start, stop - start));
            const double mean = out.energies.segment(start, stop - start).mean();
            out.energies.segment(start, stop - start).setConstant(mean);
        } else {
            detail::fix_phase(out.states.col(start));
        }
        start = stop;
    }
    return out;
}

inline SpectralData exact_diagonalize(const PauliSum &h, std::size_t cap = kDefaultDenseCap) {
    if (!h.is_hermitian()) {
        throw DomainError("exact_diagonalize: Hamiltonian is not Hermitian");
    }
    return exact_diagonalize(to_dense(h, cap));
}

struct PerturbativeResult {
    double energy = 0.0;
    Amplitudes state;
};

/// Nondegenerate correction for level `level` of h0 under h0 + lambda v.
/// order 1: E_n + lambda V_nn, |n> + lambda sum_m V_mn/(E_n - E_m)|m>.
/// order 2 adds lambda^2 sum_m |V_mn|^2/(E_n - E_m) to the energy and the
/// second-order state terms, including the -1/2 normalization term.
inline PerturbativeResult tipt_corrections(const PauliSum &h0, const PauliSum &v, double lambda,
                                           std::size_t level, int order) {
    detail::require_same_qubits(h0.qubit_count(), v.qubit_count(), "tipt_corrections");
    if (order != 1 && order != 2) {
        throw DomainError("tipt_corrections: order must be 1 or 2");
    }
    if (!v.is_hermitian()) {
        throw DomainError("tipt_corrections: perturbation is not Hermitian");
    }
    const SpectralData spec = exact_diagonalize(h0);
    const auto n = static_cast<Eigen::Index>(level);
    if (n >= spec.size()) {
        throw DimensionError("tipt_corrections: level out of range");
    }
    const Eigen::VectorXd &e = spec.energies;
    for (Eigen::Index m = 0; m < spec.size(); ++m) {
        if (m != n && std::abs(e(n) - e(m)) <= kDegeneracyGap) {
            throw DomainError("tipt_corrections: level " + std::to_string(level) +
                              " is degenerate with level " + std::to_string(m));
        }
    }
    // V in the unperturbed eigenbasis
    const Matrix vmat = spec.states.adjoint() * to_dense(v) * spec.states;
    const Eigen::Index dim = spec.size();

    double energy = e(n) + lambda * vmat(n, n).real();
    Amplitudes coeffs = Amplitudes::Zero(dim);
    coeffs(n) = 1.0;
    for (Eigen::Index m = 0; m < dim; ++m) {
        if (m != n) {
            coeffs(m) += lambda * vmat(m, n) / (e(n) - e(m));
        }
    }
    if (order == 2) {
        const double l2 = lambda * lambda;
        double norm_term = 0.0;
        for (Eigen::Index m = 0; m < dim; ++m) {
            if (m == n) {
                continue;
            }
            const double gap = e(n) - e(m);
            energy += l2 * std::norm(vmat(m, n)) / gap;
            norm_term += std::norm(vmat(m, n)) / (gap * gap);
            Complex cross = 0.0;
            for (Eigen::Index l = 0; l < dim; ++l) {
                if (l != n) {
                    cross += vmat(m, l) * vmat(l, n) / (gap * (e(n) - e(l)));
                }
            }
            cross -= vmat(n, n) * vmat(m, n) / (gap * gap);
            coeffs(m) += l2 * cross;
        }
        coeffs(n) -= 0.5 * l2 * norm_term;
    }
    return {energy, spec.states * coeffs};
}

/// Coefficient history c(t_k) on a uniform grid.
struct CoefficientTrajectory {
    std::vector<double> times;
    std::vector<Amplitudes> coefficients;
};

/// Integrates i c_m' = sum_n V_mn(t) e^{i (E_m - E_n) t} c_n with RK4, where
/// V_mn is taken in the basis given by the columns of `h0.states`.
inline CoefficientTrajectory tdpt_integrate(const SpectralData &h0, const DriveSpec &drive,
                                            const Amplitudes &c0, double t_final, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("tdpt_integrate: dt must be positive");
    }
    if (c0.size() != h0.size()) {
        throw DimensionError("tdpt_integrate: c0 length does not match the basis");
    }
    if (std::abs(c0.squaredNorm() - 1.0) > 1e-10) {
        throw DomainError("tdpt_integrate: c0 must be normalized");
    }
    const Eigen::Index dim = h0.size();
    std::vector<Matrix> couplings;
    for (const auto &term : drive.terms()) {
        if (static_cast<Eigen::Index>((std::size_t{1} << term.op.qubit_count())) != dim) {
            throw DimensionError("tdpt_integrate: drive term acts on a different space");
        }
        couplings.push_back(h0.states.adjoint() * to_dense(term.op) * h0.states);
    }
    const auto terms = drive.terms();
    const Eigen::VectorXd &e = h0.energies;
    const auto rhs = [&](double t, const Amplitudes &c) -> Amplitudes {
        Matrix vt = Matrix::Zero(dim, dim);
        for (std::size_t k = 0; k < terms.size(); ++k) {
            vt += terms[k].coefficient(t) * couplings[k];
        }
        Amplitudes out = Amplitudes::Zero(dim);
        for (Eigen::Index m = 0; m < dim; ++m) {
            Complex acc = 0.0;
            for (Eigen::Index nn = 0; nn < dim; ++nn) {
                acc += vt(m, nn) * std::exp(Complex(0.0, (e(m) - e(nn)) * t)) * c(nn);
            }
            out(m) = Complex(0.0, -1.0) * acc;
        }
        return out;
    };
    const auto grid = TimeGrid::cover(t_final, dt);
    CoefficientTrajectory out;
    out.times.reserve(grid.steps + 1);
    out.coefficients.reserve(grid.steps + 1);
    out.times.push_back(0.0);
    out.coefficients.push_back(c0);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        out.coefficients.push_back(rk4_step(rhs, grid.time(k), out.coefficients.back(), grid.step));
        out.times.push_back(grid.time(k + 1));
    }
    return out;
}

/// Computational-basis variant: h0 diagonal with the given energies.
inline CoefficientTrajectory tdpt_integrate(const std::vector<double> &h0_energies,
                                            const DriveSpec &drive, const Amplitudes &c0,
                                            double t_final, double dt) {
    const auto dim = static_cast<Eigen::Index>(h0_energies.size());
    SpectralData basis{Eigen::Map<const Eigen::VectorXd>(h0_energies.data(), dim),
                       Matrix::Identity(dim, dim)};
    return tdpt_integrate(basis, drive, c0, t_final, dt);
}

struct TwoLevelPopulations {
    double p1 = 1.0;
    double p2 = 0.0;
};

/// Two-level populations starting from the lower state, coupling strength
/// delta, drive frequency omega and level splitting omega21.
inline TwoLevelPopulations rabi_analytic(double delta, double omega, double omega21, double t) {
    const double detuning = omega - omega21;
    const double rabi2 = delta * delta + 0.25 * detuning * detuning;
    if (rabi2 == 0.0) {
        return {1.0, 0.0};
    }
    const double s = std::sin(std::sqrt(rabi2) * t);
    const double p2 = delta * delta / rabi2 * s * s;
    return {1.0 - p2, p2};
}

} // namespace vqpt
