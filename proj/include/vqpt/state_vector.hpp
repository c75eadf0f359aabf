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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "vqpt/error.hpp"
#include "vqpt/hamiltonian.hpp"
#include "vqpt/ode.hpp"
#include "vqpt/pauli.hpp"

namespace vqpt {

inline constexpr double kNormTolerance = 1e-10;

inline std::size_t dimension_of(std::size_t qubit_count) { return std::size_t{1} << qubit_count; }

/// Bitstring for a basis index; leftmost character is qubit 0.
inline std::string basis_label(std::size_t qubit_count, std::size_t index) {
    std::string s(qubit_count, '0');
    for (std::size_t q = 0; q < qubit_count; ++q) {
        if (index & (std::size_t{1} << (qubit_count - 1 - q))) {
            s[q] = '1';
        }
    }
    return s;
}

/// Normalized pure state over 2^n computational basis states.
class StateVector {
  public:
    StateVector(std::size_t qubit_count, Amplitudes amplitudes)
        : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
        if (qubit_count_ == 0 || qubit_count_ > 30) {
            throw DimensionError("unsupported qubit count " + std::to_string(qubit_count_));
        }
        if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(qubit_count_)) {
            throw DimensionError("amplitude vector length " + std::to_string(amplitudes_.size()) +
                                 " does not match 2^" + std::to_string(qubit_count_));
        }
        const double norm2 = amplitudes_.squaredNorm();
        if (std::abs(norm2 - 1.0) > kNormTolerance) {
            throw DomainError("state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
        }
    }

    /// Rescales to unit norm; throws for the zero vector.
    static StateVector normalized(std::size_t qubit_count, Amplitudes amplitudes) {
        const double n = amplitudes.norm();
        if (n == 0.0) {
            throw DomainError("cannot normalize the zero vector");
        }
        amplitudes /= n;
        return StateVector(qubit_count, std::move(amplitudes));
    }

    static StateVector basis_state(std::size_t qubit_count, std::string_view label) {
        if (label.size() != qubit_count) {
            throw DimensionError("basis label '" + std::string(label) + "' does not have " +
                                 std::to_string(qubit_count) + " characters");
        }
        std::size_t index = 0;
        for (char c : label) {
            if (c != '0' && c != '1') {
                throw ParseError("basis label must be a bitstring, got '" + std::string(label) +
                                 "'");
            }
            index = (index << 1) | static_cast<std::size_t>(c == '1');
        }
        Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(dimension_of(qubit_count)));
        a(static_cast<Eigen::Index>(index)) = 1.0;
        return StateVector(qubit_count, std::move(a));
    }

    std::size_t qubit_count() const { return qubit_count_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Amplitudes &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
    double population(std::size_t i) const { return std::norm((*this)[i]); }

  private:
    std::size_t qubit_count_;
    Amplitudes amplitudes_;
};

inline StateVector basis_state(std::size_t qubit_count, std::string_view label) {
    return StateVector::basis_state(qubit_count, label);
}

namespace detail {

inline void require_length(const Amplitudes &v, std::size_t qubit_count, const char *what) {
    if (static_cast<std::size_t>(v.size()) != dimension_of(qubit_count)) {
        throw DimensionError(std::string(what) + ": vector length " + std::to_string(v.size()) +
                             " does not match " + std::to_string(qubit_count) + " qubits");
    }
}

} // namespace detail

// Raw-vector kernels. These are what derivative states and circuit branches
// use, since those vectors are not normalized.

inline Amplitudes apply_pauli(const PauliTerm &p, const Amplitudes &v) {
    detail::require_length(v, p.qubit_count(), "apply_pauli");
    Amplitudes out(v.size());
    for (Eigen::Index b = 0; b < v.size(); ++b) {
        auto [target, factor] = p.act_on_basis(static_cast<std::size_t>(b));
        out(static_cast<Eigen::Index>(target)) = factor * v(b);
    }
    return out;
}

inline Amplitudes apply_pauli_sum(const PauliSum &h, const Amplitudes &v) {
    detail::require_length(v, h.qubit_count(), "apply_pauli_sum");
    Amplitudes out = Amplitudes::Zero(v.size());
    for (const auto &e : h.entries()) {
        for (Eigen::Index b = 0; b < v.size(); ++b) {
            auto [target, factor] = e.term.act_on_basis(static_cast<std::size_t>(b));
            out(static_cast<Eigen::Index>(target)) += e.coefficient * factor * v(b);
        }
    }
    return out;
}

/// exp(-i angle G) v for a Hermitian generator G. A single Pauli string uses
/// cos(a c) - i sin(a c) P; anything else goes through a dense eigensolve.
inline Amplitudes apply_exp_pauli(const PauliSum &generator, double angle, const Amplitudes &v) {
    detail::require_length(v, generator.qubit_count(), "apply_exp_pauli");
    if (!generator.is_hermitian()) {
        throw DomainError("apply_exp_pauli: generator is not Hermitian");
    }
    if (generator.empty() || angle == 0.0) {
        return v;
    }
    if (generator.size() == 1) {
        const auto &e = generator.entries().front();
        const double theta = angle * e.coefficient.real();
        return std::cos(theta) * v - Complex(0.0, std::sin(theta)) * apply_pauli(e.term, v);
    }
    const Matrix h = to_dense(generator);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const Eigen::VectorXd &w = eig.eigenvalues();
    Amplitudes phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, -angle * w(k)));
    }
    const Matrix &u = eig.eigenvectors();
    return u * phases.cwiseProduct(u.adjoint() * v);
}

inline StateVector apply_pauli(const PauliTerm &p, const StateVector &s) {
    detail::require_same_qubits(p.qubit_count(), s.qubit_count(), "apply_pauli");
    return StateVector(s.qubit_count(), apply_pauli(p, s.amplitudes()));
}

inline StateVector apply_exp_pauli(const PauliSum &generator, double angle, const StateVector &s) {
    detail::require_same_qubits(generator.qubit_count(), s.qubit_count(), "apply_exp_pauli");
    return StateVector(s.qubit_count(), apply_exp_pauli(generator, angle, s.amplitudes()));
}

/// <a|b>, conjugating a.
inline Complex inner(const Amplitudes &a, const Amplitudes &b) {
    if (a.size() != b.size()) {
        throw DimensionError("inner: length mismatch");
    }
    return a.dot(b); // Eigen's dot conjugates the left operand
}

inline Complex inner(const StateVector &a, const StateVector &b) {
    detail::require_same_qubits(a.qubit_count(), b.qubit_count(), "inner");
    return inner(a.amplitudes(), b.amplitudes());
}

inline double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner(a, b)); }

/// <s|H|s>, real part (H Hermitian).
inline double expectation(const PauliSum &h, const StateVector &s) {
    detail::require_same_qubits(h.qubit_count(), s.qubit_count(), "expectation");
    return inner(s.amplitudes(), apply_pauli_sum(h, s.amplitudes())).real();
}

/// Dense Schroedinger-equation integrator (hbar = 1) for a possibly
/// time-dependent Hamiltonian, with renormalization after every step.
class ExactPropagator {
  public:
    explicit ExactPropagator(const TimeDependentHamiltonian &h, std::size_t cap = kDefaultDenseCap)
        : static_dense_(to_dense(h.static_part(), cap)), drive_(h.drive()) {
        for (const auto &term : drive_.terms()) {
            drive_dense_.push_back(to_dense(term.op, cap));
        }
    }

    Matrix hamiltonian_at(double t) const {
        Matrix m = static_dense_;
        const auto terms = drive_.terms();
        for (std::size_t k = 0; k < terms.size(); ++k) {
            m += terms[k].coefficient(t) * drive_dense_[k];
        }
        return m;
    }

    /// Advances v from t0 to t1 in uniform steps no longer than dt_max.
    Amplitudes advance(const Amplitudes &v, double t0, double t1, double dt_max) const {
        if (!(dt_max > 0.0)) {
            throw DomainError("exact propagation needs dt > 0");
        }
        const auto grid = TimeGrid::cover(t1 - t0, dt_max);
        const auto rhs = [this](double t, const Amplitudes &y) -> Amplitudes {
            return Complex(0.0, -1.0) * (hamiltonian_at(t) * y);
        };
        Amplitudes y = v;
        for (std::size_t k = 0; k < grid.steps; ++k) {
            y = rk4_step(rhs, t0 + grid.time(k), y, grid.step);
            y.normalize();
        }
        return y;
    }

  private:
    Matrix static_dense_;
    DriveSpec drive_;
    std::vector<Matrix> drive_dense_;
};

inline StateVector exact_propagate(const TimeDependentHamiltonian &h, const StateVector &s0,
                                   double t_final, double dt) {
    detail::require_same_qubits(h.qubit_count(), s0.qubit_count(), "exact_propagate");
    if (!(dt > 0.0)) {
        throw DomainError("exact_propagate: dt must be positive");
    }
    if (t_final < 0.0) {
        throw DomainError("exact_propagate: t_final must be non-negative");
    }
    const ExactPropagator prop(h);
    return StateVector::normalized(s0.qubit_count(), prop.advance(s0.amplitudes(), 0.0, t_final, dt));
}

inline StateVector exact_propagate(const PauliSum &h, const StateVector &s0, double t_final,
                                   double dt) {
    return exact_propagate(TimeDependentHamiltonian(h), s0, t_final, dt);
}

} // namespace vqpt
