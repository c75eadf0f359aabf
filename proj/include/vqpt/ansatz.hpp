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

// Product ansatz |phi(lambda)> = e^{-i lambda_0} U_N(lambda_N) ... U_1(lambda_1) |phi_0>.
//
// Gates are stored in application order: gates()[0] acts on the reference
// first. A product written left to right, e^{A} e^{B} |phi_0>, is therefore
// listed as {B, A}. When the global-phase parameter is enabled it occupies
// index 0 of the parameter vector and gate parameters follow.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "vqpt/error.hpp"
#include "vqpt/mv_system.hpp"
#include "vqpt/pauli.hpp"
#include "vqpt/state_vector.hpp"

namespace vqpt {

using Params = Eigen::VectorXd;

enum class SignConvention { minus_i, plus_i };

inline std::string to_string(SignConvention s) { return s == SignConvention::minus_i ? "minus_i" : "plus_i"; }

inline SignConvention sign_from_string(const std::string &s) {
    if (s == "minus_i" || s == "-i" || s == "-") {
        return SignConvention::minus_i;
    }
    if (s == "plus_i" || s == "+i" || s == "+") {
        return SignConvention::plus_i;
    }
    throw ParseError("unknown sign convention '" + s + "'");
}

/// exp(-i lambda G) for minus_i, exp(+i lambda G) for plus_i.
struct AnsatzGate {
    PauliSum generator;
    SignConvention sign = SignConvention::minus_i;

    AnsatzGate(PauliSum g, SignConvention s) : generator(std::move(g)), sign(s) {
        if (!generator.is_hermitian()) {
            throw DomainError("ansatz generator is not Hermitian");
        }
    }

    /// Multiplier turning lambda into the angle of exp(-i angle G).
    double angle_factor() const { return sign == SignConvention::minus_i ? 1.0 : -1.0; }

    /// dU/dlambda = prefactor * G * U.
    Complex derivative_prefactor() const {
        return sign == SignConvention::minus_i ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
    }

    bool operator==(const AnsatzGate &) const = default;
};

class Ansatz {
  public:
    Ansatz(std::vector<AnsatzGate> gates, StateVector reference, bool global_phase_param)
        : gates_(std::move(gates)), reference_(std::move(reference)),
          global_phase_(global_phase_param) {
        for (const auto &g : gates_) {
            detail::require_same_qubits(reference_.qubit_count(), g.generator.qubit_count(),
                                        "Ansatz");
        }
    }

    std::size_t qubit_count() const { return reference_.qubit_count(); }
    std::span<const AnsatzGate> gates() const { return gates_; }
    const StateVector &reference() const { return reference_; }
    bool has_global_phase() const { return global_phase_; }
    std::size_t gate_offset() const { return global_phase_ ? 1 : 0; }
    std::size_t parameter_count() const { return gates_.size() + gate_offset(); }

    Ansatz with_global_phase(bool on) const { return Ansatz(gates_, reference_, on); }

    void check_params(const Params &params) const {
        if (static_cast<std::size_t>(params.size()) != parameter_count()) {
            throw DimensionError("ansatz expects " + std::to_string(parameter_count()) +
                                 " parameters, got " + std::to_string(params.size()));
        }
    }

    Amplitudes prepare_amplitudes(const Params &params) const {
        check_params(params);
        Amplitudes v = reference_.amplitudes();
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            v = apply_gate(g, params, v);
        }
        if (global_phase_) {
            v *= std::exp(Complex(0.0, -params(0)));
        }
        return v;
    }

    StateVector prepare(const Params &params) const {
        return StateVector::normalized(qubit_count(), prepare_amplitudes(params));
    }

    /// d|phi>/d lambda_k; the generator is inserted right after its own gate.
    Amplitudes derivative_state(const Params &params, std::size_t k) const {
        check_params(params);
        if (k >= parameter_count()) {
            throw DimensionError("parameter index " + std::to_string(k) + " out of range");
        }
        if (global_phase_ && k == 0) {
            return Complex(0.0, -1.0) * prepare_amplitudes(params);
        }
        const std::size_t target = k - gate_offset();
        Amplitudes v = reference_.amplitudes();
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            v = apply_gate(g, params, v);
            if (g == target) {
                v = gates_[g].derivative_prefactor() * apply_pauli_sum(gates_[g].generator, v);
            }
        }
        if (global_phase_) {
            v *= std::exp(Complex(0.0, -params(0)));
        }
        return v;
    }

    std::vector<Amplitudes> derivative_states(const Params &params) const {
        std::vector<Amplitudes> out;
        out.reserve(parameter_count());
        for (std::size_t k = 0; k < parameter_count(); ++k) {
            out.push_back(derivative_state(params, k));
        }
        return out;
    }

    /// The original rotation-pair ansatz e^{i l1 Z} e^{i l2 X}|0> for the
    /// two-level problem. Parameter order: [phase,] X angle, Z angle.
    static Ansatz two_level(bool global_phase) {
        return Ansatz({AnsatzGate(PauliSum(PauliTerm::parse("X")), SignConvention::plus_i),
                       AnsatzGate(PauliSum(PauliTerm::parse("Z")), SignConvention::plus_i)},
                      basis_state(1, "0"), global_phase);
    }

    /// e^{i l1 X0 Y1} e^{i l2 Z0} |01>. Parameter order: Z0 angle, X0Y1 angle.
    static Ansatz hydrogen() {
        return Ansatz({AnsatzGate(PauliSum(PauliTerm::parse("ZI")), SignConvention::plus_i),
                       AnsatzGate(PauliSum(PauliTerm::parse("XY")), SignConvention::plus_i)},
                      basis_state(2, "01"), false);
    }

    /// exp(-i l X)|0>, whose exact dynamics under H = X is lambda(t) = t.
    static Ansatz x_rotation() {
        return Ansatz({AnsatzGate(PauliSum(PauliTerm::parse("X")), SignConvention::minus_i)},
                      basis_state(1, "0"), false);
    }

    bool operator==(const Ansatz &o) const {
        return gates_ == o.gates_ && global_phase_ == o.global_phase_ &&
               reference_.amplitudes() == o.reference_.amplitudes();
    }

  private:
    Amplitudes apply_gate(std::size_t g, const Params &params, const Amplitudes &v) const {
        const double lambda = params(static_cast<Eigen::Index>(g + gate_offset()));
        return apply_exp_pauli(gates_[g].generator, gates_[g].angle_factor() * lambda, v);
    }

    std::vector<AnsatzGate> gates_;
    StateVector reference_;
    bool global_phase_;
};

/// M_ki = Re<d_k phi|d_i phi>, V_k = Im<d_k phi|H|phi>.
inline MVSystem assemble_mv(const Ansatz &a, const Params &params, const PauliSum &h) {
    detail::require_same_qubits(a.qubit_count(), h.qubit_count(), "assemble_mv");
    const auto d = a.derivative_states(params);
    const Amplitudes h_phi = apply_pauli_sum(h, a.prepare_amplitudes(params));
    const auto n = static_cast<Eigen::Index>(d.size());
    Eigen::MatrixXd m(n, n);
    Eigen::VectorXd v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = k; i < n; ++i) {
            m(k, i) = m(i, k) = inner(d[k], d[i]).real();
        }
        v(k) = inner(d[k], h_phi).imag();
    }
    return MVSystem(std::move(m), std::move(v));
}

/// Re<d_k phi|H|phi>, half the energy gradient.
inline Eigen::VectorXd energy_half_gradient(const Ansatz &a, const Params &params, const PauliSum &h) {
    detail::require_same_qubits(a.qubit_count(), h.qubit_count(), "energy_half_gradient");
    const auto d = a.derivative_states(params);
    const Amplitudes h_phi = apply_pauli_sum(h, a.prepare_amplitudes(params));
    Eigen::VectorXd c(static_cast<Eigen::Index>(d.size()));
    for (std::size_t k = 0; k < d.size(); ++k) {
        c(static_cast<Eigen::Index>(k)) = inner(d[k], h_phi).real();
    }
    return c;
}

} // namespace vqpt
