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

// Hadamard-test evaluation of the overlaps entering M and V.
//
// The register is (ancilla, system...), ancilla being the top line. A
// sequence of operations acts on the system qubits; controlled ones act only
// on the ancilla-|1> branch. With the ancilla prepared by H (and S^dagger for
// the imaginary part) and closed by H, <Z_ancilla> = Re (Im) <A psi|B psi>,
// where A is the product of the uncontrolled operations and B the product of
// all of them.
//
// A derivative d_k phi = f_k U_N..U_{k+1} G_k U_k..U_1 phi_0 is realized by
// inserting an uncontrolled P followed by a controlled P right after gate k:
// the ancilla-|0> branch keeps P while P^2 = I removes it from the other.

#include <Eigen/Dense>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "vqpt/ansatz.hpp"
#include "vqpt/error.hpp"
#include "vqpt/mv_system.hpp"
#include "vqpt/pauli.hpp"
#include "vqpt/state_vector.hpp"

namespace vqpt {

enum class OverlapPart { real, imaginary };

/// exp(-i angle G) on the system qubits.
struct RotationOp {
    PauliSum generator;
    double angle = 0.0;
};

/// A (possibly phased) Pauli string on the system qubits.
struct PauliOp {
    PauliTerm term;
};

struct SequenceOp {
    std::variant<RotationOp, PauliOp> unitary;
    bool controlled = false;
};

struct ControlledSequence {
    std::size_t system_qubits = 0;
    std::vector<SequenceOp> operations;
    OverlapPart part = OverlapPart::real;
};

namespace detail {

inline std::size_t op_qubits(const SequenceOp &op) {
    return std::visit(
        [](const auto &u) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(u)>, RotationOp>) {
                return u.generator.qubit_count();
            } else {
                return u.term.qubit_count();
            }
        },
        op.unitary);
}

inline Amplitudes apply_system_op(const SequenceOp &op, const Amplitudes &v) {
    return std::visit(
        [&v](const auto &u) -> Amplitudes {
            if constexpr (std::is_same_v<std::decay_t<decltype(u)>, RotationOp>) {
                return apply_exp_pauli(u.generator, u.angle, v);
            } else {
                return apply_pauli(u.term, v);
            }
        },
        op.unitary);
}

inline std::string targets_string(std::size_t qubits) {
    std::string s;
    for (std::size_t q = 0; q < qubits; ++q) {
        s += (q ? ",q" : "q") + std::to_string(q);
    }
    return s;
}

} // namespace detail

/// Simulates the ancilla circuit on the full (1 + n)-qubit register and
/// returns the exact ancilla <Z>.
inline double hadamard_test(const ControlledSequence &seq, const StateVector &reference) {
    detail::require_same_qubits(seq.system_qubits, reference.qubit_count(), "hadamard_test");
    for (const auto &op : seq.operations) {
        detail::require_same_qubits(seq.system_qubits, detail::op_qubits(op), "hadamard_test op");
    }
    const auto half = static_cast<Eigen::Index>(dimension_of(seq.system_qubits));
    // ancilla is the most significant bit: first half |0>, second half |1>
    Amplitudes reg = Amplitudes::Zero(2 * half);
    reg.head(half) = reference.amplitudes();

    const double r = 1.0 / std::sqrt(2.0);
    const auto hadamard = [&]() {
        const Amplitudes a0 = reg.head(half);
        const Amplitudes a1 = reg.tail(half);
        reg.head(half) = r * (a0 + a1);
        reg.tail(half) = r * (a0 - a1);
    };
    hadamard();
    if (seq.part == OverlapPart::imaginary) {
        reg.tail(half) *= Complex(0.0, -1.0); // S^dagger
    }
    for (const auto &op : seq.operations) {
        reg.tail(half) = detail::apply_system_op(op, reg.tail(half));
        if (!op.controlled) {
            reg.head(half) = detail::apply_system_op(op, reg.head(half));
        }
    }
    hadamard();
    return reg.head(half).squaredNorm() - reg.tail(half).squaredNorm();
}

inline std::string describe(const ControlledSequence &seq) {
    std::string out = "H anc\n";
    if (seq.part == OverlapPart::imaginary) {
        out += "SDG anc\n";
    }
    const std::string targets = detail::targets_string(seq.system_qubits);
    for (const auto &op : seq.operations) {
        const std::string ctrl = op.controlled ? "ctrl(anc)" : "-";
        std::visit(
            [&](const auto &u) {
                if constexpr (std::is_same_v<std::decay_t<decltype(u)>, RotationOp>) {
                    std::string gen;
                    for (const auto &e : u.generator.entries()) {
                        gen += (gen.empty() ? "" : "+") + detail::format_double(e.coefficient.real()) +
                               "*" + e.term.letter_string();
                    }
                    out += "EXP[-i*" + detail::format_double(u.angle) + "*(" + gen + ")] " + ctrl +
                           " " + targets + "\n";
                } else {
                    out += "PAULI[" + u.term.to_string() + "] " + ctrl + " " + targets + "\n";
                }
            },
            op.unitary);
    }
    out += "H anc\nMEASURE_Z anc\n";
    return out;
}

/// Writes one listing file per MV assembly into a directory.
class CircuitDump {
  public:
    explicit CircuitDump(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    void write(const std::vector<std::pair<std::string, ControlledSequence>> &circuits) {
        const auto id = counter_.fetch_add(1);
        char name[32];
        std::snprintf(name, sizeof name, "mv_%06zu.txt", id);
        std::ofstream out(dir_ / name);
        for (const auto &[label, seq] : circuits) {
            out << "# " << label << " part=" << (seq.part == OverlapPart::real ? "real" : "imag")
                << "\n"
                << describe(seq) << "\n";
        }
    }

    const std::filesystem::path &directory() const { return dir_; }

  private:
    std::filesystem::path dir_;
    std::atomic<std::size_t> counter_{0};
};

namespace detail {

// One parameter's derivative: prefactor, the Pauli strings of its generator
// with real weights, and the gate it follows (none for the global phase).
struct DerivativeSpec {
    Complex prefactor;
    std::vector<std::pair<double, PauliTerm>> terms;
    std::ptrdiff_t after_gate = -1;
};

inline std::vector<DerivativeSpec> derivative_specs(const Ansatz &a) {
    std::vector<DerivativeSpec> out;
    if (a.has_global_phase()) {
        out.push_back({Complex(0.0, -1.0), {{1.0, PauliTerm::identity(a.qubit_count())}}, -1});
    }
    const auto gates = a.gates();
    for (std::size_t g = 0; g < gates.size(); ++g) {
        DerivativeSpec spec{gates[g].derivative_prefactor(), {}, static_cast<std::ptrdiff_t>(g)};
        for (const auto &e : gates[g].generator.entries()) {
            spec.terms.emplace_back(e.coefficient.real(), e.term);
        }
        out.push_back(std::move(spec));
    }
    return out;
}

// Circuit whose ancilla-|0> branch carries p_left after gate `left_after`
// and whose ancilla-|1> branch carries p_right after `right_after`, followed
// by an optional controlled Hamiltonian term at the end.
inline ControlledSequence overlap_circuit(const Ansatz &a, const Params &params,
                                          std::ptrdiff_t left_after, const PauliTerm *p_left,
                                          std::ptrdiff_t right_after, const PauliTerm *p_right,
                                          const PauliTerm *h_term, OverlapPart part) {
    ControlledSequence seq{a.qubit_count(), {}, part};
    const auto insert = [&](std::ptrdiff_t position) {
        if (p_left && left_after == position && !p_left->is_identity()) {
            seq.operations.push_back({PauliOp{*p_left}, false});
            seq.operations.push_back({PauliOp{*p_left}, true});
        }
        if (p_right && right_after == position && !p_right->is_identity()) {
            seq.operations.push_back({PauliOp{*p_right}, true});
        }
    };
    const auto gates = a.gates();
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const double lambda = params(static_cast<Eigen::Index>(g + a.gate_offset()));
        seq.operations.push_back({RotationOp{gates[g].generator, gates[g].angle_factor() * lambda}, false});
        insert(static_cast<std::ptrdiff_t>(g));
    }
    // global-phase insertions are identities and need no operation
    if (h_term) {
        seq.operations.push_back({PauliOp{*h_term}, true});
    }
    return seq;
}

// z = <A|B> from the real and (when needed) imaginary Hadamard tests.
struct OverlapEvaluator {
    const StateVector &reference;
    CircuitDump *dump;
    std::vector<std::pair<std::string, ControlledSequence>> log;

    double run(std::string label, ControlledSequence seq) {
        const double value = hadamard_test(seq, reference);
        if (dump) {
            log.emplace_back(std::move(label), std::move(seq));
        }
        return value;
    }
};

} // namespace detail

namespace detail {

// Re(w z) needs Re z when Re w != 0 and Im z when Im w != 0.
template <class Make>
double real_of_product(OverlapEvaluator &eval, Complex w, const std::string &label, Make make) {
    double out = 0.0;
    if (w.real() != 0.0) {
        out += w.real() * eval.run(label, make(OverlapPart::real));
    }
    if (w.imag() != 0.0) {
        out -= w.imag() * eval.run(label, make(OverlapPart::imaginary));
    }
    return out;
}

// Re(scale * <d_k phi|H|phi>) for every parameter k.
inline Eigen::VectorXd hamiltonian_overlaps(const Ansatz &a, const Params &params,
                                            const PauliSum &h, Complex scale,
                                            const std::vector<DerivativeSpec> &specs,
                                            OverlapEvaluator &eval, const char *tag) {
    const auto n = static_cast<Eigen::Index>(specs.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto &sk = specs[static_cast<std::size_t>(k)];
        double acc = 0.0;
        for (const auto &[wk, pk] : sk.terms) {
            for (const auto &e : h.entries()) {
                const Complex w = scale * std::conj(sk.prefactor) * wk * e.coefficient.real();
                const std::string label = std::string(tag) + "[" + std::to_string(k) + "] " +
                                          pk.letter_string() + "/" + e.term.letter_string();
                acc += real_of_product(eval, w, label, [&](OverlapPart part) {
                    return overlap_circuit(a, params, sk.after_gate, &pk, -2, nullptr, &e.term, part);
                });
            }
        }
        out(k) = acc;
    }
    return out;
}

inline void check_circuit_inputs(const Ansatz &a, const Params &params, const PauliSum &h,
                                 const char *what) {
    a.check_params(params);
    require_same_qubits(a.qubit_count(), h.qubit_count(), what);
    if (!h.is_hermitian()) {
        throw DomainError(std::string(what) + ": Hamiltonian is not Hermitian");
    }
}

} // namespace detail

/// M and V assembled exclusively from Hadamard tests: one circuit per
/// (generator term, generator term) pair for M and per (generator term,
/// Hamiltonian term) pair for V.
inline MVSystem estimate_mv_circuit(const Ansatz &a, const Params &params, const PauliSum &h,
                                    CircuitDump *dump = nullptr) {
    detail::check_circuit_inputs(a, params, h, "estimate_mv_circuit");
    const auto specs = detail::derivative_specs(a);
    const auto n = static_cast<Eigen::Index>(specs.size());
    detail::OverlapEvaluator eval{a.reference(), dump, {}};

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = k; i < n; ++i) {
            const auto &sk = specs[static_cast<std::size_t>(k)];
            const auto &si = specs[static_cast<std::size_t>(i)];
            const Complex pref = std::conj(sk.prefactor) * si.prefactor;
            double acc = 0.0;
            for (const auto &[wk, pk] : sk.terms) {
                for (const auto &[wi, pi] : si.terms) {
                    const std::string label = "M[" + std::to_string(k) + "," + std::to_string(i) +
                                              "] " + pk.letter_string() + "/" + pi.letter_string();
                    acc += detail::real_of_product(eval, pref * (wk * wi), label, [&](OverlapPart part) {
                        return detail::overlap_circuit(a, params, sk.after_gate, &pk, si.after_gate,
                                                       &pi, nullptr, part);
                    });
                }
            }
            m(k, i) = m(i, k) = acc;
        }
    }
    // V_k = Im z = Re(-i z)
    Eigen::VectorXd v =
        detail::hamiltonian_overlaps(a, params, h, Complex(0.0, -1.0), specs, eval, "V");
    if (dump) {
        dump->write(eval.log);
    }
    return MVSystem(std::move(m), std::move(v));
}

/// Re<d_k phi|H|phi> from Hadamard tests (half the energy gradient).
inline Eigen::VectorXd estimate_half_gradient_circuit(const Ansatz &a, const Params &params,
                                                      const PauliSum &h, CircuitDump *dump = nullptr) {
    detail::check_circuit_inputs(a, params, h, "estimate_half_gradient_circuit");
    const auto specs = detail::derivative_specs(a);
    detail::OverlapEvaluator eval{a.reference(), dump, {}};
    Eigen::VectorXd c = detail::hamiltonian_overlaps(a, params, h, 1.0, specs, eval, "C");
    if (dump) {
        dump->write(eval.log);
    }
    return c;
}

} // namespace vqpt
