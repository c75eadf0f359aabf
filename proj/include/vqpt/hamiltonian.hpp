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

// Time-dependent Hamiltonians H(t) = H0 + sum_k f_k(t) P_k with real
// waveforms f_k and Hermitian Pauli strings P_k.

#include <cmath>
#include <string>
#include <vector>

#include "vqpt/error.hpp"
#include "vqpt/pauli.hpp"

namespace vqpt {

enum class Waveform { constant, cosine, sine };

inline std::string to_string(Waveform w) {
    switch (w) {
    case Waveform::constant:
        return "constant";
    case Waveform::cosine:
        return "cosine";
    case Waveform::sine:
        return "sine";
    }
    return "?";
}

inline Waveform waveform_from_string(const std::string &s) {
    if (s == "constant") {
        return Waveform::constant;
    }
    if (s == "cosine") {
        return Waveform::cosine;
    }
    if (s == "sine") {
        return Waveform::sine;
    }
    throw ParseError("unknown waveform '" + s + "'");
}

struct DriveTerm {
    Waveform waveform = Waveform::constant;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase_offset = 0.0;
    PauliTerm op = PauliTerm::identity(1);

    double coefficient(double t) const {
        switch (waveform) {
        case Waveform::constant:
            return amplitude;
        case Waveform::cosine:
            return amplitude * std::cos(frequency * t + phase_offset);
        case Waveform::sine:
            return amplitude * std::sin(frequency * t + phase_offset);
        }
        return 0.0;
    }

    bool operator==(const DriveTerm &) const = default;
};

class DriveSpec {
  public:
    DriveSpec() = default;
    explicit DriveSpec(std::vector<DriveTerm> terms) : terms_(std::move(terms)) {
        for (const auto &t : terms_) {
            // real waveform times a Pauli string is Hermitian only for a real phase
            if (!t.op.phase().is_real()) {
                throw DomainError("drive operator " + t.op.to_string() + " is not Hermitian");
            }
            detail::require_same_qubits(terms_.front().op.qubit_count(), t.op.qubit_count(),
                                        "DriveSpec");
        }
    }

    /// cos(w t) X - sin(w t) Y scaled by delta: the rotating-wave coupling
    /// delta e^{i w t}|0><1| + h.c. on a single qubit.
    static DriveSpec rotating_coupling(double delta, double omega) {
        return DriveSpec({
            {Waveform::cosine, delta, omega, 0.0, PauliTerm::parse("X")},
            {Waveform::sine, -delta, omega, 0.0, PauliTerm::parse("Y")},
        });
    }

    std::span<const DriveTerm> terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    PauliSum at(double t, std::size_t qubit_count) const {
        std::vector<PauliSum::Entry> entries;
        entries.reserve(terms_.size());
        for (const auto &term : terms_) {
            detail::require_same_qubits(qubit_count, term.op.qubit_count(), "DriveSpec::at");
            entries.push_back({term.coefficient(t), term.op});
        }
        return PauliSum(qubit_count, std::move(entries));
    }

    bool operator==(const DriveSpec &) const = default;

  private:
    std::vector<DriveTerm> terms_;
};

class TimeDependentHamiltonian {
  public:
    explicit TimeDependentHamiltonian(PauliSum static_part, DriveSpec drive = {})
        : static_part_(std::move(static_part)), drive_(std::move(drive)) {
        if (!static_part_.is_hermitian()) {
            throw DomainError("static Hamiltonian part is not Hermitian");
        }
        for (const auto &t : drive_.terms()) {
            detail::require_same_qubits(static_part_.qubit_count(), t.op.qubit_count(),
                                        "TimeDependentHamiltonian");
        }
    }

    std::size_t qubit_count() const { return static_part_.qubit_count(); }
    const PauliSum &static_part() const { return static_part_; }
    const DriveSpec &drive() const { return drive_; }
    bool is_time_independent() const { return drive_.empty(); }

    PauliSum at(double t) const {
        if (drive_.empty()) {
            return static_part_;
        }
        return static_part_ + drive_.at(t, qubit_count());
    }

  private:
    PauliSum static_part_;
    DriveSpec drive_;
};

} // namespace vqpt
