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

// Multi-qubit Pauli strings and weighted sums of them.
//
// Qubit 0 is the leftmost tensor factor: in a letter string "XZ" the X acts
// on qubit 0, and qubit q maps to bit (n - 1 - q) of a basis-state index.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vqpt/error.hpp"

namespace vqpt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Amplitudes = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultDenseCap = 10;
inline constexpr double kPruneThreshold = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw ParseError(std::string("invalid Pauli letter '") + c + "'");
    }
}

/// Element of {+1, +i, -1, -i}, stored as the power of i.
class Phase {
  public:
    constexpr Phase() = default;
    static constexpr Phase from_power(int k) { return Phase(((k % 4) + 4) % 4); }
    static constexpr Phase one() { return Phase(0); }
    static constexpr Phase i() { return Phase(1); }
    static constexpr Phase minus_one() { return Phase(2); }
    static constexpr Phase minus_i() { return Phase(3); }

    constexpr int power() const { return power_; }
    constexpr bool is_real() const { return power_ % 2 == 0; }

    Complex value() const {
        constexpr Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[power_];
    }

    constexpr Phase operator*(Phase o) const { return from_power(power_ + o.power_); }
    constexpr bool operator==(const Phase &) const = default;

  private:
    constexpr explicit Phase(int k) : power_(static_cast<std::uint8_t>(k)) {}
    std::uint8_t power_ = 0;
};

class PauliTerm {
  public:
    PauliTerm(std::vector<Pauli> letters, Phase phase = Phase::one())
        : letters_(std::move(letters)), phase_(phase) {
        if (letters_.empty()) {
            throw DimensionError("PauliTerm needs at least one qubit");
        }
    }

    static PauliTerm parse(std::string_view letters, Phase phase = Phase::one()) {
        std::vector<Pauli> out;
        out.reserve(letters.size());
        for (char c : letters) {
            out.push_back(pauli_from_char(c));
        }
        return PauliTerm(std::move(out), phase);
    }

    static PauliTerm identity(std::size_t qubit_count) {
        return PauliTerm(std::vector<Pauli>(qubit_count, Pauli::I));
    }

    std::size_t qubit_count() const { return letters_.size(); }
    std::span<const Pauli> letters() const { return letters_; }
    Pauli operator[](std::size_t q) const { return letters_[q]; }
    Phase phase() const { return phase_; }

    PauliTerm without_phase() const { return PauliTerm(letters_); }
    PauliTerm with_phase(Phase p) const { return PauliTerm(letters_, p); }

    bool is_identity() const {
        return std::all_of(letters_.begin(), letters_.end(),
                           [](Pauli p) { return p == Pauli::I; });
    }

    /// Qubits carrying a non-identity letter.
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            if (letters_[q] != Pauli::I) {
                out.push_back(q);
            }
        }
        return out;
    }

    std::string letter_string() const {
        std::string s;
        s.reserve(letters_.size());
        for (Pauli p : letters_) {
            s.push_back(to_char(p));
        }
        return s;
    }

    std::string to_string() const {
        static constexpr const char *prefix[4] = {"+", "+i", "-", "-i"};
        return prefix[phase_.power()] + letter_string();
    }

    /// Action on a computational basis index: P|b> = factor |b'>.
    std::pair<std::size_t, Complex> act_on_basis(std::size_t basis) const {
        const std::size_t n = letters_.size();
        int power = phase_.power();
        std::size_t out = basis;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t mask = std::size_t{1} << (n - 1 - q);
            const bool bit = (basis & mask) != 0;
            switch (letters_[q]) {
            case Pauli::I:
                break;
            case Pauli::X:
                out ^= mask;
                break;
            case Pauli::Y:
                // Y|0> = i|1>, Y|1> = -i|0>
                out ^= mask;
                power += bit ? 3 : 1;
                break;
            case Pauli::Z:
                power += bit ? 2 : 0;
                break;
            }
        }
        return {out, Phase::from_power(power).value()};
    }

    bool operator==(const PauliTerm &) const = default;

  private:
    std::vector<Pauli> letters_;
    Phase phase_;
};

namespace detail {

// Single-qubit product a*b = i^power * letter.
inline std::pair<int, Pauli> multiply_letters(Pauli a, Pauli b) {
    if (a == Pauli::I) {
        return {0, b};
    }
    if (b == Pauli::I) {
        return {0, a};
    }
    if (a == b) {
        return {0, Pauli::I};
    }
    const int ia = static_cast<int>(a);
    const int ib = static_cast<int>(b);
    const auto c = static_cast<Pauli>(6 - ia - ib);
    // cyclic XY = iZ, YZ = iX, ZX = iY; anticyclic picks up -i
    const bool cyclic = ((ib - ia + 3) % 3) == 1;
    return {cyclic ? 1 : 3, c};
}

inline void require_same_qubits(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": qubit count mismatch (" +
                             std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

inline void require_dense_cap(std::size_t n, std::size_t cap) {
    if (n > cap) {
        throw DomainError("qubit count " + std::to_string(n) + " exceeds dense cap " +
                          std::to_string(cap));
    }
}

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

inline PauliTerm multiply(const PauliTerm &a, const PauliTerm &b) {
    detail::require_same_qubits(a.qubit_count(), b.qubit_count(), "multiply");
    std::vector<Pauli> letters(a.qubit_count());
    int power = a.phase().power() + b.phase().power();
    for (std::size_t q = 0; q < letters.size(); ++q) {
        auto [p, l] = detail::multiply_letters(a[q], b[q]);
        power += p;
        letters[q] = l;
    }
    return PauliTerm(std::move(letters), Phase::from_power(power));
}

inline PauliTerm operator*(const PauliTerm &a, const PauliTerm &b) { return multiply(a, b); }

/// Weighted sum of phase-free Pauli strings in canonical form: phases folded
/// into coefficients, duplicate strings merged in order of first appearance,
/// and coefficients with magnitude below kPruneThreshold dropped.
class PauliSum {
  public:
    struct Entry {
        Complex coefficient;
        PauliTerm term;
        bool operator==(const Entry &) const = default;
    };

    explicit PauliSum(std::size_t qubit_count) : qubit_count_(qubit_count) {
        if (qubit_count == 0) {
            throw DimensionError("PauliSum needs at least one qubit");
        }
    }

    PauliSum(std::size_t qubit_count, std::vector<Entry> entries) : PauliSum(qubit_count) {
        for (auto &e : entries) {
            accumulate(e.coefficient, e.term);
        }
        prune();
    }

    /// Single term with coefficient 1, phase folded in.
    explicit PauliSum(const PauliTerm &term) : PauliSum(term.qubit_count(), {{1.0, term}}) {}

    static PauliSum from_terms(std::size_t qubit_count,
                               std::initializer_list<std::pair<Complex, std::string_view>> terms) {
        std::vector<Entry> entries;
        for (const auto &[c, letters] : terms) {
            entries.push_back({c, PauliTerm::parse(letters)});
        }
        return PauliSum(qubit_count, std::move(entries));
    }

    std::size_t qubit_count() const { return qubit_count_; }
    std::span<const Entry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool is_hermitian(double tol = kHermitianTolerance) const {
        return std::all_of(entries_.begin(), entries_.end(),
                           [tol](const Entry &e) { return std::abs(e.coefficient.imag()) <= tol; });
    }

    /// Coefficient of a phase-free letter string (0 if absent).
    Complex coefficient_of(const PauliTerm &term) const {
        const auto bare = term.without_phase();
        for (const auto &e : entries_) {
            if (e.term == bare) {
                return e.coefficient * term.phase().value();
            }
        }
        return 0.0;
    }

    PauliSum canonical() const { return PauliSum(qubit_count_, entries_); }

    PauliSum scaled(Complex s) const {
        std::vector<Entry> out(entries_);
        for (auto &e : out) {
            e.coefficient *= s;
        }
        return PauliSum(qubit_count_, std::move(out));
    }

    /// One line per term: `<coeff_real> <coeff_imag> <letters>`.
    std::string to_string() const {
        std::string out;
        for (const auto &e : entries_) {
            out += detail::format_double(e.coefficient.real()) + " " +
                   detail::format_double(e.coefficient.imag()) + " " + e.term.letter_string() +
                   "\n";
        }
        return out;
    }

    /// Parse the line format of to_string(). Blank lines and `#` comments are
    /// skipped. The qubit count is taken from the letters unless given.
    static PauliSum parse(std::string_view text, std::size_t qubit_count = 0) {
        std::vector<Entry> entries;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream ls(line);
            std::string first;
            if (!(ls >> first)) {
                continue;
            }
            double re = 0;
            double im = 0;
            std::string letters;
            std::string extra;
            try {
                re = std::stod(first);
            } catch (const std::exception &) {
                throw ParseError("line " + std::to_string(line_no) + ": bad real part '" + first +
                                 "'");
            }
            if (!(ls >> im >> letters) || (ls >> extra)) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected `<re> <im> <letters>`");
            }
            auto term = PauliTerm::parse(letters);
            if (qubit_count == 0) {
                qubit_count = term.qubit_count();
            } else if (term.qubit_count() != qubit_count) {
                throw ParseError("line " + std::to_string(line_no) + ": term '" + letters +
                                 "' has " + std::to_string(term.qubit_count()) +
                                 " qubits, expected " + std::to_string(qubit_count));
            }
            entries.push_back({Complex(re, im), std::move(term)});
        }
        if (qubit_count == 0) {
            throw ParseError("empty Pauli sum needs an explicit qubit count");
        }
        return PauliSum(qubit_count, std::move(entries));
    }

    bool operator==(const PauliSum &) const = default;

  private:
    void accumulate(Complex c, const PauliTerm &term) {
        detail::require_same_qubits(qubit_count_, term.qubit_count(), "PauliSum");
        const Complex folded = c * term.phase().value();
        const auto bare = term.without_phase();
        for (auto &e : entries_) {
            if (e.term == bare) {
                e.coefficient += folded;
                return;
            }
        }
        entries_.push_back({folded, bare});
    }

    void prune() {
        std::erase_if(entries_, [](const Entry &e) { return std::abs(e.coefficient) < kPruneThreshold; });
    }

    std::size_t qubit_count_;
    std::vector<Entry> entries_;
};

inline PauliSum add_scaled(const PauliSum &a, Complex s, const PauliSum &b) {
    detail::require_same_qubits(a.qubit_count(), b.qubit_count(), "add_scaled");
    std::vector<PauliSum::Entry> entries(a.entries().begin(), a.entries().end());
    for (const auto &e : b.entries()) {
        entries.push_back({s * e.coefficient, e.term});
    }
    return PauliSum(a.qubit_count(), std::move(entries));
}

inline PauliSum operator+(const PauliSum &a, const PauliSum &b) { return add_scaled(a, 1.0, b); }

/// Order-insensitive comparison of coefficients.
inline bool approx_equal(const PauliSum &a, const PauliSum &b, double tol) {
    if (a.qubit_count() != b.qubit_count()) {
        return false;
    }
    const auto diff = add_scaled(a, -1.0, b);
    return std::all_of(diff.entries().begin(), diff.entries().end(),
                       [tol](const PauliSum::Entry &e) { return std::abs(e.coefficient) <= tol; });
}

inline Matrix to_dense(const PauliTerm &term, std::size_t cap = kDefaultDenseCap) {
    detail::require_dense_cap(term.qubit_count(), cap);
    const std::size_t dim = std::size_t{1} << term.qubit_count();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        auto [row, factor] = term.act_on_basis(col);
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = factor;
    }
    return m;
}

inline Matrix to_dense(const PauliSum &sum, std::size_t cap = kDefaultDenseCap) {
    detail::require_dense_cap(sum.qubit_count(), cap);
    const std::size_t dim = std::size_t{1} << sum.qubit_count();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto &e : sum.entries()) {
        for (std::size_t col = 0; col < dim; ++col) {
            auto [row, factor] = e.term.act_on_basis(col);
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += e.coefficient * factor;
        }
    }
    return m;
}

} // namespace vqpt
