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

// Experiment configuration: a sectioned key = value text format.
//
//   [experiment]   kind, output_dir, tolerance
//   [hamiltonian]  qubits, term = <re> <im> <letters> (repeatable), file = <path>
//   [drive]        term = <waveform> <amplitude> <frequency> <phase> <letters>,
//                  rotating = <delta> <omega>
//   [ansatz]       preset, reference, global_phase,
//                  gate = <sign> <coeff> <letters> [+ <coeff> <letters> ...],
//                  initial = <values...>
//   [evolution]    dt, t_final, integrator, regularization, backend,
//                  max_steps, energy_rate_tolerance, record_populations,
//                  record_fidelity, exact_dt
//   [sweep]        parameter, start, stop, points, scale
//   [rabi]         delta, e1, e2, oracle_dt
//   [h2]           coefficients = <path>
//   [perturbation] term = <re> <im> <letters> (repeatable), level
//
// Relative file paths are resolved against the directory of the config file.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vqpt/ansatz.hpp"
#include "vqpt/error.hpp"
#include "vqpt/hamiltonian.hpp"
#include "vqpt/variational.hpp"

namespace vqpt::experiments {

enum class ExperimentKind { evolve, ground_state, pt_compare, rabi_sweep, h2_curve };

inline std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::evolve:
        return "evolve";
    case ExperimentKind::ground_state:
        return "ground_state";
    case ExperimentKind::pt_compare:
        return "pt_compare";
    case ExperimentKind::rabi_sweep:
        return "rabi_sweep";
    case ExperimentKind::h2_curve:
        return "h2_curve";
    }
    return "?";
}

inline ExperimentKind kind_from_string(std::string s) {
    for (auto &c : s) {
        if (c == '-') {
            c = '_';
        }
    }
    for (auto k : {ExperimentKind::evolve, ExperimentKind::ground_state, ExperimentKind::pt_compare,
                   ExperimentKind::rabi_sweep, ExperimentKind::h2_curve}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw ParseError("unknown experiment kind '" + s + "'");
}

/// Default comparison tolerance: 1e-3 for dynamics, 1e-6 for energies.
inline double default_tolerance(ExperimentKind k) {
    return (k == ExperimentKind::evolve || k == ExperimentKind::rabi_sweep) ? 1e-3 : 1e-6;
}

struct SweepSpec {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 2;
    bool logarithmic = false;

    std::vector<double> values() const {
        std::vector<double> out(points);
        for (std::size_t i = 0; i < points; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(points - 1);
            out[i] = logarithmic ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                 : start + f * (stop - start);
        }
        // pin the endpoints exactly
        out.front() = start;
        out.back() = stop;
        return out;
    }

    bool operator==(const SweepSpec &) const = default;
};

struct RabiSpec {
    double delta = 0.05;
    double e1 = 0.0;
    double e2 = 1.0;
    /// step of the coefficient-ODE reference
    double oracle_dt = 1e-4;

    bool operator==(const RabiSpec &) const = default;
};

struct AnsatzSpec {
    Ansatz ansatz;
    std::vector<double> initial;

    Params initial_params() const {
        if (initial.empty()) {
            return Params::Zero(static_cast<Eigen::Index>(ansatz.parameter_count()));
        }
        return Eigen::Map<const Eigen::VectorXd>(initial.data(), static_cast<Eigen::Index>(initial.size()));
    }

    bool operator==(const AnsatzSpec &) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::evolve;
    std::string output_dir = ".";
    std::optional<double> tolerance;
    std::optional<PauliSum> hamiltonian;
    std::optional<DriveSpec> drive;
    std::optional<AnsatzSpec> ansatz;
    EvolutionConfig evolution;
    GroundStateOptions ground;
    RecordOptions record;
    std::optional<SweepSpec> sweep;
    RabiSpec rabi;
    std::string coefficients_path;
    std::optional<PauliSum> perturbation;
    std::size_t level = 0;

    double resolved_tolerance() const { return tolerance.value_or(default_tolerance(kind)); }
    bool operator==(const ExperimentConfig &) const;
};

namespace detail {

inline bool same_ground(const GroundStateOptions &a, const GroundStateOptions &b) {
    return a.max_steps == b.max_steps && a.energy_rate_tolerance == b.energy_rate_tolerance;
}

inline bool same_record(const RecordOptions &a, const RecordOptions &b) {
    return a.populations == b.populations && a.fidelity == b.fidelity && a.exact_dt == b.exact_dt;
}

} // namespace detail

inline bool ExperimentConfig::operator==(const ExperimentConfig &o) const {
    return kind == o.kind && output_dir == o.output_dir && tolerance == o.tolerance &&
           hamiltonian == o.hamiltonian && drive == o.drive && ansatz == o.ansatz &&
           evolution == o.evolution && detail::same_ground(ground, o.ground) &&
           detail::same_record(record, o.record) && sweep == o.sweep && rabi == o.rabi &&
           coefficients_path == o.coefficients_path && perturbation == o.perturbation &&
           level == o.level;
}

namespace detail {

struct Entry {
    std::string key;
    std::string value;
    std::size_t line;
};

using Sections = std::map<std::string, std::vector<Entry>>;

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline Sections split_sections(const std::string &text, const std::string &origin) {
    Sections out;
    std::string current;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(where + "unterminated section header");
            }
            current = trim(line.substr(1, line.size() - 2));
            if (out.count(current)) {
                throw ParseError(where + "section [" + current + "] appears twice");
            }
            out[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(where + "expected `key = value`");
        }
        if (current.empty()) {
            throw ParseError(where + "key outside any section");
        }
        out[current].push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
    }
    return out;
}

/// Reads one section, rejecting keys it does not know.
class SectionReader {
  public:
    SectionReader(const std::vector<Entry> &entries, std::string section, std::string origin,
                  std::vector<std::string> known)
        : entries_(entries), section_(std::move(section)), origin_(std::move(origin)) {
        for (const auto &e : entries_) {
            bool ok = false;
            for (const auto &k : known) {
                ok = ok || k == e.key;
            }
            if (!ok) {
                throw ParseError(where(e) + "unknown key '" + e.key + "' in [" + section_ + "]");
            }
        }
    }

    std::string where(const Entry &e) const { return origin_ + ":" + std::to_string(e.line) + ": "; }

    const Entry *find(const std::string &key) const {
        const Entry *hit = nullptr;
        for (const auto &e : entries_) {
            if (e.key == key) {
                if (hit) {
                    throw ParseError(where(e) + "key '" + key + "' repeated in [" + section_ + "]");
                }
                hit = &e;
            }
        }
        return hit;
    }

    std::vector<const Entry *> all(const std::string &key) const {
        std::vector<const Entry *> out;
        for (const auto &e : entries_) {
            if (e.key == key) {
                out.push_back(&e);
            }
        }
        return out;
    }

    double number(const Entry &e) const {
        std::istringstream in(e.value);
        double x = 0;
        std::string rest;
        if (!(in >> x) || (in >> rest) || !std::isfinite(x)) {
            throw ParseError(where(e) + "'" + e.key + "' needs a finite number, got '" + e.value + "'");
        }
        return x;
    }

    void read(const std::string &key, double &out) const {
        if (const auto *e = find(key)) {
            out = number(*e);
        }
    }

    void read(const std::string &key, std::size_t &out) const {
        if (const auto *e = find(key)) {
            const double x = number(*e);
            if (x < 0 || x != std::floor(x)) {
                throw ParseError(where(*e) + "'" + key + "' needs a non-negative integer");
            }
            out = static_cast<std::size_t>(x);
        }
    }

    void read(const std::string &key, bool &out) const {
        if (const auto *e = find(key)) {
            if (e->value == "true" || e->value == "on" || e->value == "1") {
                out = true;
            } else if (e->value == "false" || e->value == "off" || e->value == "0") {
                out = false;
            } else {
                throw ParseError(where(*e) + "'" + key + "' needs true or false");
            }
        }
    }

    void read(const std::string &key, std::string &out) const {
        if (const auto *e = find(key)) {
            out = e->value;
        }
    }

    template <class F>
    auto guard(const Entry &e, F &&f) const -> decltype(f()) {
        try {
            return f();
        } catch (const ParseError &err) {
            throw ParseError(where(e) + err.what());
        } catch (const std::invalid_argument &err) {
            throw ParseError(where(e) + err.what());
        }
    }

  private:
    const std::vector<Entry> &entries_;
    std::string section_;
    std::string origin_;
};

inline std::vector<std::string> words(const std::string &s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

inline double to_number(const std::string &w) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(w, &used);
    } catch (const std::exception &) {
        throw ParseError("bad number '" + w + "'");
    }
    if (used != w.size() || !std::isfinite(x)) {
        throw ParseError("bad number '" + w + "'");
    }
    return x;
}

/// `term = <re> <im> <letters>` lines, or a term file, into a PauliSum.
inline PauliSum read_terms(const SectionReader &r, std::size_t qubits,
                           const std::filesystem::path &base, bool allow_file) {
    std::string text;
    for (const auto *e : r.all("term")) {
        text += e->value + "\n";
    }
    if (allow_file) {
        if (const auto *f = r.find("file")) {
            const auto path = base / f->value;
            std::ifstream in(path);
            if (!in) {
                throw ParseError(r.where(*f) + "cannot open Hamiltonian file " + path.string());
            }
            text += std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        }
    }
    return PauliSum::parse(text, qubits);
}

/// `<sign> <coeff> <letters> [+ <coeff> <letters> ...]`
inline AnsatzGate parse_gate(const std::string &value) {
    const auto w = words(value);
    if (w.size() < 3) {
        throw ParseError("gate needs `<sign> <coeff> <letters> [+ <coeff> <letters> ...]`");
    }
    const auto sign = sign_from_string(w[0]);
    std::vector<PauliSum::Entry> entries;
    std::size_t i = 1;
    while (true) {
        if (i + 1 >= w.size()) {
            throw ParseError("gate term is missing its letters");
        }
        entries.push_back({to_number(w[i]), PauliTerm::parse(w[i + 1])});
        i += 2;
        if (i == w.size()) {
            break;
        }
        if (w[i] != "+") {
            throw ParseError("gate terms are joined by ' + ', got '" + w[i] + "'");
        }
        ++i;
    }
    const auto n = entries.front().term.qubit_count();
    return AnsatzGate(PauliSum(n, std::move(entries)), sign);
}

inline DriveTerm parse_drive_term(const std::string &value) {
    const auto w = words(value);
    if (w.size() != 5) {
        throw ParseError("drive term needs `<waveform> <amplitude> <frequency> <phase> <letters>`");
    }
    return {waveform_from_string(w[0]), to_number(w[1]), to_number(w[2]), to_number(w[3]),
            PauliTerm::parse(w[4])};
}

/// Label of a computational basis state; config references are always basis states.
inline std::string reference_label(const StateVector &s) {
    for (std::size_t b = 0; b < s.dimension(); ++b) {
        if (std::abs(s.population(b) - 1.0) < 1e-12) {
            return basis_label(s.qubit_count(), b);
        }
    }
    throw DomainError("ansatz reference is not a computational basis state");
}

inline Ansatz ansatz_preset(const std::string &name, bool global_phase) {
    if (name == "two_level") {
        return Ansatz::two_level(global_phase);
    }
    if (name == "hydrogen") {
        return Ansatz::hydrogen().with_global_phase(global_phase);
    }
    if (name == "x_rotation") {
        return Ansatz::x_rotation().with_global_phase(global_phase);
    }
    throw ParseError("unknown ansatz preset '" + name + "' (two_level, hydrogen, x_rotation)");
}

} // namespace detail

/// Parses config text. `base` resolves relative file references.
inline ExperimentConfig parse_config(const std::string &text, const std::filesystem::path &base = ".",
                                     const std::string &origin = "<config>") {
    using detail::SectionReader;
    const auto sections = detail::split_sections(text, origin);
    static const std::vector<std::string> known_sections{
        "experiment", "hamiltonian", "drive", "ansatz", "evolution", "sweep", "rabi", "h2", "perturbation"};
    for (const auto &[name, entries] : sections) {
        bool ok = false;
        for (const auto &k : known_sections) {
            ok = ok || k == name;
        }
        if (!ok) {
            throw ParseError(origin + ": unknown section [" + name + "]");
        }
    }
    const auto section = [&](const std::string &name) -> const std::vector<detail::Entry> * {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    };

    ExperimentConfig cfg;
    const auto *exp = section("experiment");
    if (!exp) {
        throw ParseError(origin + ": missing [experiment] section");
    }
    {
        SectionReader r(*exp, "experiment", origin, {"kind", "output_dir", "tolerance"});
        const auto *kind = r.find("kind");
        if (!kind) {
            throw ParseError(origin + ": [experiment] needs kind");
        }
        cfg.kind = r.guard(*kind, [&] { return kind_from_string(kind->value); });
        r.read("output_dir", cfg.output_dir);
        if (const auto *t = r.find("tolerance")) {
            cfg.tolerance = r.number(*t);
            if (*cfg.tolerance < 0) {
                throw ParseError(r.where(*t) + "tolerance must be non-negative");
            }
        }
    }

    std::size_t qubits = 0;
    if (const auto *s = section("hamiltonian")) {
        SectionReader r(*s, "hamiltonian", origin, {"qubits", "term", "file"});
        r.read("qubits", qubits);
        const auto &anchor = s->empty() ? detail::Entry{"", "", 0} : s->front();
        cfg.hamiltonian = r.guard(anchor, [&] { return detail::read_terms(r, qubits, base, true); });
        qubits = cfg.hamiltonian->qubit_count();
        if (!cfg.hamiltonian->is_hermitian()) {
            throw ParseError(origin + ": [hamiltonian] is not Hermitian");
        }
    }

    if (const auto *s = section("drive")) {
        SectionReader r(*s, "drive", origin, {"term", "rotating"});
        std::vector<DriveTerm> terms;
        for (const auto *e : r.all("term")) {
            terms.push_back(r.guard(*e, [&] { return detail::parse_drive_term(e->value); }));
        }
        for (const auto *e : r.all("rotating")) {
            const auto w = detail::words(e->value);
            if (w.size() != 2) {
                throw ParseError(r.where(*e) + "rotating needs `<delta> <omega>`");
            }
            const auto pair = r.guard(*e, [&] {
                return DriveSpec::rotating_coupling(detail::to_number(w[0]), detail::to_number(w[1]));
            });
            terms.insert(terms.end(), pair.terms().begin(), pair.terms().end());
        }
        cfg.drive = r.guard(s->front(), [&] { return DriveSpec(std::move(terms)); });
    }

    if (const auto *s = section("ansatz")) {
        SectionReader r(*s, "ansatz", origin, {"preset", "reference", "global_phase", "gate", "initial"});
        bool global_phase = false;
        r.read("global_phase", global_phase);
        std::string preset;
        r.read("preset", preset);
        const auto gates = r.all("gate");
        if (!preset.empty() && !gates.empty()) {
            throw ParseError(origin + ": [ansatz] takes either preset or gate lines, not both");
        }
        std::optional<Ansatz> built;
        if (!preset.empty()) {
            built = r.guard(*r.find("preset"), [&] { return detail::ansatz_preset(preset, global_phase); });
            if (r.find("reference")) {
                throw ParseError(origin + ": [ansatz] presets fix their own reference state");
            }
        } else {
            const auto *ref = r.find("reference");
            if (!ref || gates.empty()) {
                throw ParseError(origin + ": [ansatz] needs a preset, or a reference and gate lines");
            }
            std::vector<AnsatzGate> list;
            for (const auto *g : gates) {
                list.push_back(r.guard(*g, [&] { return detail::parse_gate(g->value); }));
            }
            built = r.guard(*ref, [&] {
                return Ansatz(std::move(list), basis_state(ref->value.size(), ref->value), global_phase);
            });
        }
        AnsatzSpec spec{*built, {}};
        if (const auto *init = r.find("initial")) {
            for (const auto &w : detail::words(init->value)) {
                spec.initial.push_back(r.guard(*init, [&] { return detail::to_number(w); }));
            }
            if (spec.initial.size() != spec.ansatz.parameter_count()) {
                throw ParseError(r.where(*init) + "initial has " + std::to_string(spec.initial.size()) +
                                 " values, the ansatz has " +
                                 std::to_string(spec.ansatz.parameter_count()) + " parameters");
            }
        }
        cfg.ansatz = std::move(spec);
    }

    bool explicit_t_final = false;
    if (const auto *s = section("evolution")) {
        SectionReader r(*s, "evolution", origin,
                        {"dt", "t_final", "integrator", "regularization", "backend", "max_steps",
                         "energy_rate_tolerance", "record_populations", "record_fidelity", "exact_dt"});
        r.read("dt", cfg.evolution.dt);
        r.read("t_final", cfg.evolution.t_final);
        explicit_t_final = r.find("t_final") != nullptr;
        r.read("regularization", cfg.evolution.regularization);
        if (const auto *e = r.find("integrator")) {
            cfg.evolution.integrator = r.guard(*e, [&] { return integrator_from_string(e->value); });
        }
        if (const auto *e = r.find("backend")) {
            cfg.evolution.backend = r.guard(*e, [&] { return backend_from_string(e->value); });
        }
        r.read("max_steps", cfg.ground.max_steps);
        r.read("energy_rate_tolerance", cfg.ground.energy_rate_tolerance);
        r.read("record_populations", cfg.record.populations);
        r.read("record_fidelity", cfg.record.fidelity);
        r.read("exact_dt", cfg.record.exact_dt);
        const auto &anchor = s->empty() ? detail::Entry{"", "", 0} : s->front();
        r.guard(anchor, [&] {
            cfg.evolution.validate();
            return 0;
        });
        if (!(cfg.record.exact_dt > 0)) {
            throw ParseError(origin + ": exact_dt must be positive");
        }
    }

    if (cfg.kind == ExperimentKind::rabi_sweep && !explicit_t_final) {
        cfg.evolution.t_final = 1.0;
    }

    if (const auto *s = section("sweep")) {
        SectionReader r(*s, "sweep", origin, {"parameter", "start", "stop", "points", "scale"});
        SweepSpec sw;
        r.read("parameter", sw.parameter);
        r.read("start", sw.start);
        r.read("stop", sw.stop);
        r.read("points", sw.points);
        std::string scale = "linear";
        r.read("scale", scale);
        if (scale != "linear" && scale != "log") {
            throw ParseError(origin + ": [sweep] scale must be linear or log");
        }
        sw.logarithmic = scale == "log";
        if (sw.points < 2) {
            throw ParseError(origin + ": [sweep] needs at least 2 points");
        }
        if (sw.logarithmic && (sw.start <= 0 || sw.stop <= 0)) {
            throw ParseError(origin + ": [sweep] log scale needs positive endpoints");
        }
        cfg.sweep = sw;
    }

    if (const auto *s = section("rabi")) {
        SectionReader r(*s, "rabi", origin, {"delta", "e1", "e2", "oracle_dt"});
        r.read("delta", cfg.rabi.delta);
        r.read("e1", cfg.rabi.e1);
        r.read("e2", cfg.rabi.e2);
        r.read("oracle_dt", cfg.rabi.oracle_dt);
        if (!(cfg.rabi.oracle_dt > 0)) {
            throw ParseError(origin + ": [rabi] oracle_dt must be positive");
        }
    }

    if (const auto *s = section("h2")) {
        SectionReader r(*s, "h2", origin, {"coefficients"});
        if (const auto *e = r.find("coefficients")) {
            const auto path = std::filesystem::absolute(base / e->value).lexically_normal();
            if (!std::filesystem::exists(path)) {
                throw ParseError(r.where(*e) + "coefficients file " + path.string() + " does not exist");
            }
            cfg.coefficients_path = path.string();
        }
    }

    if (const auto *s = section("perturbation")) {
        SectionReader r(*s, "perturbation", origin, {"term", "level"});
        r.read("level", cfg.level);
        const auto &anchor = s->empty() ? detail::Entry{"", "", 0} : s->front();
        cfg.perturbation = r.guard(anchor, [&] { return detail::read_terms(r, qubits, base, false); });
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path &file) {
    std::ifstream in(file);
    if (!in) {
        throw ParseError("cannot open config file " + file.string());
    }
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text, file.parent_path().empty() ? std::filesystem::path(".") : file.parent_path(),
                        file.string());
}

/// Writes the resolved configuration back out in the same format.
inline std::string serialize(const ExperimentConfig &cfg) {
    using vqpt::detail::format_double;
    std::ostringstream out;
    out << "[experiment]\nkind = " << to_string(cfg.kind) << "\noutput_dir = " << cfg.output_dir << "\n";
    if (cfg.tolerance) {
        out << "tolerance = " << format_double(*cfg.tolerance) << "\n";
    }
    const auto write_terms = [&](const PauliSum &h) {
        out << "qubits = " << h.qubit_count() << "\n";
        for (const auto &e : h.entries()) {
            out << "term = " << format_double(e.coefficient.real()) << " "
                << format_double(e.coefficient.imag()) << " " << e.term.letter_string() << "\n";
        }
    };
    if (cfg.hamiltonian) {
        out << "\n[hamiltonian]\n";
        write_terms(*cfg.hamiltonian);
    }
    if (cfg.drive) {
        out << "\n[drive]\n";
        for (const auto &t : cfg.drive->terms()) {
            out << "term = " << to_string(t.waveform) << " " << format_double(t.amplitude) << " "
                << format_double(t.frequency) << " " << format_double(t.phase_offset) << " "
                << t.op.letter_string() << "\n";
        }
    }
    if (cfg.ansatz) {
        const auto &a = cfg.ansatz->ansatz;
        out << "\n[ansatz]\nreference = " << detail::reference_label(a.reference())
            << "\nglobal_phase = " << (a.has_global_phase() ? "true" : "false") << "\n";
        for (const auto &g : a.gates()) {
            out << "gate = " << to_string(g.sign);
            bool first = true;
            for (const auto &e : g.generator.entries()) {
                out << (first ? " " : " + ") << format_double(e.coefficient.real()) << " "
                    << e.term.letter_string();
                first = false;
            }
            out << "\n";
        }
        if (!cfg.ansatz->initial.empty()) {
            out << "initial =";
            for (double x : cfg.ansatz->initial) {
                out << " " << format_double(x);
            }
            out << "\n";
        }
    }
    const auto &ev = cfg.evolution;
    out << "\n[evolution]\ndt = " << format_double(ev.dt) << "\nt_final = " << format_double(ev.t_final)
        << "\nintegrator = " << to_string(ev.integrator)
        << "\nregularization = " << format_double(ev.regularization)
        << "\nbackend = " << to_string(ev.backend) << "\nmax_steps = " << cfg.ground.max_steps
        << "\nenergy_rate_tolerance = " << format_double(cfg.ground.energy_rate_tolerance)
        << "\nrecord_populations = " << (cfg.record.populations ? "true" : "false")
        << "\nrecord_fidelity = " << (cfg.record.fidelity ? "true" : "false")
        << "\nexact_dt = " << format_double(cfg.record.exact_dt) << "\n";
    if (cfg.sweep) {
        out << "\n[sweep]\nparameter = " << cfg.sweep->parameter << "\nstart = " << format_double(cfg.sweep->start)
            << "\nstop = " << format_double(cfg.sweep->stop) << "\npoints = " << cfg.sweep->points
            << "\nscale = " << (cfg.sweep->logarithmic ? "log" : "linear") << "\n";
    }
    out << "\n[rabi]\ndelta = " << format_double(cfg.rabi.delta) << "\ne1 = " << format_double(cfg.rabi.e1)
        << "\ne2 = " << format_double(cfg.rabi.e2) << "\noracle_dt = " << format_double(cfg.rabi.oracle_dt)
        << "\n";
    if (!cfg.coefficients_path.empty()) {
        out << "\n[h2]\ncoefficients = " << cfg.coefficients_path << "\n";
    }
    if (cfg.perturbation) {
        out << "\n[perturbation]\nlevel = " << cfg.level << "\n";
        for (const auto &e : cfg.perturbation->entries()) {
            out << "term = " << format_double(e.coefficient.real()) << " "
                << format_double(e.coefficient.imag()) << " " << e.term.letter_string() << "\n";
        }
    }
    return out.str();
}

} // namespace vqpt::experiments
