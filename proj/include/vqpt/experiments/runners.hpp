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

// Experiment orchestration. Each runner writes its CSV into the output
// directory and returns a comparison report against the matching oracle.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "vqpt/experiments/config.hpp"
#include "vqpt/experiments/csv.hpp"
#include "vqpt/perturbation.hpp"

namespace vqpt::experiments {

/// Per-point rows plus the deviation each row is judged by.
struct ComparisonReport {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
    std::vector<double> deviations;
    double tolerance = 0.0;
    std::vector<std::string> notes;

    /// NaN when any deviation is NaN, so a NaN row can never pass.
    double max_deviation() const {
        double m = 0.0;
        for (double d : deviations) {
            if (std::isnan(d)) {
                return d;
            }
            m = std::max(m, d);
        }
        return m;
    }

    double rms_deviation() const {
        if (deviations.empty()) {
            return 0.0;
        }
        double s = 0.0;
        for (double d : deviations) {
            s += d * d;
        }
        return std::sqrt(s / static_cast<double>(deviations.size()));
    }

    bool passed() const { return max_deviation() <= tolerance; }

    std::string summary() const {
        std::string out = "points = " + std::to_string(deviations.size()) + "\n";
        out += "max_deviation = " + format_cell(max_deviation()) + "\n";
        out += "rms_deviation = " + format_cell(rms_deviation()) + "\n";
        out += "tolerance = " + format_cell(tolerance) + "\n";
        out += std::string("pass = ") + (passed() ? "true" : "false") + "\n";
        for (const auto &n : notes) {
            out += "note = " + n + "\n";
        }
        return out;
    }
};

struct RunOptions {
    /// write every Hadamard-test circuit listing below this directory
    std::optional<std::filesystem::path> dump_dir;
};

struct RunResult {
    std::vector<std::filesystem::path> files;
    std::optional<ComparisonReport> report;
};

/// Runs body(i) for i in [0, n) on a small thread pool and rethrows the
/// first failure. Results must be written to per-index slots.
template <class F>
void parallel_for(std::size_t n, F &&body) {
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    const auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

namespace detail {

inline std::optional<CircuitDump> point_dump(const RunOptions &opts, std::size_t i) {
    if (!opts.dump_dir) {
        return std::nullopt;
    }
    char name[32];
    std::snprintf(name, sizeof name, "point_%03zu", i);
    return std::optional<CircuitDump>(std::in_place, *opts.dump_dir / name);
}

inline CircuitDump *dump_ptr(std::optional<CircuitDump> &d) { return d ? &*d : nullptr; }

inline void finish(const ExperimentConfig &cfg, const std::string &csv_name, const ComparisonReport *report,
                   const std::string &csv_text, double seconds, RunResult &out) {
    const std::filesystem::path dir = cfg.output_dir;
    write_text(dir / csv_name, csv_text);
    out.files.push_back(dir / csv_name);
    std::string manifest = serialize(cfg);
    char wall[64];
    std::snprintf(wall, sizeof wall, "%.3f", seconds);
    manifest += "\n[run]\nbackend = " + to_string(cfg.evolution.backend) + "\nwall_time_seconds = " + wall +
                "\noutput = " + csv_name + "\n";
    if (report) {
        write_text(dir / "summary.txt", report->summary());
        out.files.push_back(dir / "summary.txt");
        manifest += std::string("pass = ") + (report->passed() ? "true" : "false") + "\n";
    }
    write_text(dir / "manifest.txt", manifest);
    out.files.push_back(dir / "manifest.txt");
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Rabi sweep

inline PauliSum two_level_h0(double e1, double e2) {
    return PauliSum::from_terms(1, {{0.5 * (e1 + e2), "I"}, {0.5 * (e1 - e2), "Z"}});
}

inline RunResult run_rabi_sweep(const ExperimentConfig &cfg, const RunOptions &opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.hamiltonian || cfg.drive) {
        throw DomainError("rabi_sweep builds its Hamiltonian from [rabi]; remove [hamiltonian] and [drive]");
    }
    const AnsatzSpec spec = cfg.ansatz.value_or(AnsatzSpec{Ansatz::two_level(true), {}});
    if (spec.ansatz.qubit_count() != 1) {
        throw DomainError("rabi_sweep needs a two-level (single-qubit) ansatz");
    }
    if (!(cfg.evolution.t_final > 0)) {
        throw DomainError("rabi_sweep needs t_final > 0");
    }
    const RabiSpec &rabi = cfg.rabi;
    const double omega21 = rabi.e2 - rabi.e1;
    SweepSpec sweep{"omega", omega21 - 10 * rabi.delta, omega21 + 10 * rabi.delta, 41, false};
    if (cfg.sweep) {
        if (cfg.sweep->parameter != "omega") {
            throw DomainError("rabi_sweep sweeps 'omega', not '" + cfg.sweep->parameter + "'");
        }
        sweep = *cfg.sweep;
    }
    const auto omegas = sweep.values();
    const PauliSum h0 = two_level_h0(rabi.e1, rabi.e2);
    const Params init = spec.initial_params();
    const Amplitudes c0 = spec.ansatz.prepare_amplitudes(init);
    const bool from_ground = std::abs(std::norm(c0(0)) - 1.0) < 1e-12;
    const double t = cfg.evolution.t_final;

    struct Point {
        double p1_var, p2_var, p1_exact, p2_exact, analytic_gap;
    };
    std::vector<Point> points(omegas.size());
    parallel_for(omegas.size(), [&](std::size_t i) {
        const auto drive = DriveSpec::rotating_coupling(rabi.delta, omegas[i]);
        auto dump = detail::point_dump(opts, i);
        const auto traj = evolve_real_time(spec.ansatz, init, TimeDependentHamiltonian(h0, drive), cfg.evolution,
                                           {}, detail::dump_ptr(dump));
        const auto phi = spec.ansatz.prepare(traj.params.back());
        const auto oracle = tdpt_integrate(std::vector<double>{rabi.e1, rabi.e2}, drive, c0, t, rabi.oracle_dt);
        const Amplitudes &c = oracle.coefficients.back();
        double gap = 0.0;
        if (from_ground) {
            gap = std::abs(std::norm(c(1)) - rabi_analytic(rabi.delta, omegas[i], omega21, t).p2);
        }
        points[i] = {phi.population(0), phi.population(1), std::norm(c(0)), std::norm(c(1)), gap};
    });

    ComparisonReport report;
    report.header = {"omega", "p1_var", "p2_var", "p1_exact", "p2_exact", "abs_dev"};
    report.tolerance = cfg.resolved_tolerance();
    double worst_gap = 0.0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const auto &p = points[i];
        const double dev = std::abs(p.p2_var - p.p2_exact);
        report.rows.push_back({format_cell(omegas[i]), format_cell(p.p1_var), format_cell(p.p2_var),
                               format_cell(p.p1_exact), format_cell(p.p2_exact), format_cell(dev)});
        report.deviations.push_back(dev);
        worst_gap = std::max(worst_gap, p.analytic_gap);
    }
    if (from_ground) {
        report.notes.push_back("coefficient ODE vs closed-form Rabi populations: max gap " + format_cell(worst_gap));
    }
    RunResult out;
    detail::finish(cfg, "rabi_sweep.csv", &report, to_csv(report.header, report.rows),
                   detail::seconds_since(start), out);
    out.report = std::move(report);
    return out;
}

// ---------------------------------------------------------------------------
// Hydrogen curve

struct H2Row {
    std::string label;
    std::array<double, 6> g{};
};

/// `label g0 g1 g2 g3 g4 g5` per line, `#` comments.
inline std::vector<H2Row> parse_coefficients(const std::string &text, const std::string &origin = "<coefficients>") {
    std::vector<H2Row> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto w = detail::words(line);
        if (w.empty()) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(line_no) + ": ";
        if (w.size() != 7) {
            throw ParseError(where + "expected `label g0 g1 g2 g3 g4 g5`");
        }
        if (w[0].find(',') != std::string::npos) {
            throw ParseError(where + "labels may not contain commas");
        }
        H2Row row{w[0], {}};
        for (std::size_t k = 0; k < 6; ++k) {
            try {
                row.g[k] = detail::to_number(w[k + 1]);
            } catch (const ParseError &e) {
                throw ParseError(where + e.what());
            }
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw ParseError(origin + ": no coefficient rows");
    }
    return rows;
}

inline std::vector<H2Row> load_coefficients(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open coefficients file " + path.string());
    }
    return parse_coefficients(std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()),
                              path.string());
}

/// Diagonal part g0 II + g1 ZI + g2 IZ + g3 ZZ.
inline PauliSum h2_diagonal(const std::array<double, 6> &g) {
    return PauliSum::from_terms(2, {{g[0], "II"}, {g[1], "ZI"}, {g[2], "IZ"}, {g[3], "ZZ"}});
}

/// Exchange part g4 YY + g5 XX.
inline PauliSum h2_exchange(const std::array<double, 6> &g) {
    return PauliSum::from_terms(2, {{g[4], "YY"}, {g[5], "XX"}});
}

inline PauliSum h2_hamiltonian(const std::array<double, 6> &g) { return h2_diagonal(g) + h2_exchange(g); }

/// True when the exact ground vector lives on |01> and |10> only, the
/// span the hydrogen ansatz reaches from |01>.
inline bool ground_in_exchange_sector(const SpectralData &exact) {
    const Amplitudes v = exact.states.col(0);
    return std::norm(v(0)) + std::norm(v(3)) < 1e-12;
}

inline RunResult run_h2_curve(const ExperimentConfig &cfg, const RunOptions &opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.coefficients_path.empty()) {
        throw DomainError("h2_curve needs [h2] coefficients = <file>");
    }
    const auto rows = load_coefficients(cfg.coefficients_path);
    const AnsatzSpec spec = cfg.ansatz.value_or(AnsatzSpec{Ansatz::hydrogen(), {0.0, 0.1}});
    if (spec.ansatz.qubit_count() != 2) {
        throw DomainError("h2_curve needs a two-qubit ansatz");
    }
    struct Point {
        double e_var, e_tipt2, e_exact;
        bool tipt_defined, reachable;
    };
    std::vector<Point> points(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const auto &g = rows[i].g;
        const PauliSum h = h2_hamiltonian(g);
        auto dump = detail::point_dump(opts, i);
        const auto exact = exact_diagonalize(h);
        const auto var = ground_state_search(spec.ansatz, spec.initial_params(), h, cfg.evolution, cfg.ground,
                                             detail::dump_ptr(dump));
        Point p{var.energy, std::numeric_limits<double>::quiet_NaN(), exact.energies(0), false,
                ground_in_exchange_sector(exact)};
        try {
            p.e_tipt2 = tipt_corrections(h2_diagonal(g), h2_exchange(g), 1.0, 0, 2).energy;
            p.tipt_defined = true;
        } catch (const DomainError &) {
            // degenerate diagonal ground level: nondegenerate TIPT does not apply
        }
        points[i] = p;
    });

    ComparisonReport report;
    report.header = {"label", "e_var", "e_tipt2", "e_exact", "dev_var", "dev_tipt2"};
    report.tolerance = cfg.resolved_tolerance();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &p = points[i];
        const double dev_var = std::abs(p.e_var - p.e_exact);
        const double dev_tipt = std::abs(p.e_tipt2 - p.e_exact);
        report.rows.push_back({rows[i].label, format_cell(p.e_var), format_cell(p.e_tipt2), format_cell(p.e_exact),
                               format_cell(dev_var), format_cell(dev_tipt)});
        report.deviations.push_back(dev_var);
        if (!p.tipt_defined) {
            report.notes.push_back(rows[i].label + ": diagonal ground level is degenerate, e_tipt2 undefined");
        }
        if (!p.reachable) {
            report.notes.push_back(rows[i].label + ": exact ground state lies outside the |01>/|10> span");
        }
    }
    RunResult out;
    detail::finish(cfg, "h2_curve.csv", &report, to_csv(report.header, report.rows), detail::seconds_since(start),
                   out);
    out.report = std::move(report);
    return out;
}

// ---------------------------------------------------------------------------
// Perturbation-theory comparison

inline RunResult run_pt_compare(const ExperimentConfig &cfg, const RunOptions & = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (!cfg.hamiltonian || !cfg.perturbation) {
        throw DomainError("pt_compare needs [hamiltonian] (H0) and [perturbation] (V)");
    }
    SweepSpec sweep{"lambda", 1e-3, 1e-1, 5, true};
    if (cfg.sweep) {
        if (cfg.sweep->parameter != "lambda") {
            throw DomainError("pt_compare sweeps 'lambda', not '" + cfg.sweep->parameter + "'");
        }
        sweep = *cfg.sweep;
    }
    const auto lambdas = sweep.values();
    const PauliSum &h0 = *cfg.hamiltonian;
    const PauliSum &v = *cfg.perturbation;
    ComparisonReport report;
    report.header = {"lambda", "e_tipt1", "e_tipt2", "e_exact", "dev_tipt1", "dev_tipt2"};
    report.tolerance = cfg.resolved_tolerance();
    for (double lambda : lambdas) {
        const double e1 = tipt_corrections(h0, v, lambda, cfg.level, 1).energy;
        const double e2 = tipt_corrections(h0, v, lambda, cfg.level, 2).energy;
        const double exact = exact_diagonalize(add_scaled(h0, lambda, v)).energies(static_cast<Eigen::Index>(cfg.level));
        report.rows.push_back({format_cell(lambda), format_cell(e1), format_cell(e2), format_cell(exact),
                               format_cell(std::abs(e1 - exact)), format_cell(std::abs(e2 - exact))});
        report.deviations.push_back(std::abs(e2 - exact));
    }
    RunResult out;
    detail::finish(cfg, "pt_compare.csv", &report, to_csv(report.header, report.rows), detail::seconds_since(start),
                   out);
    out.report = std::move(report);
    return out;
}

// ---------------------------------------------------------------------------
// Generic evolve / ground-state runs

inline std::string trajectory_csv(const Trajectory &traj) {
    std::vector<std::string> header{"t"};
    const auto n = traj.params.empty() ? 0 : traj.params.front().size();
    for (Eigen::Index k = 0; k < n; ++k) {
        header.push_back("param_" + std::to_string(k));
    }
    for (const auto &[name, series] : traj.observables) {
        header.push_back(name);
    }
    std::vector<CsvRow> rows;
    for (std::size_t r = 0; r < traj.size(); ++r) {
        CsvRow row{format_cell(traj.times[r])};
        for (Eigen::Index k = 0; k < n; ++k) {
            row.push_back(format_cell(traj.params[r](k)));
        }
        for (const auto &[name, series] : traj.observables) {
            row.push_back(format_cell(series[r]));
        }
        rows.push_back(std::move(row));
    }
    return to_csv(header, rows);
}

inline RunResult run_generic(const ExperimentConfig &cfg, const RunOptions &opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (!cfg.hamiltonian) {
        throw DomainError(to_string(cfg.kind) + " needs a [hamiltonian] section");
    }
    if (!cfg.ansatz) {
        throw DomainError(to_string(cfg.kind) + " needs an [ansatz] section");
    }
    std::optional<CircuitDump> dump;
    if (opts.dump_dir) {
        dump.emplace(*opts.dump_dir);
    }
    const Params init = cfg.ansatz->initial_params();
    RunResult out;
    if (cfg.kind == ExperimentKind::evolve) {
        const TimeDependentHamiltonian h(*cfg.hamiltonian, cfg.drive.value_or(DriveSpec{}));
        const auto traj = evolve_real_time(cfg.ansatz->ansatz, init, h, cfg.evolution, cfg.record, detail::dump_ptr(dump));
        std::optional<ComparisonReport> report;
        if (cfg.record.fidelity) {
            report.emplace();
            report->tolerance = cfg.resolved_tolerance();
            for (double f : traj.at("fidelity")) {
                report->deviations.push_back(1.0 - f);
            }
            report->notes.push_back("deviation is the infidelity against exact propagation");
        }
        detail::finish(cfg, "trajectory.csv", report ? &*report : nullptr, trajectory_csv(traj),
                       detail::seconds_since(start), out);
        out.report = std::move(report);
        return out;
    }
    if (cfg.kind != ExperimentKind::ground_state) {
        throw DomainError("run_generic handles evolve and ground_state only");
    }
    if (cfg.drive) {
        throw DomainError("ground_state takes a static Hamiltonian; remove [drive]");
    }
    const auto result =
        ground_state_search(cfg.ansatz->ansatz, init, *cfg.hamiltonian, cfg.evolution, cfg.ground, detail::dump_ptr(dump));
    ComparisonReport report;
    report.tolerance = cfg.resolved_tolerance();
    const double exact = exact_diagonalize(*cfg.hamiltonian).energies(0);
    report.deviations.push_back(std::abs(result.energy - exact));
    report.notes.push_back("variational energy " + format_cell(result.energy) + " after " +
                           std::to_string(result.iterations) + " steps, exact " + format_cell(exact));
    detail::finish(cfg, "trajectory.csv", &report, trajectory_csv(result.trajectory), detail::seconds_since(start), out);
    out.report = std::move(report);
    return out;
}

inline RunResult run_experiment(const ExperimentConfig &cfg, const RunOptions &opts = {}) {
    switch (cfg.kind) {
    case ExperimentKind::rabi_sweep:
        return run_rabi_sweep(cfg, opts);
    case ExperimentKind::h2_curve:
        return run_h2_curve(cfg, opts);
    case ExperimentKind::pt_compare:
        return run_pt_compare(cfg, opts);
    case ExperimentKind::evolve:
    case ExperimentKind::ground_state:
        return run_generic(cfg, opts);
    }
    throw DomainError("unknown experiment kind");
}

} // namespace vqpt::experiments
