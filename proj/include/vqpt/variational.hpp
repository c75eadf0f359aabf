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
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqpt/ansatz.hpp"
#include "vqpt/circuit.hpp"
#include "vqpt/error.hpp"
#include "vqpt/hamiltonian.hpp"
#include "vqpt/mv_system.hpp"
#include "vqpt/ode.hpp"
#include "vqpt/state_vector.hpp"

namespace vqpt {

inline constexpr double kSingularValueCutoff = 1e-10;
inline constexpr double kConditionAbort = 1e12;
inline constexpr std::size_t kConditionAbortSteps = 10;

struct StepSolution {
    Eigen::VectorXd rate;
    double condition = 1.0;
};

/// (M + eps I)^{-1} V for eps > 0; the pseudo-inverse solution (singular
/// values below 1e-10 dropped) for eps = 0.
inline StepSolution solve_step(const MVSystem &sys, double regularization) {
    if (regularization < 0.0) {
        throw DomainError("solve_step: regularization must be non-negative");
    }
    const Eigen::Index n = sys.size();
    if (n == 0) {
        return {Eigen::VectorXd(), 1.0};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.m);
    const Eigen::VectorXd &w = eig.eigenvalues();
    const Eigen::MatrixXd &q = eig.eigenvectors();
    const double smax = w.cwiseAbs().maxCoeff();
    const double smin = w.cwiseAbs().minCoeff();
    const double condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

    const Eigen::VectorXd projected = q.transpose() * sys.v;
    Eigen::VectorXd scaled(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (regularization > 0.0) {
            scaled(k) = projected(k) / (w(k) + regularization);
        } else {
            scaled(k) = std::abs(w(k)) < kSingularValueCutoff ? 0.0 : projected(k) / w(k);
        }
    }
    return {q * scaled, condition};
}

enum class Integrator { euler, rk4 };
enum class Backend { direct, circuit };

inline std::string to_string(Integrator i) { return i == Integrator::euler ? "euler" : "rk4"; }
inline std::string to_string(Backend b) { return b == Backend::direct ? "direct" : "circuit"; }

inline Integrator integrator_from_string(const std::string &s) {
    if (s == "euler") {
        return Integrator::euler;
    }
    if (s == "rk4") {
        return Integrator::rk4;
    }
    throw ParseError("unknown integrator '" + s + "'");
}

inline Backend backend_from_string(const std::string &s) {
    if (s == "direct") {
        return Backend::direct;
    }
    if (s == "circuit") {
        return Backend::circuit;
    }
    throw ParseError("unknown backend '" + s + "'");
}

struct EvolutionConfig {
    double dt = 1e-3;
    double t_final = 0.0;
    Integrator integrator = Integrator::rk4;
    double regularization = 1e-8;
    Backend backend = Backend::direct;

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            throw DomainError("evolution: dt must be positive and finite");
        }
        if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
            throw DomainError("evolution: t_final must be non-negative and finite");
        }
        if (t_final > 0.0 && dt > t_final) {
            throw DomainError("evolution: dt exceeds t_final");
        }
        if (!(regularization >= 0.0) || !std::isfinite(regularization)) {
            throw DomainError("evolution: regularization must be non-negative");
        }
    }

    bool operator==(const EvolutionConfig &) const = default;
};

/// What evolve_real_time records besides parameters and energy.
struct RecordOptions {
    bool states = false;
    bool populations = false;
    bool fidelity = false;
    /// step bound for the exact reference propagation behind `fidelity`
    double exact_dt = 1e-4;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Params> params;
    std::vector<StateVector> states;
    std::vector<std::pair<std::string, std::vector<double>>> observables;
    double max_condition = 1.0;

    std::size_t size() const { return times.size(); }

    std::vector<double> &observable(const std::string &name) {
        for (auto &[key, series] : observables) {
            if (key == name) {
                return series;
            }
        }
        observables.emplace_back(name, std::vector<double>{});
        return observables.back().second;
    }

    const std::vector<double> &at(const std::string &name) const {
        for (const auto &[key, series] : observables) {
            if (key == name) {
                return series;
            }
        }
        throw std::out_of_range("no observable '" + name + "'");
    }

    bool has(const std::string &name) const {
        for (const auto &kv : observables) {
            if (kv.first == name) {
                return true;
            }
        }
        return false;
    }
};

/// Picks the direct or the circuit route for M and V.
class MVAssembler {
  public:
    explicit MVAssembler(Backend backend = Backend::direct, CircuitDump *dump = nullptr)
        : backend_(backend), dump_(dump) {}

    MVSystem operator()(const Ansatz &a, const Params &p, const PauliSum &h) const {
        if (backend_ == Backend::circuit) {
            return estimate_mv_circuit(a, p, h, dump_);
        }
        return assemble_mv(a, p, h);
    }

    Backend backend() const { return backend_; }

  private:
    Backend backend_;
    CircuitDump *dump_;
};

/// Real-time McLachlan evolution of the ansatz parameters under H(t).
inline Trajectory evolve_real_time(const Ansatz &a, const Params &params0,
                                   const TimeDependentHamiltonian &h, const EvolutionConfig &cfg,
                                   const RecordOptions &rec = {}, CircuitDump *dump = nullptr) {
    cfg.validate();
    a.check_params(params0);
    detail::require_same_qubits(a.qubit_count(), h.qubit_count(), "evolve_real_time");
    const MVAssembler assemble(cfg.backend, dump);
    const auto grid = TimeGrid::cover(cfg.t_final, cfg.dt);

    Trajectory traj;
    std::optional<ExactPropagator> exact;
    Amplitudes exact_state;
    if (rec.fidelity) {
        exact.emplace(h);
        exact_state = a.prepare_amplitudes(params0);
    }

    const auto record = [&](double t, const Params &p) {
        const StateVector phi = a.prepare(p);
        traj.times.push_back(t);
        traj.params.push_back(p);
        traj.observable("energy").push_back(expectation(h.at(t), phi));
        if (rec.populations) {
            for (std::size_t b = 0; b < phi.dimension(); ++b) {
                traj.observable("pop_" + basis_label(a.qubit_count(), b)).push_back(phi.population(b));
            }
        }
        if (rec.fidelity) {
            traj.observable("fidelity").push_back(std::norm(inner(exact_state, phi.amplitudes())));
        }
        if (rec.states) {
            traj.states.push_back(phi);
        }
    };

    std::size_t ill_conditioned = 0;
    double step_condition = 1.0;
    bool first_stage = false;
    const auto rate = [&](double t, const Params &p) -> Params {
        auto sol = solve_step(assemble(a, p, h.at(t)), cfg.regularization);
        if (first_stage) {
            step_condition = sol.condition;
            first_stage = false;
        }
        return sol.rate;
    };

    Params lambda = params0;
    record(0.0, lambda);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.time(k);
        first_stage = true;
        if (cfg.integrator == Integrator::euler) {
            lambda = lambda + grid.step * rate(t, lambda);
        } else {
            lambda = rk4_step(rate, t, lambda, grid.step);
        }
        traj.max_condition = std::max(traj.max_condition, step_condition);
        if (cfg.regularization == 0.0 && step_condition > kConditionAbort) {
            if (++ill_conditioned >= kConditionAbortSteps) {
                throw ConvergenceError("evolve_real_time: M condition number above 1e12 for " +
                                       std::to_string(kConditionAbortSteps) +
                                       " consecutive steps at t = " + std::to_string(t) +
                                       "; set a positive regularization");
            }
        } else {
            ill_conditioned = 0;
        }
        if (!lambda.allFinite()) {
            throw ConvergenceError("evolve_real_time: parameters diverged at t = " + std::to_string(t));
        }
        if (exact) {
            exact_state = exact->advance(exact_state, t, grid.time(k + 1), std::min(rec.exact_dt, grid.step));
        }
        record(grid.time(k + 1), lambda);
    }
    return traj;
}

inline Trajectory evolve_real_time(const Ansatz &a, const Params &params0, const PauliSum &h,
                                   const EvolutionConfig &cfg, const RecordOptions &rec = {},
                                   CircuitDump *dump = nullptr) {
    return evolve_real_time(a, params0, TimeDependentHamiltonian(h), cfg, rec, dump);
}

struct GroundStateOptions {
    std::size_t max_steps = 100000;
    /// converged once |E_{k+1} - E_k| / dt drops below this
    double energy_rate_tolerance = 1e-9;
};

struct GroundStateResult {
    double energy = 0.0;
    Params params;
    std::size_t iterations = 0;
    Trajectory trajectory;
};

/// Imaginary-time McLachlan descent, M lambda_dot = -Re<d_k phi|H|phi>,
/// stepped until the energy changes by less than the tolerance per unit
/// imaginary time.
inline GroundStateResult ground_state_search(const Ansatz &a, const Params &params0,
                                             const PauliSum &h, const EvolutionConfig &cfg,
                                             const GroundStateOptions &opts = {},
                                             CircuitDump *dump = nullptr) {
    if (!(cfg.dt > 0.0)) {
        throw DomainError("ground_state_search: dt must be positive");
    }
    if (!h.is_hermitian()) {
        throw DomainError("ground_state_search: Hamiltonian is not Hermitian");
    }
    a.check_params(params0);
    detail::require_same_qubits(a.qubit_count(), h.qubit_count(), "ground_state_search");

    const auto descent = [&](double, const Params &p) -> Params {
        Eigen::MatrixXd m;
        Eigen::VectorXd force;
        if (cfg.backend == Backend::circuit) {
            m = estimate_mv_circuit(a, p, PauliSum(h.qubit_count()), dump).m;
            force = -estimate_half_gradient_circuit(a, p, h, dump);
        } else {
            m = assemble_mv(a, p, PauliSum(h.qubit_count())).m;
            force = -energy_half_gradient(a, p, h);
        }
        return solve_step(MVSystem(std::move(m), std::move(force)), cfg.regularization).rate;
    };

    const auto energy_of = [&](const Params &p) { return expectation(h, a.prepare(p)); };

    GroundStateResult out;
    Params lambda = params0;
    double energy = energy_of(lambda);
    out.trajectory.times.push_back(0.0);
    out.trajectory.params.push_back(lambda);
    out.trajectory.observable("energy").push_back(energy);
    for (std::size_t k = 0; k < opts.max_steps; ++k) {
        const double tau = static_cast<double>(k) * cfg.dt;
        Params next = cfg.integrator == Integrator::euler
                          ? Params(lambda + cfg.dt * descent(tau, lambda))
                          : rk4_step(descent, tau, lambda, cfg.dt);
        const double next_energy = energy_of(next);
        lambda = std::move(next);
        const double change = next_energy - energy;
        energy = next_energy;
        out.trajectory.times.push_back(static_cast<double>(k + 1) * cfg.dt);
        out.trajectory.params.push_back(lambda);
        out.trajectory.observable("energy").push_back(energy);
        if (std::abs(change) / cfg.dt < opts.energy_rate_tolerance) {
            out.energy = energy;
            out.params = lambda;
            out.iterations = k + 1;
            return out;
        }
    }
    throw ConvergenceError("ground_state_search: no convergence after " +
                           std::to_string(opts.max_steps) + " steps; final gradient norm " +
                           std::to_string(2.0 * energy_half_gradient(a, lambda, h).norm()));
}

} // namespace vqpt
