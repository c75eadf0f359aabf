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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "vqpt/perturbation.hpp"
#include "vqpt/variational.hpp"

using namespace vqpt;
using Catch::Matchers::WithinAbs;

namespace {

Params vec(std::initializer_list<double> xs) {
    Params p(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) {
        p(i++) = x;
    }
    return p;
}

const PauliSum kX = PauliSum(PauliTerm::parse("X"));
const PauliSum kZ = PauliSum(PauliTerm::parse("Z"));

double endpoint_error_cos_drive(Integrator integrator, double dt) {
    const TimeDependentHamiltonian h(PauliSum(1), DriveSpec({{Waveform::cosine, 1.0, 1.0, 0.0, PauliTerm::parse("X")}}));
    EvolutionConfig cfg;
    cfg.dt = dt;
    cfg.t_final = 1.0;
    cfg.integrator = integrator;
    cfg.regularization = 0.0;
    const auto traj = evolve_real_time(Ansatz::x_rotation(), vec({0.0}), h, cfg);
    return std::abs(traj.params.back()(0) - std::sin(1.0));
}

} // namespace

TEST_CASE("solve_step examples", "[variational]") {
    const auto reg = solve_step(MVSystem(Eigen::Matrix2d{{2, 0}, {0, 0}}, Eigen::Vector2d(1, 0)), 1e-6);
    CHECK_THAT(reg.rate(0), WithinAbs(1.0 / (2.0 + 1e-6), 1e-15));
    CHECK_THAT(reg.rate(1), WithinAbs(0.0, 1e-15));
    CHECK(std::isinf(reg.condition));

    const auto pinv = solve_step(MVSystem(Eigen::Matrix2d{{2, 0}, {0, 0}}, Eigen::Vector2d(1, 3)), 0.0);
    CHECK_THAT(pinv.rate(0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(pinv.rate(1), WithinAbs(0.0, 1e-15));

    CHECK_THROWS_AS(solve_step(MVSystem(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 1)), -1.0), DomainError);
}

TEST_CASE("solve_step matches an LU solve on well-conditioned systems", "[variational][property]") {
    std::mt19937_64 rng(79);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::MatrixXd b(4, 4);
        for (auto &x : b.reshaped()) {
            x = g(rng);
        }
        const Eigen::MatrixXd m = b * b.transpose() + Eigen::MatrixXd::Identity(4, 4);
        Eigen::VectorXd v(4);
        for (auto &x : v) {
            x = g(rng);
        }
        const auto sol = solve_step(MVSystem(m, v), 0.0);
        const Eigen::VectorXd lu = m.partialPivLu().solve(v);
        CHECK((sol.rate - lu).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(sol.condition >= 1.0);
    }
}

TEST_CASE("EvolutionConfig validation", "[variational]") {
    EvolutionConfig cfg;
    cfg.t_final = 1.0;
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.dt = 2.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.dt = 1e-3;
    cfg.regularization = -1.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    CHECK(integrator_from_string("euler") == Integrator::euler);
    CHECK(backend_from_string("circuit") == Backend::circuit);
    CHECK_THROWS_AS(backend_from_string("gpu"), ParseError);
}

TEST_CASE("sign calibration: exp(-i lambda X)|0> under H = X", "[variational]") {
    EvolutionConfig cfg;
    cfg.t_final = 1.0;
    RecordOptions rec;
    rec.fidelity = true;
    const auto traj = evolve_real_time(Ansatz::x_rotation(), vec({0.0}), kX, cfg, rec);
    CHECK(traj.size() == 1001);
    CHECK_THAT(traj.params.back()(0), WithinAbs(1.0, 1e-6));
    for (double f : traj.at("fidelity")) {
        CHECK(f >= 1.0 - 1e-8);
    }
    const auto exact = exact_propagate(kX, basis_state(1, "0"), 1.0, 1e-4);
    CHECK(fidelity(exact, Ansatz::x_rotation().prepare(traj.params.back())) >= 1.0 - 1e-8);

    for (auto backend : {Backend::direct, Backend::circuit}) {
        cfg.backend = backend;
        cfg.t_final = 0.0;
        const auto single = evolve_real_time(Ansatz::x_rotation(), vec({0.3}), kX, cfg);
        CHECK(single.size() == 1);
        CHECK(single.params[0](0) == 0.3);
    }
}

TEST_CASE("energy is conserved on static Hamiltonians", "[variational][property]") {
    EvolutionConfig cfg;
    cfg.t_final = 10.0;
    const auto calib = evolve_real_time(Ansatz::x_rotation(), vec({0.0}), kX, cfg);
    for (double e : calib.at("energy")) {
        CHECK(std::abs(e - calib.at("energy").front()) < 1e-4);
    }

    // a nontrivial case: the two-level ansatz under a tilted field
    const auto h = PauliSum::from_terms(1, {{0.7, "Z"}, {0.4, "X"}});
    cfg.t_final = 5.0;
    const auto traj = evolve_real_time(Ansatz::two_level(true), vec({0.0, 0.3, 0.2}), h, cfg);
    for (double e : traj.at("energy")) {
        CHECK(std::abs(e - traj.at("energy").front()) < 1e-4);
    }
}

TEST_CASE("integrator convergence order on a driven rotation", "[variational][property]") {
    const double e1 = endpoint_error_cos_drive(Integrator::euler, 1e-2);
    const double e2 = endpoint_error_cos_drive(Integrator::euler, 5e-3);
    INFO("euler errors " << e1 << " " << e2);
    CHECK(e1 / e2 >= 1.9);
    CHECK(endpoint_error_cos_drive(Integrator::rk4, 1e-3) < 1e-8);
}

TEST_CASE("two-level ansatz tracks exact driven dynamics", "[variational]") {
    const double delta = 0.05;
    const PauliSum h0 = PauliSum::from_terms(1, {{0.5, "I"}, {-0.5, "Z"}});
    for (double omega : {1.0, 1.0 + 10 * delta, 1.0 - 4 * delta}) {
        const TimeDependentHamiltonian h(h0, DriveSpec::rotating_coupling(delta, omega));
        EvolutionConfig cfg;
        cfg.t_final = 1.0;
        RecordOptions rec;
        rec.populations = true;
        rec.fidelity = true;
        const auto traj = evolve_real_time(Ansatz::two_level(true), vec({0.0, 0.0, 0.0}), h, cfg, rec);
        const double p2 = traj.at("pop_1").back();
        const auto oracle = rabi_analytic(delta, omega, 1.0, 1.0);
        INFO("omega " << omega << " p2 " << p2 << " oracle " << oracle.p2);
        CHECK_THAT(p2, WithinAbs(oracle.p2, 1e-6));
        CHECK(traj.at("fidelity").back() >= 1.0 - 1e-8);
    }
}

TEST_CASE("direct and circuit backends give the same trajectory", "[variational][property]") {
    const TimeDependentHamiltonian h(PauliSum::from_terms(1, {{0.5, "I"}, {-0.5, "Z"}}),
                                     DriveSpec::rotating_coupling(0.05, 1.1));
    EvolutionConfig cfg;
    cfg.t_final = 0.2;
    cfg.dt = 1e-2;
    const auto direct = evolve_real_time(Ansatz::two_level(true), vec({0.0, 0.1, 0.2}), h, cfg);
    cfg.backend = Backend::circuit;
    const auto circ = evolve_real_time(Ansatz::two_level(true), vec({0.0, 0.1, 0.2}), h, cfg);
    REQUIRE(direct.size() == circ.size());
    for (std::size_t k = 0; k < direct.size(); ++k) {
        CHECK((direct.params[k] - circ.params[k]).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("ill-conditioned unregularized evolution aborts", "[variational]") {
    // At the origin the Z rotation only adds a phase to |0>, so M stays singular under H = Z.
    EvolutionConfig cfg;
    cfg.t_final = 1.0;
    cfg.regularization = 0.0;
    CHECK_THROWS_AS(evolve_real_time(Ansatz::two_level(true), vec({0.0, 0.0, 0.0}), kZ, cfg), ConvergenceError);
    cfg.regularization = 1e-8;
    const auto traj = evolve_real_time(Ansatz::two_level(true), vec({0.0, 0.0, 0.0}), kZ, cfg);
    CHECK(std::isinf(traj.max_condition));
}

TEST_CASE("ground_state_search examples", "[variational]") {
    EvolutionConfig cfg;
    cfg.dt = 1e-2;
    const auto r = ground_state_search(Ansatz::x_rotation(), vec({0.1}), kZ, cfg);
    CHECK_THAT(r.energy, WithinAbs(-1.0, 1e-6));
    const auto &e = r.trajectory.at("energy");
    for (std::size_t k = 1; k < e.size(); ++k) {
        CHECK(e[k] <= e[k - 1] + 1e-12);
    }

    const auto id = ground_state_search(Ansatz::x_rotation(), vec({0.1}), PauliSum(PauliTerm::identity(1)), cfg);
    CHECK_THAT(id.energy, WithinAbs(1.0, 1e-12));
    CHECK(id.iterations == 1);

    cfg.backend = Backend::circuit;
    const auto rc = ground_state_search(Ansatz::x_rotation(), vec({0.1}), kZ, cfg);
    CHECK_THAT(rc.energy, WithinAbs(-1.0, 1e-6));

    GroundStateOptions few;
    few.max_steps = 3;
    CHECK_THROWS_AS(ground_state_search(Ansatz::x_rotation(), vec({0.1}), kZ, cfg, few), ConvergenceError);
    CHECK_THROWS_AS(ground_state_search(Ansatz::x_rotation(), vec({0.1}), PauliSum(2), cfg), DimensionError);
}

TEST_CASE("hydrogen ground state matches exact diagonalization", "[variational]") {
    const auto h = PauliSum::from_terms(
        2, {{-0.4804, "II"}, {0.3435, "ZI"}, {-0.4347, "IZ"}, {0.5716, "ZZ"}, {0.0910, "YY"}, {0.0910, "XX"}});
    EvolutionConfig cfg;
    cfg.dt = 1e-2;
    const auto r = ground_state_search(Ansatz::hydrogen(), vec({0.1, 0.1}), h, cfg);
    const double exact = exact_diagonalize(h).energies(0);
    CHECK(r.energy >= exact - 1e-9);
    CHECK_THAT(r.energy, WithinAbs(exact, 1e-6));
}
