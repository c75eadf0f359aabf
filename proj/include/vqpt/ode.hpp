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

#include <cmath>
#include <cstddef>

namespace vqpt {

/// Step count and uniform step size covering [0, t_final] with steps no
/// longer than dt_max.
struct TimeGrid {
    std::size_t steps = 0;
    double step = 0.0;

    static TimeGrid cover(double t_final, double dt_max) {
        if (t_final <= 0.0) {
            return {0, 0.0};
        }
        auto n = static_cast<std::size_t>(std::ceil(t_final / dt_max - 1e-9));
        if (n == 0) {
            n = 1;
        }
        return {n, t_final / static_cast<double>(n)};
    }

    double time(std::size_t k) const { return static_cast<double>(k) * step; }
};

/// Classical fourth-order Runge-Kutta step for y' = f(t, y). State must
/// support addition and scaling by double.
template <class State, class Rhs>
State rk4_step(const Rhs &f, double t, const State &y, double h) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = f(t + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = f(t + h, State(y + h * k3));
    return State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

} // namespace vqpt
