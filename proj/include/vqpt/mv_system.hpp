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
#include <string>

#include "vqpt/error.hpp"

namespace vqpt {

inline constexpr double kSymmetryTolerance = 1e-12;

/// Linear system M lambda_dot = V for the parameter velocities.
struct MVSystem {
    Eigen::MatrixXd m;
    Eigen::VectorXd v;

    MVSystem() = default;
    MVSystem(Eigen::MatrixXd m_, Eigen::VectorXd v_) : m(std::move(m_)), v(std::move(v_)) {
        if (m.rows() != m.cols() || m.rows() != v.size()) {
            throw DimensionError("MVSystem: M is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", V has " + std::to_string(v.size()) +
                                 " entries");
        }
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * (1.0 + m.cwiseAbs().maxCoeff())) {
            throw DomainError("MVSystem: M is not symmetric");
        }
    }

    Eigen::Index size() const { return v.size(); }
};

} // namespace vqpt
