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

#include <stdexcept>
#include <string>

namespace vqpt {

/// Operand shapes disagree (qubit counts, vector lengths, parameter counts).
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An input lies outside the domain an operation accepts: non-Hermitian
/// generators, qubit counts above the dense cap, degenerate levels.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace vqpt
