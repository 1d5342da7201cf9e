// Copyright 2026 The vaql Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace vaql {

/// Base class of every error raised by the toolchain.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A circuit invariant was violated during construction.
class CircuitError : public Error {
public:
    using Error::Error;
};

/// Simulation preconditions not met (measures present, qubit cap, ...).
class SimulationError : public Error {
public:
    using Error::Error;
};

/// Malformed backend descriptor or registry, or a contract violation
/// against a backend (non-native gate handed to the estimator).
class BackendError : public Error {
public:
    using Error::Error;
};

/// A rewrite template whose two sides are not equivalent.
class TemplateError : public Error {
public:
    using Error::Error;
};

class CodegenError : public Error {
public:
    using Error::Error;
};

/// Errors from the variational runtime (bad bindings, observables, graphs).
class HybridError : public Error {
public:
    using Error::Error;
};

} // namespace vaql
