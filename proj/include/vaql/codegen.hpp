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

#include <string>

#include "vaql/backend.hpp"
#include "vaql/circuit.hpp"
#include "vaql/transpiler.hpp"

namespace vaql {

/// OpenQASM 2.0 text using qelib1 gate names. A `creg c[1];` is emitted for
/// circuits without classical bits since the format requires one.
std::string emit_qasm2(const Circuit& circuit);
std::string emit_qasm2(const TranspiledProgram& program);

/// Quil text with standard gate names. SDG and TDG have no Quil standard
/// gate and are written as RZ(-pi/2) and RZ(-pi/4) (equal up to phase).
std::string emit_quil(const Circuit& circuit);
std::string emit_quil(const TranspiledProgram& program);

/// Dispatches on the backend's assembler.
std::string emit_assembler(const TranspiledProgram& program, Assembler assembler);

} // namespace vaql
