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

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vaql/circuit.hpp"

namespace vaql {

enum class Assembler { qasm2, quil };

std::string_view to_string(Assembler assembler) noexcept;

/// Capabilities and calibration summary of one quantum machine.
struct BackendDescriptor {
    std::string id;
    std::string vendor;
    std::size_t num_qubits = 0;
    std::set<GateKind> native_gates;
    /// Directed (control, target) pairs.
    std::set<std::pair<std::size_t, std::size_t>> coupling_map;
    double error_1q = 0.0;
    double error_2q = 0.0;
    double readout_error = 0.0;
    double cost_per_shot = 0.0;
    Assembler assembler = Assembler::qasm2;

    bool is_native(GateKind kind) const { return native_gates.count(kind) > 0; }
    bool has_edge(std::size_t from, std::size_t to) const { return coupling_map.count({from, to}) > 0; }
    /// Coupled in either direction.
    bool adjacent(std::size_t a, std::size_t b) const { return has_edge(a, b) || has_edge(b, a); }
};

/// Throws BackendError if coupling pairs are out of range or self-loops, an
/// error rate lies outside [0, 1), or the cost is negative.
void validate_backend(const BackendDescriptor& backend);

} // namespace vaql
