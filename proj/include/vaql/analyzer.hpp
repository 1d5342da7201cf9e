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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaql/backend.hpp"
#include "vaql/circuit.hpp"

namespace vaql {

/// Resource summary of a circuit.
struct CircuitProfile {
    std::size_t num_qubits = 0;
    std::size_t num_cbits = 0;
    std::size_t depth = 0;
    /// mnemonic (or "measure") -> occurrences
    std::map<std::string, std::size_t> gate_histogram;
    std::size_t t_count = 0;
    std::size_t two_qubit_count = 0;
    std::size_t measure_count = 0;

    friend bool operator==(const CircuitProfile&, const CircuitProfile&) = default;
};

CircuitProfile profile(const Circuit& circuit);

/// Fidelity-product success estimate
///   (1 - e1)^(one-qubit gates) * (1 - e2)^(two-qubit gates) * (1 - er)^(measures).
/// Throws BackendError if the circuit is not native to `backend`.
double estimate_success(const Circuit& transpiled, const BackendDescriptor& backend);

enum class SelectionObjective { success, cost };

std::string_view to_string(SelectionObjective objective) noexcept;

struct SelectionEntry {
    std::string backend_id;
    double success = 0.0;
    double total_cost = 0.0;
    bool feasible = false;
    std::optional<std::string> reason;
};

/// One entry per registry backend: feasible ones first in ranked order,
/// then infeasible ones in registry order.
struct SelectionResult {
    std::vector<SelectionEntry> entries;

    std::size_t feasible_count() const;
    const SelectionEntry* best() const;
};

struct SelectionOptions {
    SelectionObjective objective = SelectionObjective::success;
    std::uint64_t shots = 1024;
    /// Vendor allow-list; empty means every vendor is trusted.
    std::vector<std::string> trusted_vendors;
};

/// Feasibility only: a backend is feasible iff it has enough qubits and
/// transpilation succeeds. Entries keep registry order.
SelectionResult filter_backends(const Circuit& circuit, const std::vector<BackendDescriptor>& registry,
                                const SelectionOptions& options = {});

/// filter_backends, then ranks feasible entries by the objective.
SelectionResult select_backend(const Circuit& circuit, const std::vector<BackendDescriptor>& registry,
                               const SelectionOptions& options = {});

} // namespace vaql
