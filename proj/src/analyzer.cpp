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

#include "vaql/analyzer.hpp"

#include <algorithm>
#include <cmath>

#include "vaql/transpiler.hpp"

namespace vaql {

std::string_view to_string(Assembler assembler) noexcept {
    return assembler == Assembler::qasm2 ? "qasm2" : "quil";
}

void validate_backend(const BackendDescriptor& backend) {
    auto fail = [&](const std::string& msg) { throw BackendError("backend '" + backend.id + "': " + msg); };
    if (backend.id.empty()) throw BackendError("backend id must not be empty");
    for (const auto& [a, b] : backend.coupling_map) {
        if (a >= backend.num_qubits || b >= backend.num_qubits) {
            fail("coupling pair [" + std::to_string(a) + "," + std::to_string(b) + "] out of range");
        }
        if (a == b) fail("coupling pair joins qubit " + std::to_string(a) + " to itself");
    }
    for (auto [name, eps] : {std::pair{"error_1q", backend.error_1q}, std::pair{"error_2q", backend.error_2q},
                             std::pair{"readout_error", backend.readout_error}}) {
        if (!(eps >= 0.0 && eps < 1.0)) fail(std::string(name) + " must lie in [0, 1)");
    }
    if (!(backend.cost_per_shot >= 0.0) || !std::isfinite(backend.cost_per_shot)) {
        fail("cost_per_shot must be a finite non-negative number");
    }
}

CircuitProfile profile(const Circuit& circuit) {
    CircuitProfile p;
    p.num_qubits = circuit.num_qubits();
    p.num_cbits = circuit.num_cbits();
    p.depth = circuit_depth(circuit);
    for (const auto& instr : circuit.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) {
            ++p.gate_histogram[std::string(mnemonic(g->kind))];
            if (g->kind == GateKind::T || g->kind == GateKind::TDG) ++p.t_count;
            if (arity(g->kind) == 2) ++p.two_qubit_count;
        } else {
            ++p.gate_histogram["measure"];
            ++p.measure_count;
        }
    }
    return p;
}

double estimate_success(const Circuit& transpiled, const BackendDescriptor& backend) {
    if (auto problem = check_native(transpiled, backend)) throw BackendError(*problem);
    std::size_t one = 0, two = 0, measures = 0;
    for (const auto& instr : transpiled.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) {
            ++(arity(g->kind) == 2 ? two : one);
        } else {
            ++measures;
        }
    }
    return std::pow(1.0 - backend.error_1q, static_cast<double>(one)) *
           std::pow(1.0 - backend.error_2q, static_cast<double>(two)) *
           std::pow(1.0 - backend.readout_error, static_cast<double>(measures));
}

std::string_view to_string(SelectionObjective objective) noexcept {
    return objective == SelectionObjective::success ? "success" : "cost";
}

std::size_t SelectionResult::feasible_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const SelectionEntry& e) { return e.feasible; }));
}

const SelectionEntry* SelectionResult::best() const {
    return (!entries.empty() && entries.front().feasible) ? &entries.front() : nullptr;
}

SelectionResult filter_backends(const Circuit& circuit, const std::vector<BackendDescriptor>& registry,
                                const SelectionOptions& options) {
    SelectionResult result;
    for (const auto& backend : registry) {
        SelectionEntry entry;
        entry.backend_id = backend.id;
        entry.total_cost = static_cast<double>(options.shots) * backend.cost_per_shot;
        const auto& trusted = options.trusted_vendors;
        if (!trusted.empty() && std::find(trusted.begin(), trusted.end(), backend.vendor) == trusted.end()) {
            entry.reason = "untrusted vendor";
        } else if (circuit.num_qubits() > backend.num_qubits) {
            entry.reason = "insufficient qubits";
        } else {
            try {
                const auto program = transpile(circuit, backend);
                entry.success = estimate_success(program.circuit, backend);
                entry.feasible = true;
            } catch (const Error& e) {
                entry.reason = std::string("transpilation failed: ") + e.what();
            }
        }
        result.entries.push_back(std::move(entry));
    }
    return result;
}

SelectionResult select_backend(const Circuit& circuit, const std::vector<BackendDescriptor>& registry,
                               const SelectionOptions& options) {
    if (options.shots == 0) throw BackendError("shots must be at least 1");
    SelectionResult result = filter_backends(circuit, registry, options);
    auto by_success = [](const SelectionEntry& a, const SelectionEntry& b) {
        if (a.success != b.success) return a.success > b.success;
        if (a.total_cost != b.total_cost) return a.total_cost < b.total_cost;
        return a.backend_id < b.backend_id;
    };
    auto by_cost = [](const SelectionEntry& a, const SelectionEntry& b) {
        if (a.total_cost != b.total_cost) return a.total_cost < b.total_cost;
        if (a.success != b.success) return a.success > b.success;
        return a.backend_id < b.backend_id;
    };
    auto split = std::stable_partition(result.entries.begin(), result.entries.end(),
                                       [](const SelectionEntry& e) { return e.feasible; });
    if (options.objective == SelectionObjective::success) {
        std::sort(result.entries.begin(), split, by_success);
    } else {
        std::sort(result.entries.begin(), split, by_cost);
    }
    return result;
}

} // namespace vaql
