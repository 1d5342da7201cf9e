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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vaql/backend.hpp"
#include "vaql/circuit.hpp"
#include "vaql/error.hpp"

namespace vaql {

enum class TranspileStage { decomposition, placement, routing, cleanup };

std::string_view to_string(TranspileStage stage) noexcept;

class TranspileError : public Error {
public:
    TranspileError(TranspileStage stage, const std::string& detail)
        : Error(std::string(to_string(stage)) + ": " + detail), stage_(stage), detail_(detail) {}

    TranspileStage stage() const noexcept { return stage_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    TranspileStage stage_;
    std::string detail_;
};

/// Logical-to-physical maps at circuit start and end. Both vectors cover
/// the whole device (length = backend qubits); entries below
/// `num_logical` belong to the circuit's own qubits, the rest track idle
/// device qubits so that the maps are full permutations.
struct Layout {
    std::vector<std::size_t> initial;
    std::vector<std::size_t> final;
    std::size_t num_logical = 0;

    std::span<const std::size_t> logical_initial() const { return {initial.data(), num_logical}; }
    std::span<const std::size_t> logical_final() const { return {final.data(), num_logical}; }

    static Layout identity(std::size_t num_logical, std::size_t width);
};

struct TranspiledProgram {
    Circuit circuit;
    Layout layout;
    std::string backend_id;
    std::size_t swap_count = 0;
};

/// One step of a rewrite rule: gate `kind` on rule roles `roles`, with
/// angle `param_sign * theta + constant` where theta is the source gate's
/// angle.
struct RuleStep {
    GateKind kind;
    std::array<std::size_t, 2> roles{};
    double param_sign = 0.0;
    double constant = 0.0;
};

/// Replacement of `source` by `steps`, equal up to global phase.
struct RewriteRule {
    std::string name;
    GateKind source;
    std::vector<RuleStep> steps;
};

/// The shipped decomposition table: at most one rule per source kind.
const std::vector<RewriteRule>& decomposition_rules();

/// CX(0,1) expressed through CX(1,0) by Hadamard conjugation.
const RewriteRule& cx_direction_reversal();

/// Applies `rule` to a concrete gate.
std::vector<Gate> expand_rule(const RewriteRule& rule, const Gate& gate);

/// Throws TranspileError unless `native` holds rx, rz and one of cx / cz.
void require_universal(const std::set<GateKind>& native);

/// Rewrites every non-native gate through the rule table until only
/// native gates remain. Measures pass through.
Circuit decompose_to_native(const Circuit& circuit, const std::set<GateKind>& native);

enum class Placement {
    identity,
    /// Identity, replaced by an interaction-weighted greedy placement when
    /// that lowers the static SWAP estimate.
    greedy,
};

struct RoutedCircuit {
    Circuit circuit;
    Layout layout;
    std::size_t swap_count = 0;
};

/// Maps the circuit onto the device and inserts SWAPs along shortest
/// coupling paths so every two-qubit gate acts on a coupled pair in a
/// supported direction. Measures are moved behind all gates (they are
/// terminal per qubit, so this commutes) and retargeted through the final
/// layout.
RoutedCircuit place_and_route(const Circuit& circuit, const BackendDescriptor& backend,
                              Placement placement = Placement::greedy);

/// decompose -> place and route -> peephole cleanup.
TranspiledProgram transpile(const Circuit& circuit, const BackendDescriptor& backend,
                            Placement placement = Placement::greedy);

/// First violation of the transpiled-program contract (non-native gate or
/// uncoupled two-qubit gate), if any.
std::optional<std::string> check_native(const Circuit& circuit, const BackendDescriptor& backend);

} // namespace vaql
