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

#include <string_view>
#include <vector>

#include "json.hpp"

#include "vaql/analyzer.hpp"
#include "vaql/backend.hpp"
#include "vaql/hybrid.hpp"
#include "vaql/optimizer.hpp"
#include "vaql/simulator.hpp"
#include "vaql/transpiler.hpp"

namespace vaql {

using Json = nlohmann::json;

/// {bitstring: probability}; keys sorted.
Json to_json(const Distribution& dist);
/// {bitstring: count}; keys sorted.
Json to_json(const Histogram& hist);
Json to_json(const PassReport& report);
Json to_json(const OptimizationResult& result);
Json to_json(const CircuitProfile& profile);
Json to_json(const BackendDescriptor& backend);
Json to_json(const SelectionResult& selection);
/// Circuit as canonical vaql text plus the logical-qubit layouts.
Json to_json(const TranspiledProgram& program);
Json to_json(const VariationalResult& result);

/// Strict descriptor parsing: every field required, unknown fields
/// rejected. Throws BackendError.
BackendDescriptor backend_from_json(const Json& j);
/// JSON array of descriptors; ids must be unique.
std::vector<BackendDescriptor> parse_registry(std::string_view text);
Json registry_to_json(const std::vector<BackendDescriptor>& registry);

/// {"n": int, "edges": [[i, j], ...]}. Throws HybridError.
Graph graph_from_json(const Json& j);
/// [[coefficient, "PAULIS"], ...]. Throws HybridError.
Observable observable_from_json(const Json& j);

} // namespace vaql
