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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vaql/circuit.hpp"

namespace vaql {

enum class Objective { size, depth };

std::string_view to_string(Objective objective) noexcept;

/// Before/after metrics of one pass invocation.
struct PassReport {
    std::string pass;
    std::size_t gates_before = 0;
    std::size_t gates_after = 0;
    std::size_t depth_before = 0;
    std::size_t depth_after = 0;
    std::size_t rewrites = 0;
};

/// A pattern/replacement pair over `num_roles` abstract qubits (role k is
/// qubit k inside `pattern` and `replacement`). Construction checks that
/// both sides have the same unitary up to global phase.
class Template {
public:
    static Template make(std::string name, std::size_t num_roles, std::vector<Gate> pattern,
                         std::vector<Gate> replacement);

    const std::string& name() const noexcept { return name_; }
    std::size_t num_roles() const noexcept { return num_roles_; }
    const std::vector<Gate>& pattern() const noexcept { return pattern_; }
    const std::vector<Gate>& replacement() const noexcept { return replacement_; }

private:
    Template() = default;

    std::string name_;
    std::size_t num_roles_ = 0;
    std::vector<Gate> pattern_;
    std::vector<Gate> replacement_;
};

/// Tolerance used when verifying templates and rewrite rules.
inline constexpr double kRuleTolerance = 1e-12;

/// CX reversal, T.T -> S, S.S -> Z, H.Z.H -> X.
const std::vector<Template>& builtin_templates();

/// old qubit index -> new qubit index.
using QubitRemap = std::map<std::size_t, std::size_t>;

template <typename T>
struct PassResult {
    Circuit circuit;
    T detail;
};

/// Removes adjacent gate pairs that compose to identity, to fixpoint.
PassResult<PassReport> cancel_inverse_pairs(const Circuit& circuit);

/// Merges adjacent same-axis rotations on a qubit; merged angles are
/// wrapped into (-pi, pi] and dropped below 1e-12.
PassResult<PassReport> merge_rotations(const Circuit& circuit);

/// Drops qubits no instruction touches (keeping at least one) and
/// renumbers the rest in ascending order.
PassResult<QubitRemap> remove_idle_qubits(const Circuit& circuit);

/// One greedy left-to-right pass replacing template occurrences. A match
/// must be contiguous on its qubits: nothing else touching those qubits may
/// sit between its first and last gate.
PassResult<PassReport> apply_templates(const Circuit& circuit, const std::vector<Template>& library);

struct OptimizationResult {
    Circuit circuit;
    QubitRemap remap;
    std::vector<PassReport> reports;
    Objective objective = Objective::size;
    std::size_t rounds = 0;
};

inline constexpr std::size_t kMaxOptimizerRounds = 100;

/// Runs cancellation, rotation merging, templates and idle-qubit removal
/// in rounds until nothing changes.
OptimizationResult optimize(const Circuit& circuit, Objective objective = Objective::size);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

} // namespace vaql
