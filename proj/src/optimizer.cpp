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

#include "vaql/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "vaql/simulator.hpp"

namespace vaql {

namespace {

using Slots = std::vector<std::optional<Instruction>>;

Slots to_slots(const Circuit& circuit) {
    return {circuit.instructions().begin(), circuit.instructions().end()};
}

Circuit from_slots(const Circuit& like, const Slots& slots) {
    Circuit out(like.num_qubits(), like.num_cbits());
    for (const auto& slot : slots) {
        if (slot) out.append(*slot);
    }
    return out;
}

PassReport make_report(std::string name, const Circuit& before, const Circuit& after, std::size_t rewrites) {
    return {std::move(name), before.gate_count(), after.gate_count(), circuit_depth(before),
            circuit_depth(after), rewrites};
}

bool same_operand_set(const Gate& a, const Gate& b) {
    if (arity(a.kind) != arity(b.kind)) return false;
    if (arity(a.kind) == 1) return a.qubits[0] == b.qubits[0];
    return (a.qubits[0] == b.qubits[0] && a.qubits[1] == b.qubits[1]) ||
           (a.qubits[0] == b.qubits[1] && a.qubits[1] == b.qubits[0]);
}

bool cancels(const Gate& first, const Gate& second) {
    if (!same_operand_set(first, second)) return false;
    switch (first.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z: return second.kind == first.kind;
    case GateKind::S: return second.kind == GateKind::SDG;
    case GateKind::SDG: return second.kind == GateKind::S;
    case GateKind::T: return second.kind == GateKind::TDG;
    case GateKind::TDG: return second.kind == GateKind::T;
    case GateKind::CX: return second.kind == GateKind::CX && second.qubits == first.qubits;
    case GateKind::CZ:
    case GateKind::SWAP: return second.kind == first.kind;
    default: return false;
    }
}

/// Index of the live instruction that is the latest on every qubit of
/// `g`, if there is a single such instruction.
std::optional<std::size_t> common_top(const std::vector<std::vector<std::size_t>>& stacks, const Gate& g) {
    std::optional<std::size_t> top;
    for (std::size_t q : g.operands()) {
        if (stacks[q].empty()) return std::nullopt;
        if (top && *top != stacks[q].back()) return std::nullopt;
        top = stacks[q].back();
    }
    return top;
}

void push(std::vector<std::vector<std::size_t>>& stacks, const Instruction& instr, std::size_t idx) {
    for (std::size_t q : instruction_qubits(instr)) stacks[q].push_back(idx);
}

void pop(std::vector<std::vector<std::size_t>>& stacks, const Instruction& instr) {
    for (std::size_t q : instruction_qubits(instr)) stacks[q].pop_back();
}

} // namespace

std::string_view to_string(Objective objective) noexcept {
    return objective == Objective::size ? "size" : "depth";
}

double wrap_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(theta, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

PassResult<PassReport> cancel_inverse_pairs(const Circuit& circuit) {
    Circuit current = circuit;
    std::size_t total = 0;
    while (true) {
        Slots slots = to_slots(current);
        std::vector<std::vector<std::size_t>> stacks(current.num_qubits());
        std::size_t rewrites = 0;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const Instruction& instr = *slots[i];
            if (const auto* g = std::get_if<Gate>(&instr)) {
                if (auto k = common_top(stacks, *g)) {
                    const auto* prev = std::get_if<Gate>(&*slots[*k]);
                    if (prev && cancels(*prev, *g)) {
                        pop(stacks, *slots[*k]);
                        slots[*k].reset();
                        slots[i].reset();
                        ++rewrites;
                        continue;
                    }
                }
            }
            push(stacks, instr, i);
        }
        if (rewrites == 0) break;
        total += rewrites;
        current = from_slots(current, slots);
    }
    return {current, make_report("cancel_inverse_pairs", circuit, current, total)};
}

PassResult<PassReport> merge_rotations(const Circuit& circuit) {
    Circuit current = circuit;
    std::size_t total = 0;
    while (true) {
        Slots slots = to_slots(current);
        std::vector<std::vector<std::size_t>> stacks(current.num_qubits());
        std::size_t rewrites = 0;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const Instruction& instr = *slots[i];
            const auto* g = std::get_if<Gate>(&instr);
            if (g && is_parametric(g->kind) && !stacks[g->qubits[0]].empty()) {
                const std::size_t k = stacks[g->qubits[0]].back();
                auto* prev = std::get_if<Gate>(&*slots[k]);
                if (prev && prev->kind == g->kind) {
                    const double merged = wrap_angle(prev->angle + g->angle);
                    slots[i].reset();
                    ++rewrites;
                    if (std::abs(merged) < 1e-12) {
                        pop(stacks, *slots[k]);
                        slots[k].reset();
                    } else {
                        prev->angle = merged;
                    }
                    continue;
                }
            }
            push(stacks, instr, i);
        }
        if (rewrites == 0) break;
        total += rewrites;
        current = from_slots(current, slots);
    }
    return {current, make_report("merge_rotations", circuit, current, total)};
}

PassResult<QubitRemap> remove_idle_qubits(const Circuit& circuit) {
    std::vector<bool> used(circuit.num_qubits(), false);
    for (const auto& instr : circuit.instructions()) {
        for (std::size_t q : instruction_qubits(instr)) used[q] = true;
    }
    QubitRemap remap;
    std::vector<std::size_t> mapping(circuit.num_qubits(), 0);
    for (std::size_t q = 0; q < used.size(); ++q) {
        if (used[q]) {
            mapping[q] = remap.size();
            remap.emplace(q, remap.size());
        }
    }
    if (remap.empty()) remap.emplace(0, 0);
    return {relabel_qubits(circuit, mapping, remap.size()), std::move(remap)};
}

Template Template::make(std::string name, std::size_t num_roles, std::vector<Gate> pattern,
                        std::vector<Gate> replacement) {
    if (num_roles == 0 || num_roles > 2) throw TemplateError(name + ": templates span one or two qubits");
    if (pattern.empty()) throw TemplateError(name + ": empty pattern");
    Circuit lhs(num_roles, 0), rhs(num_roles, 0);
    try {
        lhs.append(pattern);
        rhs.append(replacement);
    } catch (const CircuitError& e) {
        throw TemplateError(name + ": " + e.what());
    }
    for (std::size_t role = 0; role < num_roles; ++role) {
        const bool touched = std::any_of(pattern.begin(), pattern.end(),
                                         [&](const Gate& g) { return g.acts_on(role); });
        if (!touched) throw TemplateError(name + ": role " + std::to_string(role) + " unused by pattern");
    }
    if (!equivalent_up_to_global_phase(circuit_unitary(lhs), circuit_unitary(rhs), kRuleTolerance)) {
        throw TemplateError(name + ": pattern and replacement are not equivalent");
    }
    Template t;
    t.name_ = std::move(name);
    t.num_roles_ = num_roles;
    t.pattern_ = std::move(pattern);
    t.replacement_ = std::move(replacement);
    return t;
}

const std::vector<Template>& builtin_templates() {
    using namespace gates;
    static const std::vector<Template> library = {
        Template::make("cx_reversal", 2, {h(0), h(1), cx(0, 1), h(0), h(1)}, {cx(1, 0)}),
        Template::make("t_t_to_s", 1, {t(0), t(0)}, {s(0)}),
        Template::make("s_s_to_z", 1, {s(0), s(0)}, {z(0)}),
        Template::make("h_z_h_to_x", 1, {h(0), z(0), h(0)}, {x(0)}),
    };
    return library;
}

namespace {

/// Tries to match `tmpl` with role k bound to qubit `binding[k]`, starting
/// at live instruction `start`. Returns the matched slot index of each
/// pattern gate.
std::optional<std::vector<std::size_t>> match_at(const Slots& slots, std::size_t start,
                                                 const Template& tmpl,
                                                 std::span<const std::size_t> binding) {
    const auto& pattern = tmpl.pattern();
    const std::size_t roles = tmpl.num_roles();
    auto role_of = [&](std::size_t q) -> std::optional<std::size_t> {
        for (std::size_t r = 0; r < roles; ++r) {
            if (binding[r] == q) return r;
        }
        return std::nullopt;
    };

    // Pattern gate indices per role, in order.
    std::vector<std::vector<std::size_t>> expected(roles);
    for (std::size_t p = 0; p < pattern.size(); ++p) {
        for (std::size_t r : pattern[p].operands()) expected[r].push_back(p);
    }

    std::vector<std::vector<std::size_t>> got(roles);
    auto satisfied = [&] {
        for (std::size_t r = 0; r < roles; ++r) {
            if (got[r].size() != expected[r].size()) return false;
        }
        return true;
    };

    for (std::size_t j = start; j < slots.size() && !satisfied(); ++j) {
        if (!slots[j]) continue;
        const Instruction& instr = *slots[j];
        bool inside = false, outside = false;
        for (std::size_t q : instruction_qubits(instr)) (role_of(q) ? inside : outside) = true;
        if (!inside) {
            if (j == start) return std::nullopt;
            continue;
        }
        if (outside || !std::holds_alternative<Gate>(instr)) return std::nullopt;
        for (std::size_t q : instruction_qubits(instr)) {
            const std::size_t r = *role_of(q);
            if (got[r].size() == expected[r].size()) return std::nullopt;
            got[r].push_back(j);
        }
    }
    if (!satisfied()) return std::nullopt;

    std::vector<std::optional<std::size_t>> assigned(pattern.size());
    for (std::size_t r = 0; r < roles; ++r) {
        for (std::size_t k = 0; k < expected[r].size(); ++k) {
            const std::size_t p = expected[r][k];
            const std::size_t j = got[r][k];
            if (assigned[p] && *assigned[p] != j) return std::nullopt;
            assigned[p] = j;
            const Gate& actual = std::get<Gate>(*slots[j]);
            const Gate& want = pattern[p];
            if (actual.kind != want.kind || actual.angle != want.angle) return std::nullopt;
            for (std::size_t o = 0; o < arity(want.kind); ++o) {
                if (actual.qubits[o] != binding[want.qubits[o]]) return std::nullopt;
            }
        }
    }
    std::vector<std::size_t> out;
    for (const auto& a : assigned) out.push_back(*a);
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) return std::nullopt;
    return out;
}

std::vector<std::array<std::size_t, 2>> candidate_bindings(const Gate& first, std::size_t roles,
                                                           std::size_t num_qubits) {
    std::vector<std::array<std::size_t, 2>> out;
    if (roles == 1) {
        if (arity(first.kind) == 1) out.push_back({first.qubits[0], 0});
        return out;
    }
    if (arity(first.kind) == 2) {
        out.push_back({first.qubits[0], first.qubits[1]});
        out.push_back({first.qubits[1], first.qubits[0]});
        return out;
    }
    const std::size_t q = first.qubits[0];
    for (std::size_t other = 0; other < num_qubits; ++other) {
        if (other == q) continue;
        out.push_back({q, other});
        out.push_back({other, q});
    }
    return out;
}

} // namespace

PassResult<PassReport> apply_templates(const Circuit& circuit, const std::vector<Template>& library) {
    Slots slots = to_slots(circuit);
    std::vector<std::vector<Gate>> inserted(slots.size());
    std::size_t rewrites = 0;

    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!slots[s]) continue;
        const auto* first = std::get_if<Gate>(&*slots[s]);
        if (!first) continue;
        for (const Template& tmpl : library) {
            std::optional<std::vector<std::size_t>> hit;
            std::array<std::size_t, 2> used{};
            for (const auto& binding : candidate_bindings(*first, tmpl.num_roles(), circuit.num_qubits())) {
                hit = match_at(slots, s, tmpl, std::span(binding.data(), tmpl.num_roles()));
                if (hit) {
                    used = binding;
                    break;
                }
            }
            if (!hit) continue;
            for (std::size_t j : *hit) slots[j].reset();
            for (Gate g : tmpl.replacement()) {
                g.qubits[0] = used[g.qubits[0]];
                if (arity(g.kind) == 2) g.qubits[1] = used[g.qubits[1]];
                inserted[s].push_back(g);
            }
            ++rewrites;
            break;
        }
    }

    Circuit out(circuit.num_qubits(), circuit.num_cbits());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        out.append(inserted[i]);
        if (slots[i]) out.append(*slots[i]);
    }
    return {out, make_report("apply_templates", circuit, out, rewrites)};
}

OptimizationResult optimize(const Circuit& circuit, Objective objective) {
    OptimizationResult result{circuit, {}, {}, objective, 0};
    for (std::size_t q = 0; q < circuit.num_qubits(); ++q) result.remap.emplace(q, q);

    for (std::size_t round = 0; round < kMaxOptimizerRounds; ++round) {
        ++result.rounds;
        bool changed = false;
        auto run = [&](PassResult<PassReport> step) {
            changed |= step.detail.rewrites > 0;
            result.reports.push_back(std::move(step.detail));
            result.circuit = std::move(step.circuit);
        };
        run(cancel_inverse_pairs(result.circuit));
        run(merge_rotations(result.circuit));
        run(apply_templates(result.circuit, builtin_templates()));

        const Circuit before = result.circuit;
        auto idle = remove_idle_qubits(before);
        const std::size_t removed = before.num_qubits() - idle.circuit.num_qubits();
        result.reports.push_back(make_report("remove_idle_qubits", before, idle.circuit, removed));
        result.circuit = std::move(idle.circuit);
        if (removed > 0) {
            changed = true;
            QubitRemap composed;
            for (const auto& [original, mid] : result.remap) {
                auto it = idle.detail.find(mid);
                if (it != idle.detail.end()) composed.emplace(original, it->second);
            }
            result.remap = std::move(composed);
        }
        if (!changed) break;
    }
    return result;
}

} // namespace vaql
