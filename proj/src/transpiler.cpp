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

#include "vaql/transpiler.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <queue>

#include "vaql/optimizer.hpp"

namespace vaql {

std::string_view to_string(TranspileStage stage) noexcept {
    switch (stage) {
    case TranspileStage::decomposition: return "decomposition";
    case TranspileStage::placement: return "placement";
    case TranspileStage::routing: return "routing";
    case TranspileStage::cleanup: return "cleanup";
    }
    return "unknown";
}

Layout Layout::identity(std::size_t num_logical, std::size_t width) {
    Layout l;
    l.num_logical = num_logical;
    for (std::size_t q = 0; q < width; ++q) l.initial.push_back(q);
    l.final = l.initial;
    return l;
}

namespace {

constexpr double kPi = std::numbers::pi;

RuleStep fixed(GateKind kind, std::size_t role, double angle = 0.0) {
    return {kind, {role, 0}, 0.0, angle};
}
RuleStep pair(GateKind kind, std::size_t a, std::size_t b) {
    return {kind, {a, b}, 0.0, 0.0};
}

} // namespace

const std::vector<RewriteRule>& decomposition_rules() {
    using K = GateKind;
    static const std::vector<RewriteRule> rules = {
        {"i_drop", K::I, {}},
        {"x_to_rx", K::X, {fixed(K::RX, 0, kPi)}},
        {"y_to_rz_rx", K::Y, {fixed(K::RZ, 0, kPi), fixed(K::RX, 0, kPi)}},
        {"z_to_rz", K::Z, {fixed(K::RZ, 0, kPi)}},
        {"h_to_rz_rx_rz", K::H, {fixed(K::RZ, 0, kPi / 2), fixed(K::RX, 0, kPi / 2), fixed(K::RZ, 0, kPi / 2)}},
        {"s_to_rz", K::S, {fixed(K::RZ, 0, kPi / 2)}},
        {"sdg_to_rz", K::SDG, {fixed(K::RZ, 0, -kPi / 2)}},
        {"t_to_rz", K::T, {fixed(K::RZ, 0, kPi / 4)}},
        {"tdg_to_rz", K::TDG, {fixed(K::RZ, 0, -kPi / 4)}},
        {"ry_to_rz_rx_rz", K::RY, {fixed(K::RZ, 0, -kPi / 2), {K::RX, {0, 0}, 1.0, 0.0}, fixed(K::RZ, 0, kPi / 2)}},
        {"cx_to_cz", K::CX, {fixed(K::H, 1), pair(K::CZ, 0, 1), fixed(K::H, 1)}},
        {"cz_to_cx", K::CZ, {fixed(K::H, 1), pair(K::CX, 0, 1), fixed(K::H, 1)}},
        {"swap_to_cx", K::SWAP, {pair(K::CX, 0, 1), pair(K::CX, 1, 0), pair(K::CX, 0, 1)}},
    };
    return rules;
}

const RewriteRule& cx_direction_reversal() {
    using K = GateKind;
    static const RewriteRule rule{
        "cx_direction_reversal", K::CX,
        {fixed(K::H, 0), fixed(K::H, 1), pair(K::CX, 1, 0), fixed(K::H, 0), fixed(K::H, 1)}};
    return rule;
}

std::vector<Gate> expand_rule(const RewriteRule& rule, const Gate& gate) {
    std::vector<Gate> out;
    for (const RuleStep& step : rule.steps) {
        Gate g;
        g.kind = step.kind;
        g.qubits[0] = gate.qubits[step.roles[0]];
        if (arity(step.kind) == 2) g.qubits[1] = gate.qubits[step.roles[1]];
        g.angle = is_parametric(step.kind) ? step.param_sign * gate.angle + step.constant : 0.0;
        out.push_back(g);
    }
    return out;
}

void require_universal(const std::set<GateKind>& native) {
    const bool ok = native.count(GateKind::RX) && native.count(GateKind::RZ) &&
                    (native.count(GateKind::CX) || native.count(GateKind::CZ));
    if (!ok) {
        throw TranspileError(TranspileStage::decomposition,
                             "unsupported native gate set: need rx, rz and one of cx, cz");
    }
}

namespace {

const RewriteRule* rule_for(GateKind kind) {
    for (const auto& rule : decomposition_rules()) {
        if (rule.source == kind) return &rule;
    }
    return nullptr;
}

void decompose_into(const Gate& gate, const std::set<GateKind>& native, std::vector<Gate>& out, int depth) {
    if (native.count(gate.kind)) {
        out.push_back(gate);
        return;
    }
    const RewriteRule* rule = rule_for(gate.kind);
    if (!rule || depth > 8) {
        throw TranspileError(TranspileStage::decomposition,
                             "no decomposition for " + std::string(mnemonic(gate.kind)));
    }
    for (const Gate& step : expand_rule(*rule, gate)) decompose_into(step, native, out, depth + 1);
}

} // namespace

Circuit decompose_to_native(const Circuit& circuit, const std::set<GateKind>& native) {
    require_universal(native);
    Circuit out(circuit.num_qubits(), circuit.num_cbits());
    std::vector<Gate> buffer;
    for (const auto& instr : circuit.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) {
            buffer.clear();
            decompose_into(*g, native, buffer, 0);
            out.append(buffer);
        } else {
            out.append(instr);
        }
    }
    return out;
}

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

class Device {
public:
    explicit Device(const BackendDescriptor& backend) : backend_(backend), n_(backend.num_qubits) {
        neighbors_.resize(n_);
        for (const auto& [a, b] : backend.coupling_map) {
            neighbors_[a].push_back(b);
            neighbors_[b].push_back(a);
        }
        for (auto& list : neighbors_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        dist_.assign(n_, std::vector<std::size_t>(n_, kUnreachable));
        for (std::size_t src = 0; src < n_; ++src) {
            std::queue<std::size_t> frontier;
            dist_[src][src] = 0;
            frontier.push(src);
            while (!frontier.empty()) {
                const std::size_t u = frontier.front();
                frontier.pop();
                for (std::size_t v : neighbors_[u]) {
                    if (dist_[src][v] == kUnreachable) {
                        dist_[src][v] = dist_[src][u] + 1;
                        frontier.push(v);
                    }
                }
            }
        }
    }

    std::size_t size() const { return n_; }
    std::size_t distance(std::size_t a, std::size_t b) const { return dist_[a][b]; }
    std::size_t degree(std::size_t q) const { return neighbors_[q].size(); }

    /// Shortest path from `from` to `to`; among equal-length paths each step
    /// takes the lowest-index neighbor that stays on a shortest path.
    std::vector<std::size_t> path(std::size_t from, std::size_t to) const {
        std::vector<std::size_t> out{from};
        std::size_t u = from;
        while (u != to) {
            for (std::size_t v : neighbors_[u]) {
                if (dist_[v][to] + 1 == dist_[u][to]) {
                    u = v;
                    break;
                }
            }
            out.push_back(u);
        }
        return out;
    }

    const BackendDescriptor& backend() const { return backend_; }

private:
    const BackendDescriptor& backend_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> neighbors_;
    std::vector<std::vector<std::size_t>> dist_;
};

/// Sum over two-qubit gates of (distance - 1) under a fixed layout.
std::size_t static_swap_estimate(const std::vector<Gate>& gates, const std::vector<std::size_t>& layout,
                                 const Device& device) {
    std::size_t total = 0;
    for (const Gate& g : gates) {
        if (arity(g.kind) != 2) continue;
        const std::size_t d = device.distance(layout[g.qubits[0]], layout[g.qubits[1]]);
        total += (d == kUnreachable) ? device.size() * device.size() : d - 1;
    }
    return total;
}

std::vector<std::size_t> greedy_layout(const std::vector<Gate>& gates, std::size_t width, const Device& device) {
    std::vector<std::vector<std::size_t>> weight(width, std::vector<std::size_t>(width, 0));
    std::vector<std::size_t> total(width, 0);
    for (const Gate& g : gates) {
        if (arity(g.kind) != 2) continue;
        ++weight[g.qubits[0]][g.qubits[1]];
        ++weight[g.qubits[1]][g.qubits[0]];
        ++total[g.qubits[0]];
        ++total[g.qubits[1]];
    }
    std::vector<std::size_t> order(width);
    for (std::size_t q = 0; q < width; ++q) order[q] = q;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return total[a] > total[b]; });

    std::vector<std::size_t> layout(width, kUnreachable);
    std::vector<bool> taken(width, false);
    bool first = true;
    for (std::size_t logical : order) {
        std::size_t best = kUnreachable;
        std::size_t best_score = kUnreachable;
        for (std::size_t p = 0; p < width; ++p) {
            if (taken[p]) continue;
            std::size_t score = 0;
            if (first) {
                // Most connected physical qubit first.
                score = width - device.degree(p);
            } else {
                for (std::size_t other = 0; other < width; ++other) {
                    if (layout[other] == kUnreachable || weight[logical][other] == 0) continue;
                    const std::size_t d = device.distance(p, layout[other]);
                    score += weight[logical][other] * (d == kUnreachable ? width * width : d);
                }
            }
            if (score < best_score) {
                best_score = score;
                best = p;
            }
        }
        layout[logical] = best;
        taken[best] = true;
        first = first && total[logical] == 0;
    }
    return layout;
}

/// Emits gates on physical qubits, rewriting non-native gates and fixing
/// two-qubit gate direction against the coupling map.
class Emitter {
public:
    Emitter(const BackendDescriptor& backend, Circuit& out) : backend_(backend), out_(out) {}

    void emit(const Gate& g, int depth = 0) {
        if (depth > 12) {
            throw TranspileError(TranspileStage::routing, "cannot legalize " + std::string(mnemonic(g.kind)));
        }
        if (!backend_.is_native(g.kind)) {
            const RewriteRule* rule = rule_for(g.kind);
            if (!rule) {
                throw TranspileError(TranspileStage::decomposition,
                                     "no decomposition for " + std::string(mnemonic(g.kind)));
            }
            for (const Gate& step : expand_rule(*rule, g)) emit(step, depth + 1);
            return;
        }
        if (arity(g.kind) == 1) {
            out_.append(g);
            return;
        }
        const std::size_t a = g.qubits[0], b = g.qubits[1];
        if (backend_.has_edge(a, b)) {
            out_.append(g);
        } else if (!backend_.has_edge(b, a)) {
            throw TranspileError(TranspileStage::routing, "physical qubits " + std::to_string(a) + " and " +
                                                              std::to_string(b) + " are not coupled");
        } else if (g.kind == GateKind::CX) {
            for (const Gate& step : expand_rule(cx_direction_reversal(), g)) emit(step, depth + 1);
        } else {
            // CZ and SWAP are symmetric in their operands.
            out_.append(Gate{g.kind, {b, a}, 0.0});
        }
    }

private:
    const BackendDescriptor& backend_;
    Circuit& out_;
};

} // namespace

RoutedCircuit place_and_route(const Circuit& circuit, const BackendDescriptor& backend, Placement placement) {
    const std::size_t width = backend.num_qubits;
    if (circuit.num_qubits() > width) {
        throw TranspileError(TranspileStage::placement,
                             "insufficient qubits: circuit needs " + std::to_string(circuit.num_qubits()) +
                                 ", backend " + backend.id + " has " + std::to_string(width));
    }
    const Device device(backend);

    std::vector<Gate> gates;
    std::vector<Measure> measures;
    for (const auto& instr : circuit.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) {
            gates.push_back(*g);
        } else {
            measures.push_back(std::get<Measure>(instr));
        }
    }

    Layout layout = Layout::identity(circuit.num_qubits(), width);
    if (placement == Placement::greedy) {
        auto candidate = greedy_layout(gates, width, device);
        if (static_swap_estimate(gates, candidate, device) < static_swap_estimate(gates, layout.initial, device)) {
            layout.initial = candidate;
        }
    }

    std::vector<std::size_t> log2phys = layout.initial;
    std::vector<std::size_t> phys2log(width);
    for (std::size_t l = 0; l < width; ++l) phys2log[log2phys[l]] = l;

    RoutedCircuit routed{Circuit(width, circuit.num_cbits()), {}, 0};
    Emitter emitter(backend, routed.circuit);
    for (const Gate& g : gates) {
        Gate mapped = g;
        mapped.qubits[0] = log2phys[g.qubits[0]];
        if (arity(g.kind) == 1) {
            emitter.emit(mapped);
            continue;
        }
        mapped.qubits[1] = log2phys[g.qubits[1]];
        const std::size_t d = device.distance(mapped.qubits[0], mapped.qubits[1]);
        if (d == kUnreachable) {
            throw TranspileError(TranspileStage::routing,
                                 "no coupling path between physical qubits " + std::to_string(mapped.qubits[0]) +
                                     " and " + std::to_string(mapped.qubits[1]));
        }
        if (d > 1) {
            const auto path = device.path(mapped.qubits[0], mapped.qubits[1]);
            for (std::size_t k = 0; k + 2 < path.size(); ++k) {
                const std::size_t p = path[k], q = path[k + 1];
                emitter.emit(gates::swap(p, q));
                ++routed.swap_count;
                std::swap(phys2log[p], phys2log[q]);
                log2phys[phys2log[p]] = p;
                log2phys[phys2log[q]] = q;
            }
            mapped.qubits[0] = log2phys[g.qubits[0]];
        }
        emitter.emit(mapped);
    }
    for (const Measure& m : measures) routed.circuit.append(Measure{log2phys[m.qubit], m.cbit});

    layout.final = log2phys;
    routed.layout = std::move(layout);
    return routed;
}

std::optional<std::string> check_native(const Circuit& circuit, const BackendDescriptor& backend) {
    for (const auto& instr : circuit.instructions()) {
        const auto* g = std::get_if<Gate>(&instr);
        if (!g) continue;
        if (!backend.is_native(g->kind)) {
            return "gate " + std::string(mnemonic(g->kind)) + " is not native on " + backend.id;
        }
        if (arity(g->kind) == 2 && !backend.has_edge(g->qubits[0], g->qubits[1])) {
            return std::string(mnemonic(g->kind)) + " on uncoupled pair (" + std::to_string(g->qubits[0]) + ", " +
                   std::to_string(g->qubits[1]) + ") on " + backend.id;
        }
    }
    return std::nullopt;
}

TranspiledProgram transpile(const Circuit& circuit, const BackendDescriptor& backend, Placement placement) {
    if (circuit.num_qubits() > backend.num_qubits) {
        throw TranspileError(TranspileStage::placement,
                             "insufficient qubits: circuit needs " + std::to_string(circuit.num_qubits()) +
                                 ", backend " + backend.id + " has " + std::to_string(backend.num_qubits));
    }
    const Circuit native = decompose_to_native(circuit, backend.native_gates);
    RoutedCircuit routed = place_and_route(native, backend, placement);

    Circuit cleaned = routed.circuit;
    while (true) {
        auto cancelled = cancel_inverse_pairs(cleaned);
        auto merged = merge_rotations(cancelled.circuit);
        const bool changed = cancelled.detail.rewrites + merged.detail.rewrites > 0;
        cleaned = std::move(merged.circuit);
        if (!changed) break;
    }
    if (auto problem = check_native(cleaned, backend)) throw TranspileError(TranspileStage::cleanup, *problem);
    return {std::move(cleaned), std::move(routed.layout), backend.id, routed.swap_count};
}

} // namespace vaql
