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

#include "vaql/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace vaql {

namespace {

constexpr std::array<std::string_view, 15> kMnemonics = {
    "i", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "cx", "cz", "swap"};

std::string index_error(std::string_view what, std::size_t index, std::size_t size) {
    return std::string(what) + " index " + std::to_string(index) + " out of range (register size " +
           std::to_string(size) + ")";
}

} // namespace

std::string_view mnemonic(GateKind kind) noexcept {
    return kMnemonics[static_cast<std::size_t>(kind)];
}

std::optional<GateKind> gate_from_mnemonic(std::string_view name) noexcept {
    for (std::size_t k = 0; k < kMnemonics.size(); ++k) {
        if (kMnemonics[k] == name) return static_cast<GateKind>(k);
    }
    return std::nullopt;
}

std::span<const std::size_t> instruction_qubits(const Instruction& instr) noexcept {
    if (const auto* g = std::get_if<Gate>(&instr)) return g->operands();
    const auto& m = std::get<Measure>(instr);
    return {&m.qubit, 1};
}

namespace gates {

Gate make(GateKind kind, std::span<const std::size_t> qubits, double angle) {
    if (qubits.size() != arity(kind)) {
        throw CircuitError(std::string(mnemonic(kind)) + " expects " + std::to_string(arity(kind)) +
                           " qubit operand(s), got " + std::to_string(qubits.size()));
    }
    Gate g;
    g.kind = kind;
    g.qubits[0] = qubits[0];
    if (qubits.size() == 2) g.qubits[1] = qubits[1];
    g.angle = is_parametric(kind) ? angle : 0.0;
    return g;
}

namespace {
Gate one(GateKind kind, std::size_t q, double angle = 0.0) {
    return Gate{kind, {q, 0}, angle};
}
Gate two(GateKind kind, std::size_t a, std::size_t b) {
    return Gate{kind, {a, b}, 0.0};
}
} // namespace

Gate i(std::size_t q) { return one(GateKind::I, q); }
Gate x(std::size_t q) { return one(GateKind::X, q); }
Gate y(std::size_t q) { return one(GateKind::Y, q); }
Gate z(std::size_t q) { return one(GateKind::Z, q); }
Gate h(std::size_t q) { return one(GateKind::H, q); }
Gate s(std::size_t q) { return one(GateKind::S, q); }
Gate sdg(std::size_t q) { return one(GateKind::SDG, q); }
Gate t(std::size_t q) { return one(GateKind::T, q); }
Gate tdg(std::size_t q) { return one(GateKind::TDG, q); }
Gate rx(std::size_t q, double theta) { return one(GateKind::RX, q, theta); }
Gate ry(std::size_t q, double theta) { return one(GateKind::RY, q, theta); }
Gate rz(std::size_t q, double theta) { return one(GateKind::RZ, q, theta); }
Gate cx(std::size_t control, std::size_t target) { return two(GateKind::CX, control, target); }
Gate cz(std::size_t a, std::size_t b) { return two(GateKind::CZ, a, b); }
Gate swap(std::size_t a, std::size_t b) { return two(GateKind::SWAP, a, b); }

} // namespace gates

Circuit::Circuit(std::size_t num_qubits, std::size_t num_cbits)
    : num_qubits_(num_qubits), num_cbits_(num_cbits) {
    if (num_qubits == 0) throw CircuitError("circuit must have at least one qubit");
    if (num_qubits > kMaxRegisterSize || num_cbits > kMaxRegisterSize) {
        throw CircuitError("register size exceeds " + std::to_string(kMaxRegisterSize));
    }
    measured_.assign(num_qubits, false);
    cbit_written_.assign(num_cbits, false);
}

Circuit Circuit::from_unchecked(std::size_t num_qubits, std::size_t num_cbits,
                                std::vector<Instruction> instructions) {
    Circuit c;
    c.num_qubits_ = num_qubits;
    c.num_cbits_ = num_cbits;
    c.instructions_ = std::move(instructions);
    c.measured_.assign(num_qubits, false);
    c.cbit_written_.assign(num_cbits, false);
    for (const auto& instr : c.instructions_) {
        if (const auto* m = std::get_if<Measure>(&instr)) {
            if (m->qubit < num_qubits) c.measured_[m->qubit] = true;
            if (m->cbit < num_cbits) c.cbit_written_[m->cbit] = true;
        }
    }
    return c;
}

std::optional<std::string> Circuit::check(const Instruction& instr) const {
    if (const auto* g = std::get_if<Gate>(&instr)) {
        for (std::size_t q : g->operands()) {
            if (q >= num_qubits_) return index_error("qubit", q, num_qubits_);
        }
        if (arity(g->kind) == 2 && g->qubits[0] == g->qubits[1]) {
            return std::string(mnemonic(g->kind)) + " operands must be distinct qubits";
        }
        if (!std::isfinite(g->angle)) return std::string("angle must be finite");
        for (std::size_t q : g->operands()) {
            if (measured_[q]) {
                return "gate " + std::string(mnemonic(g->kind)) + " on qubit " + std::to_string(q) +
                       " after it was measured";
            }
        }
        return std::nullopt;
    }
    const auto& m = std::get<Measure>(instr);
    if (m.qubit >= num_qubits_) return index_error("qubit", m.qubit, num_qubits_);
    if (m.cbit >= num_cbits_) return index_error("cbit", m.cbit, num_cbits_);
    if (measured_[m.qubit]) return "qubit " + std::to_string(m.qubit) + " measured twice";
    if (cbit_written_[m.cbit]) return "cbit " + std::to_string(m.cbit) + " written twice";
    return std::nullopt;
}

Circuit& Circuit::append(const Instruction& instr) {
    if (auto reason = check(instr)) throw CircuitError(*reason);
    if (const auto* m = std::get_if<Measure>(&instr)) {
        measured_[m->qubit] = true;
        cbit_written_[m->cbit] = true;
    }
    instructions_.push_back(instr);
    return *this;
}

Circuit& Circuit::append(std::span<const Gate> gates) {
    for (const Gate& g : gates) append(g);
    return *this;
}

std::size_t Circuit::gate_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(instructions_.begin(), instructions_.end(),
        [](const Instruction& i) { return std::holds_alternative<Gate>(i); }));
}

std::size_t Circuit::measure_count() const noexcept {
    return instructions_.size() - gate_count();
}

std::vector<Violation> validate(const Circuit& circuit) {
    // Replay the instructions through a fresh circuit; each rejected
    // instruction is reported and skipped.
    std::vector<Violation> out;
    if (circuit.num_qubits() == 0) {
        out.push_back({0, "circuit must have at least one qubit"});
        return out;
    }
    Circuit replay(circuit.num_qubits(), circuit.num_cbits());
    const auto& instrs = circuit.instructions();
    for (std::size_t pos = 0; pos < instrs.size(); ++pos) {
        if (auto reason = replay.check(instrs[pos])) {
            out.push_back({pos, *reason});
        } else {
            replay.append(instrs[pos]);
        }
    }
    return out;
}

Circuit gates_only(const Circuit& circuit) {
    Circuit out(circuit.num_qubits(), circuit.num_cbits());
    for (const auto& instr : circuit.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) out.append(*g);
    }
    return out;
}

std::size_t circuit_depth(const Circuit& circuit) {
    std::vector<std::size_t> level(circuit.num_qubits(), 0);
    std::size_t depth = 0;
    for (const auto& instr : circuit.instructions()) {
        std::size_t layer = 0;
        for (std::size_t q : instruction_qubits(instr)) layer = std::max(layer, level[q]);
        ++layer;
        for (std::size_t q : instruction_qubits(instr)) level[q] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

Circuit relabel_qubits(const Circuit& circuit, std::span<const std::size_t> mapping,
                       std::size_t new_width) {
    if (mapping.size() < circuit.num_qubits()) throw CircuitError("relabel mapping too short");
    Circuit out(new_width, circuit.num_cbits());
    for (const auto& instr : circuit.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) {
            Gate moved = *g;
            moved.qubits[0] = mapping[g->qubits[0]];
            if (arity(g->kind) == 2) moved.qubits[1] = mapping[g->qubits[1]];
            out.append(moved);
        } else {
            const auto& m = std::get<Measure>(instr);
            out.append(Measure{mapping[m.qubit], m.cbit});
        }
    }
    return out;
}

} // namespace vaql
