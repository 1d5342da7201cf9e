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

#include "vaql/codegen.hpp"

#include <algorithm>
#include <numbers>

#include "vaql/frontend.hpp"

namespace vaql {

namespace {

std::string qreg(std::size_t q) { return "q[" + std::to_string(q) + "]"; }

std::string_view quil_name(GateKind kind) {
    switch (kind) {
    case GateKind::I: return "I";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CX: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    default: break;
    }
    throw CodegenError("no Quil name for " + std::string(mnemonic(kind)));
}

} // namespace

std::string emit_qasm2(const Circuit& circuit) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(circuit.num_qubits()) + "];\n";
    out += "creg c[" + std::to_string(std::max<std::size_t>(circuit.num_cbits(), 1)) + "];\n";
    for (const auto& instr : circuit.instructions()) {
        if (const auto* m = std::get_if<Measure>(&instr)) {
            out += "measure " + qreg(m->qubit) + " -> c[" + std::to_string(m->cbit) + "];\n";
            continue;
        }
        const auto& g = std::get<Gate>(instr);
        out += (g.kind == GateKind::I) ? std::string_view("id") : mnemonic(g.kind);
        if (is_parametric(g.kind)) out += "(" + format_angle(g.angle) + ")";
        out += " " + qreg(g.qubits[0]);
        if (arity(g.kind) == 2) out += "," + qreg(g.qubits[1]);
        out += ";\n";
    }
    return out;
}

std::string emit_quil(const Circuit& circuit) {
    std::string out;
    if (circuit.has_measurements()) out += "DECLARE ro BIT[" + std::to_string(circuit.num_cbits()) + "]\n";
    for (const auto& instr : circuit.instructions()) {
        if (const auto* m = std::get_if<Measure>(&instr)) {
            out += "MEASURE " + std::to_string(m->qubit) + " ro[" + std::to_string(m->cbit) + "]\n";
            continue;
        }
        const auto& g = std::get<Gate>(instr);
        if (g.kind == GateKind::SDG || g.kind == GateKind::TDG) {
            const double theta = g.kind == GateKind::SDG ? -std::numbers::pi / 2 : -std::numbers::pi / 4;
            out += "RZ(" + format_angle(theta) + ") " + std::to_string(g.qubits[0]) + "\n";
            continue;
        }
        out += quil_name(g.kind);
        if (is_parametric(g.kind)) out += "(" + format_angle(g.angle) + ")";
        out += " " + std::to_string(g.qubits[0]);
        if (arity(g.kind) == 2) out += " " + std::to_string(g.qubits[1]);
        out += "\n";
    }
    return out;
}

std::string emit_qasm2(const TranspiledProgram& program) { return emit_qasm2(program.circuit); }
std::string emit_quil(const TranspiledProgram& program) { return emit_quil(program.circuit); }

std::string emit_assembler(const TranspiledProgram& program, Assembler assembler) {
    return assembler == Assembler::qasm2 ? emit_qasm2(program) : emit_quil(program);
}

} // namespace vaql
