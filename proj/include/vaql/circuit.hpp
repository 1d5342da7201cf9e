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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vaql/error.hpp"

namespace vaql {

enum class GateKind { I, X, Y, Z, H, S, SDG, T, TDG, RX, RY, RZ, CX, CZ, SWAP };

inline constexpr std::array<GateKind, 15> kAllGateKinds = {
    GateKind::I,  GateKind::X,   GateKind::Y,  GateKind::Z,  GateKind::H,
    GateKind::S,  GateKind::SDG, GateKind::T,  GateKind::TDG, GateKind::RX,
    GateKind::RY, GateKind::RZ,  GateKind::CX, GateKind::CZ, GateKind::SWAP};

/// Number of qubit operands (1 or 2).
constexpr std::size_t arity(GateKind kind) noexcept {
    return (kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::SWAP) ? 2 : 1;
}

/// True for RX/RY/RZ, which carry a single angle in radians.
constexpr bool is_parametric(GateKind kind) noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

/// Lowercase mnemonic used by the text format and the backend registry.
std::string_view mnemonic(GateKind kind) noexcept;
std::optional<GateKind> gate_from_mnemonic(std::string_view name) noexcept;

/// A unitary gate. For two-qubit gates `qubits[0]` is the control (CX) or
/// first operand; `angle` is meaningful only for parametric kinds and is
/// kept at 0.0 otherwise.
struct Gate {
    GateKind kind = GateKind::I;
    std::array<std::size_t, 2> qubits{};
    double angle = 0.0;

    std::span<const std::size_t> operands() const noexcept {
        return {qubits.data(), arity(kind)};
    }
    bool acts_on(std::size_t q) const noexcept {
        return qubits[0] == q || (arity(kind) == 2 && qubits[1] == q);
    }

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Computational-basis measurement of `qubit` into classical bit `cbit`.
struct Measure {
    std::size_t qubit = 0;
    std::size_t cbit = 0;

    friend bool operator==(const Measure&, const Measure&) = default;
};

using Instruction = std::variant<Gate, Measure>;

/// Qubits touched by an instruction.
std::span<const std::size_t> instruction_qubits(const Instruction& instr) noexcept;

namespace gates {
Gate i(std::size_t q);
Gate x(std::size_t q);
Gate y(std::size_t q);
Gate z(std::size_t q);
Gate h(std::size_t q);
Gate s(std::size_t q);
Gate sdg(std::size_t q);
Gate t(std::size_t q);
Gate tdg(std::size_t q);
Gate rx(std::size_t q, double theta);
Gate ry(std::size_t q, double theta);
Gate rz(std::size_t q, double theta);
Gate cx(std::size_t control, std::size_t target);
Gate cz(std::size_t a, std::size_t b);
Gate swap(std::size_t a, std::size_t b);
/// Generic constructor; checks operand count and parameter presence.
Gate make(GateKind kind, std::span<const std::size_t> qubits, double angle = 0.0);
} // namespace gates

/// One invariant violation found by validate(); `position` indexes the
/// offending instruction.
struct Violation {
    std::size_t position = 0;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Upper bound on register sizes accepted by the IR.
inline constexpr std::size_t kMaxRegisterSize = std::size_t{1} << 16;

/// Ordered gate/measure list over a quantum and a classical register.
/// Every qubit starts in |0>. Measurement is terminal per qubit and each
/// classical bit is written at most once.
class Circuit {
public:
    /// Throws CircuitError for zero qubits or oversized registers.
    Circuit(std::size_t num_qubits, std::size_t num_cbits);

    /// Builds a circuit without checking invariants. Intended for tooling
    /// that wants to inspect broken input through validate().
    static Circuit from_unchecked(std::size_t num_qubits, std::size_t num_cbits,
                                  std::vector<Instruction> instructions);

    /// Appends `instr` if the circuit stays valid; throws CircuitError
    /// (leaving the circuit unchanged) otherwise.
    Circuit& append(const Instruction& instr);
    Circuit& append(std::span<const Gate> gates);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t num_cbits() const noexcept { return num_cbits_; }
    const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
    std::size_t size() const noexcept { return instructions_.size(); }
    bool empty() const noexcept { return instructions_.empty(); }

    std::size_t gate_count() const noexcept;
    std::size_t measure_count() const noexcept;
    bool has_measurements() const noexcept { return measure_count() > 0; }

    /// Reason `instr` cannot be appended, or nullopt if it can.
    std::optional<std::string> check(const Instruction& instr) const;

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.num_qubits_ == b.num_qubits_ && a.num_cbits_ == b.num_cbits_ &&
               a.instructions_ == b.instructions_;
    }

private:
    Circuit() = default;

    std::size_t num_qubits_ = 0;
    std::size_t num_cbits_ = 0;
    std::vector<Instruction> instructions_;
    std::vector<bool> measured_;
    std::vector<bool> cbit_written_;
};

/// Every invariant violation in `circuit`, in instruction order. Empty iff
/// the circuit is valid.
std::vector<Violation> validate(const Circuit& circuit);

/// The measure-free part of `circuit`: all gates in order, same registers.
Circuit gates_only(const Circuit& circuit);

/// Greedy layering depth: each instruction (measures included) goes into
/// the layer after the latest layer holding any of its qubits.
std::size_t circuit_depth(const Circuit& circuit);

/// Copy of `circuit` on `new_width` qubits with qubit q renamed to
/// `mapping[q]`. Throws CircuitError if the result is invalid.
Circuit relabel_qubits(const Circuit& circuit, std::span<const std::size_t> mapping,
                       std::size_t new_width);

} // namespace vaql
