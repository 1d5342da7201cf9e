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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vaql/circuit.hpp"
#include "vaql/simulator.hpp"

namespace vaql {

/// A gate whose angle is either fixed or read from a named parameter.
struct ParameterizedGate {
    Gate gate;
    std::optional<std::string> slot;
};

/// Circuit template with symbolic rotation angles.
class ParameterizedCircuit {
public:
    ParameterizedCircuit(std::size_t num_qubits, std::size_t num_cbits = 0);

    /// Appends a concrete gate or measure.
    ParameterizedCircuit& append(const Instruction& instr);
    /// Appends rotation `kind` on `qubit` whose angle is parameter `name`.
    /// New names are added to the parameter list in first-use order.
    ParameterizedCircuit& append_rotation(GateKind kind, std::size_t qubit, const std::string& name);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t num_cbits() const noexcept { return num_cbits_; }
    const std::vector<std::string>& parameters() const noexcept { return parameters_; }
    const std::vector<std::variant<ParameterizedGate, Measure>>& body() const noexcept { return body_; }

private:
    std::size_t num_qubits_;
    std::size_t num_cbits_;
    std::vector<std::string> parameters_;
    std::vector<std::variant<ParameterizedGate, Measure>> body_;
    Circuit shape_;
};

/// Substitutes every slot. `values` must name exactly the parameter list.
Circuit bind_parameters(const ParameterizedCircuit& pc, const std::map<std::string, double>& values);
/// Positional form: values[k] binds parameters()[k].
Circuit bind_parameters(const ParameterizedCircuit& pc, const std::vector<double>& values);

struct PauliTerm {
    double coefficient = 0.0;
    /// Letter k (from I, X, Y, Z) acts on qubit k.
    std::string paulis;
};

/// Weighted sum of Pauli strings.
class Observable {
public:
    Observable(std::size_t num_qubits, std::vector<PauliTerm> terms);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

private:
    std::size_t num_qubits_;
    std::vector<PauliTerm> terms_;
};

/// <psi|O|psi> for the measure-free circuit's final state.
double expectation(const Circuit& circuit, const Observable& obs);
double expectation(const Statevector& state, const Observable& obs);

/// Undirected simple graph; edges are stored as (min, max) pairs, sorted.
class Graph {
public:
    Graph(std::size_t num_vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);

    std::size_t num_vertices() const noexcept { return num_vertices_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

private:
    std::size_t num_vertices_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Number of edges whose endpoints differ; character k of `assignment`
/// is vertex k's side.
std::size_t cut_value(const Graph& g, const std::string& assignment);

struct MaxCut {
    std::size_t value = 0;
    std::string assignment;
};

inline constexpr std::size_t kMaxBruteforceVertices = 24;

/// Exhaustive search; returns the lexicographically smallest optimum.
MaxCut maxcut_bruteforce(const Graph& g);

/// C = sum over edges of (1 - Z_i Z_j) / 2.
Observable maxcut_observable(const Graph& g);

/// H on every qubit, then per layer: CX(i,j) RZ(2 gamma)_j CX(i,j) for each
/// edge in sorted order, then RX(2 beta) on every qubit. With `measure`
/// set, qubit k is measured into cbit k at the end.
Circuit build_qaoa_circuit(const Graph& g, const std::vector<double>& gammas, const std::vector<double>& betas,
                           bool measure = false);

struct VariationalResult {
    std::vector<double> best_parameters;
    double best_value = 0.0;
    std::size_t evaluations = 0;
    /// Accepted improvements in evaluation order (the optimizer trajectory).
    std::vector<std::pair<std::vector<double>, double>> history;
    std::optional<std::string> best_bitstring;
    std::optional<std::size_t> best_cut;
    std::optional<Histogram> histogram;
};

/// Derivative-free minimizer: tries +/- step on each coordinate, keeps
/// strict improvements, halves the step after a sweep without one, stops
/// once the step drops below `min_step`.
struct CoordinateDescent {
    double initial_step = 0.1;
    double min_step = 1e-3;

    /// Minimizes `f` from `start`. `on_improve` sees every accepted point
    /// (including the start). Returns the number of evaluations.
    std::size_t minimize(const std::function<double(const std::vector<double>&)>& f, std::vector<double>& params,
                         double& value,
                         const std::function<void(const std::vector<double>&, double)>& on_improve) const;
};

struct QaoaOptions {
    std::size_t layers = 1;
    std::size_t grid = 32;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
};

/// Maximizes <C> over (gammas, betas): grid search on [0, pi)^(2p), then
/// coordinate descent from pi/grid; samples the best circuit at the end.
/// Parameters are laid out as [gamma_1..gamma_p, beta_1..beta_p].
VariationalResult run_qaoa(const Graph& g, const QaoaOptions& options = {});

struct VqeOptions {
    std::size_t reps = 1;
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kMaxVqeQubits = 12;

/// reps x [RY per qubit, CX chain 0->1->...] + final RY layer.
ParameterizedCircuit vqe_ansatz(std::size_t num_qubits, std::size_t reps);

/// Minimizes <obs> over the ansatz from `restarts` seeded starts in
/// [0, 2 pi)^params.
VariationalResult run_vqe(const Observable& obs, const VqeOptions& options = {});

} // namespace vaql
