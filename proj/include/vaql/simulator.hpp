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
#include <map>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "vaql/circuit.hpp"
#include "vaql/gate_matrices.hpp"

namespace vaql {

/// Dense register state. Amplitude index bit k is qubit k.
template <typename Scalar>
class BasicStatevector {
public:
    using Complex = std::complex<Scalar>;
    using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

    /// |0...0> on `num_qubits` qubits.
    explicit BasicStatevector(std::size_t num_qubits)
        : num_qubits_(num_qubits), amps_(Vector::Zero(Eigen::Index{1} << num_qubits)) {
        amps_(0) = Complex(1);
    }

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    const Vector& amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t idx) const { return amps_(static_cast<Eigen::Index>(idx)); }

    void apply(const Gate& gate) { kernels::apply_gate(amps_, gate); }

    Scalar norm() const { return amps_.norm(); }

private:
    std::size_t num_qubits_;
    Vector amps_;
};

using Statevector = BasicStatevector<double>;
using UnitaryMatrix = Eigen::MatrixXcd;

/// Exact outcome probabilities over the classical register; bitstrings put
/// cbit 0 leftmost. Entries below 1e-12 are omitted.
struct Distribution {
    std::size_t num_bits = 0;
    std::map<std::string, double> probabilities;
};

/// Sampled shot counts keyed like Distribution.
struct Histogram {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;
};

struct SimulatorOptions {
    std::size_t max_qubits = 20;
};

inline constexpr std::size_t kMaxUnitaryQubits = 10;
inline constexpr double kProbabilityCutoff = 1e-12;

/// Applies the circuit's gates to |0...0>. Throws SimulationError if the
/// circuit measures anything or exceeds the qubit cap.
Statevector run_statevector(const Circuit& circuit, const SimulatorOptions& options = {});

/// Outcome distribution of the circuit's measurements; unmeasured qubits
/// are traced out and unwritten cbits read 0.
Distribution measurement_distribution(const Circuit& circuit, const SimulatorOptions& options = {});

/// Draws `shots` outcomes by inverse-CDF sampling with a seeded
/// std::mt19937_64; keys are visited in lexicographic order.
Histogram sample(const Distribution& dist, std::uint64_t shots, std::uint64_t seed);

/// The full 2^n x 2^n matrix of a measure-free circuit (n <= 10).
UnitaryMatrix circuit_unitary(const Circuit& circuit);

/// True iff some unit-modulus phase p gives max |a - p b| <= tol. The
/// phase is taken from the largest-magnitude entry of `b`.
bool equivalent_up_to_global_phase(const UnitaryMatrix& a, const UnitaryMatrix& b, double tol);

/// Permutation operator sending logical qubit l to physical qubit
/// `mapping[l]`: basis state x maps to y with bit mapping[l] of y equal to
/// bit l of x. `mapping` must be a permutation of 0..n-1.
UnitaryMatrix qubit_permutation(std::span<const std::size_t> mapping);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace vaql
