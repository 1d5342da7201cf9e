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

#include "vaql/simulator.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace vaql {

namespace {

void check_width(const Circuit& circuit, std::size_t cap) {
    if (circuit.num_qubits() > cap) {
        throw SimulationError("circuit has " + std::to_string(circuit.num_qubits()) +
                              " qubits; simulator cap is " + std::to_string(cap));
    }
}

} // namespace

Statevector run_statevector(const Circuit& circuit, const SimulatorOptions& options) {
    if (circuit.has_measurements()) {
        throw SimulationError("circuit contains measurements; use measurement_distribution");
    }
    check_width(circuit, options.max_qubits);
    Statevector state(circuit.num_qubits());
    for (const auto& instr : circuit.instructions()) state.apply(std::get<Gate>(instr));
    return state;
}

Distribution measurement_distribution(const Circuit& circuit, const SimulatorOptions& options) {
    if (!circuit.has_measurements()) {
        throw SimulationError("circuit has no measurements; nothing observable");
    }
    check_width(circuit, options.max_qubits);

    // Measurement is terminal per qubit, so every gate commutes past every
    // measure it follows in program order.
    Statevector state(circuit.num_qubits());
    std::vector<Measure> measures;
    for (const auto& instr : circuit.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) {
            state.apply(*g);
        } else {
            measures.push_back(std::get<Measure>(instr));
        }
    }

    std::map<std::string, double> acc;
    std::string key(circuit.num_cbits(), '0');
    const auto& amps = state.amplitudes();
    for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
        const double p = std::norm(amps(static_cast<Eigen::Index>(idx)));
        if (p == 0.0) continue;
        for (const Measure& m : measures) key[m.cbit] = ((idx >> m.qubit) & 1U) ? '1' : '0';
        acc[key] += p;
    }

    Distribution dist;
    dist.num_bits = circuit.num_cbits();
    for (auto& [bits, p] : acc) {
        if (p >= kProbabilityCutoff) dist.probabilities.emplace(bits, p);
    }
    return dist;
}

Histogram sample(const Distribution& dist, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw SimulationError("shots must be at least 1");
    if (dist.probabilities.empty()) throw SimulationError("cannot sample an empty distribution");

    std::vector<const std::string*> keys;
    std::vector<double> cdf;
    double total = 0.0;
    for (const auto& [bits, p] : dist.probabilities) {
        total += p;
        keys.push_back(&bits);
        cdf.push_back(total);
    }

    std::vector<std::uint64_t> tally(keys.size(), 0);
    std::mt19937_64 rng(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = unit_interval(rng()) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), keys.size() - 1);
        ++tally[k];
    }

    Histogram hist;
    hist.shots = shots;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        if (tally[k] > 0) hist.counts.emplace(*keys[k], tally[k]);
    }
    return hist;
}

UnitaryMatrix circuit_unitary(const Circuit& circuit) {
    if (circuit.has_measurements()) throw SimulationError("circuit_unitary requires a measure-free circuit");
    check_width(circuit, kMaxUnitaryQubits);
    const auto dim = Eigen::Index{1} << circuit.num_qubits();
    UnitaryMatrix u = UnitaryMatrix::Identity(dim, dim);
    for (const auto& instr : circuit.instructions()) kernels::apply_dense_rows(u, std::get<Gate>(instr));
    return u;
}

bool equivalent_up_to_global_phase(const UnitaryMatrix& a, const UnitaryMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw SimulationError("dimension mismatch in equivalence check");
    }
    if (b.size() == 0) return true;
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    std::complex<double> phase(1.0, 0.0);
    const std::complex<double> ratio = a(r, c) / b(r, c);
    if (std::abs(ratio) > 0.0) phase = ratio / std::abs(ratio);
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

UnitaryMatrix qubit_permutation(std::span<const std::size_t> mapping) {
    const std::size_t n = mapping.size();
    std::vector<bool> seen(n, false);
    for (std::size_t target : mapping) {
        if (target >= n || seen[target]) throw SimulationError("qubit_permutation: not a permutation");
        seen[target] = true;
    }
    const auto dim = Eigen::Index{1} << n;
    UnitaryMatrix p = UnitaryMatrix::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        Eigen::Index y = 0;
        for (std::size_t l = 0; l < n; ++l) {
            if ((x >> l) & 1) y |= Eigen::Index{1} << mapping[l];
        }
        p(y, x) = 1.0;
    }
    return p;
}

} // namespace vaql
