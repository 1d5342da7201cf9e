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

#include "vaql/hybrid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace vaql {

ParameterizedCircuit::ParameterizedCircuit(std::size_t num_qubits, std::size_t num_cbits)
    : num_qubits_(num_qubits), num_cbits_(num_cbits), shape_(num_qubits, num_cbits) {}

ParameterizedCircuit& ParameterizedCircuit::append(const Instruction& instr) {
    shape_.append(instr);
    if (const auto* g = std::get_if<Gate>(&instr)) {
        body_.emplace_back(ParameterizedGate{*g, std::nullopt});
    } else {
        body_.emplace_back(std::get<Measure>(instr));
    }
    return *this;
}

ParameterizedCircuit& ParameterizedCircuit::append_rotation(GateKind kind, std::size_t qubit,
                                                            const std::string& name) {
    if (!is_parametric(kind)) throw HybridError(std::string(mnemonic(kind)) + " has no angle to parameterize");
    if (name.empty()) throw HybridError("parameter name must not be empty");
    const Gate g{kind, {qubit, 0}, 0.0};
    shape_.append(g);
    body_.emplace_back(ParameterizedGate{g, name});
    if (std::find(parameters_.begin(), parameters_.end(), name) == parameters_.end()) parameters_.push_back(name);
    return *this;
}

Circuit bind_parameters(const ParameterizedCircuit& pc, const std::map<std::string, double>& values) {
    for (const auto& name : pc.parameters()) {
        if (!values.count(name)) throw HybridError("missing value for parameter '" + name + "'");
    }
    for (const auto& [name, value] : values) {
        const auto& params = pc.parameters();
        if (std::find(params.begin(), params.end(), name) == params.end()) {
            throw HybridError("unknown parameter '" + name + "'");
        }
        if (!std::isfinite(value)) throw HybridError("parameter '" + name + "' is not finite");
    }
    Circuit out(pc.num_qubits(), pc.num_cbits());
    for (const auto& item : pc.body()) {
        if (const auto* pg = std::get_if<ParameterizedGate>(&item)) {
            Gate g = pg->gate;
            if (pg->slot) g.angle = values.at(*pg->slot);
            out.append(g);
        } else {
            out.append(std::get<Measure>(item));
        }
    }
    return out;
}

Circuit bind_parameters(const ParameterizedCircuit& pc, const std::vector<double>& values) {
    if (values.size() != pc.parameters().size()) {
        throw HybridError("expected " + std::to_string(pc.parameters().size()) + " parameter values, got " +
                          std::to_string(values.size()));
    }
    std::map<std::string, double> named;
    for (std::size_t k = 0; k < values.size(); ++k) named.emplace(pc.parameters()[k], values[k]);
    return bind_parameters(pc, named);
}

Observable::Observable(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
    if (num_qubits == 0) throw HybridError("observable must act on at least one qubit");
    for (const auto& term : terms_) {
        if (term.paulis.size() != num_qubits) {
            throw HybridError("pauli string '" + term.paulis + "' has length " + std::to_string(term.paulis.size()) +
                              ", expected " + std::to_string(num_qubits));
        }
        if (term.paulis.find_first_not_of("IXYZ") != std::string::npos) {
            throw HybridError("pauli string '" + term.paulis + "' may only contain I, X, Y, Z");
        }
        if (!std::isfinite(term.coefficient)) throw HybridError("observable coefficients must be finite");
    }
}

double expectation(const Statevector& state, const Observable& obs) {
    if (state.num_qubits() != obs.num_qubits()) {
        throw HybridError("observable acts on " + std::to_string(obs.num_qubits()) + " qubits, state has " +
                          std::to_string(state.num_qubits()));
    }
    const auto& amps = state.amplitudes();
    const std::size_t dim = state.dimension();
    std::complex<double> total = 0.0;
    for (const auto& term : obs.terms()) {
        std::size_t flip = 0, sign = 0, num_y = 0;
        for (std::size_t q = 0; q < term.paulis.size(); ++q) {
            const std::size_t bit = std::size_t{1} << q;
            switch (term.paulis[q]) {
            case 'X': flip |= bit; break;
            case 'Y': flip |= bit; sign |= bit; ++num_y; break;
            case 'Z': sign |= bit; break;
            default: break;
            }
        }
        // P|x> = i^{#Y} (-1)^{popcount(x & sign)} |x ^ flip>
        static constexpr std::complex<double> kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const std::complex<double> global = kPowI[num_y % 4];
        std::complex<double> acc = 0.0;
        for (std::size_t x = 0; x < dim; ++x) {
            const auto ax = amps(static_cast<Eigen::Index>(x));
            if (ax == 0.0) continue;
            const double parity = (std::popcount(x & sign) & 1U) ? -1.0 : 1.0;
            acc += std::conj(amps(static_cast<Eigen::Index>(x ^ flip))) * ax * parity;
        }
        total += term.coefficient * global * acc;
    }
    if (std::abs(total.imag()) > 1e-9) {
        throw HybridError("expectation has imaginary residue " + std::to_string(total.imag()));
    }
    return total.real();
}

double expectation(const Circuit& circuit, const Observable& obs) {
    if (circuit.num_qubits() != obs.num_qubits()) {
        throw HybridError("observable acts on " + std::to_string(obs.num_qubits()) + " qubits, circuit has " +
                          std::to_string(circuit.num_qubits()));
    }
    return expectation(run_statevector(circuit), obs);
}

Graph::Graph(std::size_t num_vertices, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : num_vertices_(num_vertices) {
    if (num_vertices == 0) throw HybridError("graph must have at least one vertex");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edges) {
        if (a >= num_vertices || b >= num_vertices) {
            throw HybridError("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
        }
        if (a == b) throw HybridError("self-loop on vertex " + std::to_string(a));
        if (a > b) std::swap(a, b);
        if (!seen.emplace(a, b).second) {
            throw HybridError("duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    }
    edges_.assign(seen.begin(), seen.end());
}

std::size_t cut_value(const Graph& g, const std::string& assignment) {
    if (assignment.size() != g.num_vertices()) throw HybridError("assignment length does not match graph");
    std::size_t cut = 0;
    for (const auto& [a, b] : g.edges()) cut += assignment[a] != assignment[b];
    return cut;
}

MaxCut maxcut_bruteforce(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n > kMaxBruteforceVertices) {
        throw HybridError("brute force limited to " + std::to_string(kMaxBruteforceVertices) + " vertices");
    }
    // Counter bit (n-1-k) is vertex k, so counting up walks bitstrings in
    // lexicographic order and the first strict maximum is the smallest.
    MaxCut best{0, std::string(n, '0')};
    bool found = false;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        std::size_t cut = 0;
        for (const auto& [a, b] : g.edges()) cut += ((m >> (n - 1 - a)) ^ (m >> (n - 1 - b))) & 1U;
        if (!found || cut > best.value) {
            found = true;
            best.value = cut;
            for (std::size_t k = 0; k < n; ++k) best.assignment[k] = ((m >> (n - 1 - k)) & 1U) ? '1' : '0';
        }
    }
    return best;
}

Observable maxcut_observable(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<PauliTerm> terms;
    if (!g.edges().empty()) terms.push_back({0.5 * static_cast<double>(g.edges().size()), std::string(n, 'I')});
    for (const auto& [a, b] : g.edges()) {
        std::string p(n, 'I');
        p[a] = p[b] = 'Z';
        terms.push_back({-0.5, p});
    }
    return Observable(n, std::move(terms));
}

Circuit build_qaoa_circuit(const Graph& g, const std::vector<double>& gammas, const std::vector<double>& betas,
                           bool measure) {
    if (gammas.empty() || gammas.size() != betas.size()) {
        throw HybridError("QAOA needs p >= 1 and equally many gammas and betas");
    }
    const std::size_t n = g.num_vertices();
    Circuit c(n, measure ? n : 0);
    for (std::size_t q = 0; q < n; ++q) c.append(gates::h(q));
    for (std::size_t layer = 0; layer < gammas.size(); ++layer) {
        for (const auto& [i, j] : g.edges()) {
            c.append(gates::cx(i, j));
            c.append(gates::rz(j, 2.0 * gammas[layer]));
            c.append(gates::cx(i, j));
        }
        for (std::size_t q = 0; q < n; ++q) c.append(gates::rx(q, 2.0 * betas[layer]));
    }
    if (measure) {
        for (std::size_t q = 0; q < n; ++q) c.append(Measure{q, q});
    }
    return c;
}

std::size_t CoordinateDescent::minimize(const std::function<double(const std::vector<double>&)>& f,
                                        std::vector<double>& params, double& value,
                                        const std::function<void(const std::vector<double>&, double)>& on_improve) const {
    std::size_t evaluations = 1;
    value = f(params);
    on_improve(params, value);
    double step = initial_step;
    while (step >= min_step) {
        bool improved = false;
        for (std::size_t k = 0; k < params.size(); ++k) {
            for (double delta : {step, -step}) {
                std::vector<double> trial = params;
                trial[k] += delta;
                const double v = f(trial);
                ++evaluations;
                if (v < value) {
                    params = std::move(trial);
                    value = v;
                    on_improve(params, value);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step /= 2.0;
    }
    return evaluations;
}

VariationalResult run_qaoa(const Graph& g, const QaoaOptions& options) {
    const std::size_t p = options.layers;
    if (p == 0) throw HybridError("QAOA needs at least one layer");
    if (p > 2) throw HybridError("grid search supports p <= 2; pass explicit parameters for deeper circuits");
    if (options.grid < 2) throw HybridError("grid needs at least 2 points per axis");
    if (options.shots == 0) throw HybridError("shots must be at least 1");

    const Observable cost = maxcut_observable(g);
    auto evaluate = [&](const std::vector<double>& params) {
        const std::vector<double> gammas(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(p));
        const std::vector<double> betas(params.begin() + static_cast<std::ptrdiff_t>(p), params.end());
        return cost.empty() ? 0.0 : expectation(build_qaoa_circuit(g, gammas, betas), cost);
    };

    VariationalResult result;
    const std::size_t dims = 2 * p;
    const double spacing = std::numbers::pi / static_cast<double>(options.grid);
    std::vector<std::size_t> index(dims, 0);
    bool have_best = false;
    while (true) {
        std::vector<double> params(dims);
        for (std::size_t k = 0; k < dims; ++k) params[k] = spacing * static_cast<double>(index[k]);
        const double v = evaluate(params);
        ++result.evaluations;
        if (!have_best || v > result.best_value) {
            have_best = true;
            result.best_value = v;
            result.best_parameters = params;
            result.history.emplace_back(params, v);
        }
        std::size_t k = dims;
        while (k > 0 && ++index[k - 1] == options.grid) index[--k] = 0;
        if (k == 0) break;
    }

    // Refine by minimizing -<C>.
    std::vector<double> params = result.best_parameters;
    double negated = 0.0;
    const CoordinateDescent descent{spacing, 1e-3};
    result.evaluations += descent.minimize(
        [&](const std::vector<double>& x) { return -evaluate(x); }, params, negated,
        [&](const std::vector<double>& x, double v) {
            if (-v > result.best_value) {
                result.best_value = -v;
                result.best_parameters = x;
                result.history.emplace_back(x, -v);
            }
        });

    const std::vector<double> gammas(result.best_parameters.begin(),
                                     result.best_parameters.begin() + static_cast<std::ptrdiff_t>(p));
    const std::vector<double> betas(result.best_parameters.begin() + static_cast<std::ptrdiff_t>(p),
                                    result.best_parameters.end());
    const Histogram hist = sample(measurement_distribution(build_qaoa_circuit(g, gammas, betas, true)),
                                  options.shots, options.seed);
    for (const auto& [bits, count] : hist.counts) {
        const std::size_t cut = cut_value(g, bits);
        if (!result.best_cut || cut > *result.best_cut) {
            result.best_cut = cut;
            result.best_bitstring = bits;
        }
    }
    result.histogram = hist;
    return result;
}

ParameterizedCircuit vqe_ansatz(std::size_t num_qubits, std::size_t reps) {
    ParameterizedCircuit pc(num_qubits);
    std::size_t next = 0;
    auto ry_layer = [&] {
        for (std::size_t q = 0; q < num_qubits; ++q) {
            pc.append_rotation(GateKind::RY, q, "theta_" + std::to_string(next++));
        }
    };
    for (std::size_t r = 0; r < reps; ++r) {
        ry_layer();
        for (std::size_t q = 0; q + 1 < num_qubits; ++q) pc.append(gates::cx(q, q + 1));
    }
    ry_layer();
    return pc;
}

VariationalResult run_vqe(const Observable& obs, const VqeOptions& options) {
    if (obs.empty()) throw HybridError("observable has no terms");
    if (obs.num_qubits() > kMaxVqeQubits) {
        throw HybridError("VQE limited to " + std::to_string(kMaxVqeQubits) + " qubits");
    }
    if (options.reps == 0) throw HybridError("ansatz needs at least one repetition");
    if (options.restarts == 0) throw HybridError("need at least one restart");

    const ParameterizedCircuit ansatz = vqe_ansatz(obs.num_qubits(), options.reps);
    auto evaluate = [&](const std::vector<double>& params) {
        return expectation(bind_parameters(ansatz, params), obs);
    };

    VariationalResult result;
    std::mt19937_64 rng(options.seed);
    const CoordinateDescent descent{std::numbers::pi / 4, 1e-3};
    bool have_best = false;
    for (std::size_t restart = 0; restart < options.restarts; ++restart) {
        std::vector<double> params(ansatz.parameters().size());
        for (double& x : params) x = 2.0 * std::numbers::pi * unit_interval(rng());
        double value = 0.0;
        result.evaluations += descent.minimize(evaluate, params, value, [&](const std::vector<double>& x, double v) {
            result.history.emplace_back(x, v);
        });
        if (!have_best || value < result.best_value ||
            (value == result.best_value && params < result.best_parameters)) {
            have_best = true;
            result.best_value = value;
            result.best_parameters = params;
        }
    }
    return result;
}

} // namespace vaql
