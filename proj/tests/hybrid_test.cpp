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

#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "vaql/error.hpp"
#include "vaql/hybrid.hpp"
#include "vaql/serialize.hpp"
#include "vaql/simulator.hpp"

using namespace vaql;

namespace {

Graph cycle4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

/// Dense sum of weighted Pauli matrices.
oracle::Mat dense(const Observable& obs) {
    const auto dim = Eigen::Index{1} << obs.num_qubits();
    oracle::Mat m = oracle::Mat::Zero(dim, dim);
    for (const auto& t : obs.terms()) m += t.coefficient * oracle::pauli_matrix(t.paulis);
    return m;
}

/// Exhaustive max cut by direct enumeration, written independently of the library.
std::size_t brute_cut(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::size_t best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::size_t cut = 0;
        for (auto [a, b] : edges) cut += ((mask >> a) & 1) != ((mask >> b) & 1);
        best = std::max(best, cut);
    }
    return best;
}

} // namespace

TEST(Hybrid, BindParameters) {
    ParameterizedCircuit pc(1);
    pc.append_rotation(GateKind::RY, 0, "theta");
    Circuit expected(1, 0);
    expected.append(gates::ry(0, 0.0));
    EXPECT_EQ(bind_parameters(pc, {{"theta", 0.0}}), expected);

    ParameterizedCircuit two(2);
    two.append_rotation(GateKind::RX, 0, "a").append(gates::cx(0, 1)).append_rotation(GateKind::RZ, 1, "b");
    EXPECT_EQ(two.parameters(), (std::vector<std::string>{"a", "b"}));
    const Circuit c = bind_parameters(two, {{"a", 0.1}, {"b", 0.2}});
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(std::get<Gate>(c.instructions()[0]), gates::rx(0, 0.1));
    EXPECT_EQ(std::get<Gate>(c.instructions()[1]), gates::cx(0, 1));
    EXPECT_EQ(std::get<Gate>(c.instructions()[2]), gates::rz(1, 0.2));
    EXPECT_EQ(bind_parameters(two, std::vector<double>{0.1, 0.2}), c);

    EXPECT_THROW(bind_parameters(pc, {{"theta", 0.0}, {"phi", 1.0}}), HybridError);
    EXPECT_THROW(bind_parameters(two, {{"a", 0.1}}), HybridError);
    EXPECT_THROW(bind_parameters(two, std::vector<double>{0.1}), HybridError);
    EXPECT_THROW(pc.append_rotation(GateKind::H, 0, "x"), HybridError);
    EXPECT_THROW(pc.append_rotation(GateKind::RX, 4, "x"), CircuitError);
}

TEST(Hybrid, SharedSlotBindsEverywhere) {
    ParameterizedCircuit pc(2);
    pc.append_rotation(GateKind::RX, 0, "t").append_rotation(GateKind::RX, 1, "t");
    EXPECT_EQ(pc.parameters().size(), 1u);
    const Circuit c = bind_parameters(pc, {{"t", 0.5}});
    EXPECT_EQ(std::get<Gate>(c.instructions()[1]), gates::rx(1, 0.5));
}

TEST(Hybrid, ExpectationExamples) {
    const Observable z(1, {{1.0, "Z"}});
    EXPECT_NEAR(expectation(Circuit(1, 0), z), 1.0, 1e-12);
    Circuit h(1, 0);
    h.append(gates::h(0));
    EXPECT_NEAR(expectation(h, z), 0.0, 1e-12);
    Circuit bell(2, 0);
    bell.append(gates::h(0)).append(gates::cx(0, 1));
    EXPECT_NEAR(expectation(bell, Observable(2, {{1.0, "ZZ"}})), 1.0, 1e-12);
    EXPECT_NEAR(expectation(bell, Observable(2, {{1.0, "XX"}, {-1.0, "YY"}})), 2.0, 1e-12);

    EXPECT_THROW(expectation(bell, z), HybridError);
    Circuit m(1, 1);
    m.append(Measure{0, 0});
    EXPECT_THROW(expectation(m, z), Error);
}

TEST(Hybrid, ObservableValidation) {
    EXPECT_THROW(Observable(2, {{1.0, "Z"}}), HybridError);
    EXPECT_THROW(Observable(1, {{1.0, "Q"}}), HybridError);
    EXPECT_THROW(Observable(1, {{std::nan(""), "Z"}}), HybridError);
}

TEST(HybridProperty, ExpectationMatchesDenseOracle) {
    std::mt19937_64 rng(17);
    const char letters[] = "IXYZ";
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit c = oracle::random_circuit(rng, 4, 25, false);
        const std::size_t n = c.num_qubits();
        std::vector<PauliTerm> terms;
        for (int t = 0; t < 4; ++t) {
            std::string s(n, 'I');
            for (auto& ch : s) ch = letters[rng() % 4];
            terms.push_back({std::uniform_real_distribution<double>(-2, 2)(rng), s});
        }
        const Observable obs(n, terms);
        const Eigen::VectorXcd psi = oracle::unitary(c).col(0);
        const double expected = std::real(psi.dot(dense(obs) * psi));
        ASSERT_NEAR(expectation(c, obs), expected, 1e-10);
    }
}

TEST(Hybrid, GraphValidation) {
    EXPECT_THROW(Graph(2, {{0, 0}}), HybridError);
    EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), HybridError);
    EXPECT_THROW(Graph(2, {{0, 2}}), HybridError);
    const Graph g(3, {{2, 0}, {1, 0}});
    EXPECT_EQ(g.edges(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}}));
}

TEST(Hybrid, MaxCutBruteforce) {
    const auto one = maxcut_bruteforce(Graph(2, {{0, 1}}));
    EXPECT_EQ(one.value, 1u);
    EXPECT_EQ(one.assignment, "01");

    // triangle: enumerating 000..111, the first 2-cut is 001
    const auto tri = maxcut_bruteforce(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    EXPECT_EQ(tri.value, 2u);
    EXPECT_EQ(tri.assignment, "001");

    const auto c4 = maxcut_bruteforce(cycle4());
    EXPECT_EQ(c4.value, 4u);
    EXPECT_EQ(c4.assignment, "0101");
    EXPECT_EQ(cut_value(cycle4(), "0101"), 4u);
    EXPECT_EQ(cut_value(cycle4(), "0011"), 2u);

    EXPECT_THROW(maxcut_bruteforce(Graph(25, {})), HybridError);
}

TEST(HybridProperty, MaxCutAgreesWithEnumeration) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (rng() % 2) edges.emplace_back(a, b);
        const Graph g(n, edges);
        const auto m = maxcut_bruteforce(g);
        ASSERT_EQ(m.value, brute_cut(n, edges));
        ASSERT_EQ(cut_value(g, m.assignment), m.value);
    }
}

TEST(Hybrid, QaoaCircuitShape) {
    const Circuit c = build_qaoa_circuit(cycle4(), {0.3}, {0.2});
    EXPECT_EQ(c.gate_count(), 20u);
    const Circuit c2 = build_qaoa_circuit(cycle4(), {0.3, 0.1}, {0.2, 0.4});
    EXPECT_EQ(c2.gate_count(), 4u + 2 * 16u);
    EXPECT_THROW(build_qaoa_circuit(cycle4(), {}, {}), HybridError);
    EXPECT_THROW(build_qaoa_circuit(cycle4(), {0.1}, {0.1, 0.2}), HybridError);
    EXPECT_EQ(build_qaoa_circuit(cycle4(), {0.3}, {0.2}, true).measure_count(), 4u);

    const Graph edge(2, {{0, 1}});
    EXPECT_NEAR(expectation(build_qaoa_circuit(edge, {0.0}, {0.0}), maxcut_observable(edge)), 0.5, 1e-12);
}

TEST(Hybrid, CostLayerIsZZPhase) {
    // CX RZ(2g) CX equals exp(-i g ZZ), i.e. exp(-i (-2g) C) with C = (1 - ZZ)/2.
    for (double g : {0.0, 0.4, 1.3, -2.0}) {
        Circuit c(2, 0);
        c.append(gates::cx(0, 1)).append(gates::rz(1, 2 * g)).append(gates::cx(0, 1));
        oracle::Mat target = oracle::Mat::Zero(4, 4);
        for (int idx = 0; idx < 4; ++idx) {
            const double zz = ((idx & 1) == ((idx >> 1) & 1)) ? 1.0 : -1.0;
            target(idx, idx) = std::exp(std::complex<double>(0, 2 * g * (1 - zz) / 2));
        }
        EXPECT_LT(oracle::phase_distance(oracle::unitary(c), target), 1e-12);
    }
}

TEST(HybridProperty, TwoEvaluationPathsAgree) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (rng() % 2) edges.emplace_back(a, b);
        const Graph g(n, edges);
        const double gamma = std::uniform_real_distribution<double>(0, 3)(rng);
        const double beta = std::uniform_real_distribution<double>(0, 3)(rng);
        const double direct = expectation(build_qaoa_circuit(g, {gamma}, {beta}), maxcut_observable(g));
        const auto dist = measurement_distribution(build_qaoa_circuit(g, {gamma}, {beta}, true));
        double sampled = 0;
        for (const auto& [bits, p] : dist.probabilities) sampled += p * static_cast<double>(cut_value(g, bits));
        ASSERT_NEAR(direct, sampled, 1e-9);
    }
}

TEST(Hybrid, QaoaCycle) {
    const auto r = run_qaoa(cycle4(), {1, 32, 1024, 7});
    EXPECT_GE(r.best_value, 2.9);
    EXPECT_LE(r.best_value, 3.0 + 1e-9);
    ASSERT_TRUE(r.best_cut);
    EXPECT_EQ(*r.best_cut, 4u);
    EXPECT_EQ(cut_value(cycle4(), *r.best_bitstring), 4u);
    ASSERT_TRUE(r.histogram);
    EXPECT_EQ(r.histogram->shots, 1024u);
    double best = -1;
    for (const auto& [p, v] : r.history) {
        ASSERT_GE(v, -1e-12);
        ASSERT_LE(v, 4 + 1e-12);
        best = std::max(best, v);
    }
    EXPECT_DOUBLE_EQ(best, r.best_value);
    EXPECT_GE(r.evaluations, 32u * 32u);
}

TEST(Hybrid, QaoaSmallCases) {
    const auto edge = run_qaoa(Graph(2, {{0, 1}}), {1, 32, 256, 1});
    EXPECT_GE(edge.best_value, 0.99);
    EXPECT_EQ(*edge.best_cut, 1u);
    const auto none = run_qaoa(Graph(3, {}), {1, 8, 64, 1});
    EXPECT_NEAR(none.best_value, 0.0, 1e-12);
    EXPECT_EQ(*none.best_cut, 0u);
    EXPECT_THROW(run_qaoa(cycle4(), {3, 8, 64, 1}), HybridError);
    EXPECT_THROW(run_qaoa(cycle4(), {1, 1, 64, 1}), HybridError);
}

TEST(Hybrid, QaoaDeterministic) {
    const auto a = run_qaoa(cycle4(), {1, 8, 128, 3});
    const auto b = run_qaoa(cycle4(), {1, 8, 128, 3});
    EXPECT_EQ(to_json(a), to_json(b));
}

TEST(Hybrid, VqeExamples) {
    const auto z = run_vqe(Observable(1, {{1.0, "Z"}}), {1, 3, 0});
    EXPECT_NEAR(z.best_value, -1.0, 1e-3);
    const auto zz = run_vqe(Observable(2, {{1.0, "ZZ"}}), {1, 3, 0});
    EXPECT_LE(zz.best_value, -0.999);
    const auto id = run_vqe(Observable(2, {{2.0, "II"}}), {1, 2, 0});
    EXPECT_NEAR(id.best_value, 2.0, 1e-12);
    EXPECT_THROW(run_vqe(Observable(1, {}), {}), HybridError);
    EXPECT_THROW(run_vqe(Observable(13, {{1.0, std::string(13, 'Z')}}), {}), HybridError);

    double best = 1e9;
    for (const auto& [p, v] : zz.history) best = std::min(best, v);
    EXPECT_DOUBLE_EQ(best, zz.best_value);
    EXPECT_EQ(to_json(zz), to_json(run_vqe(Observable(2, {{1.0, "ZZ"}}), {1, 3, 0})));
}

TEST(Hybrid, AnsatzShape) {
    const auto pc = vqe_ansatz(3, 2);
    // 2 reps of (3 RY + 2 CX) + final 3 RY
    EXPECT_EQ(pc.body().size(), 2u * 5u + 3u);
    EXPECT_EQ(pc.parameters().size(), 9u);
}

TEST(HybridProperty, VqeRespectsVariationalBound) {
    std::mt19937_64 rng(41);
    const char letters[] = "IXYZ";
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        std::vector<PauliTerm> terms;
        for (int t = 0; t < 3; ++t) {
            std::string s(n, 'I');
            for (auto& ch : s) ch = letters[rng() % 4];
            terms.push_back({std::uniform_real_distribution<double>(-1, 1)(rng), s});
        }
        const Observable obs(n, terms);
        const double lo = oracle::min_eigenvalue(dense(obs));
        const auto r = run_vqe(obs, {2, 2, static_cast<std::uint64_t>(trial)});
        ASSERT_GE(r.best_value, lo - 1e-6) << trial;
    }
}

TEST(Hybrid, JsonInputs) {
    const Graph g = graph_from_json(Json::parse(R"({"n": 3, "edges": [[0, 1], [1, 2]]})"));
    EXPECT_EQ(g.num_vertices(), 3u);
    EXPECT_EQ(g.edges().size(), 2u);
    EXPECT_THROW(graph_from_json(Json::parse(R"({"n": 3})")), HybridError);
    const Observable o = observable_from_json(Json::parse(R"([[0.5, "ZI"], [-1, "XX"]])"));
    EXPECT_EQ(o.num_qubits(), 2u);
    EXPECT_EQ(o.terms()[1].coefficient, -1.0);
    EXPECT_THROW(observable_from_json(Json::parse(R"([[0.5, "Z"], [1, "XX"]])")), HybridError);
}
