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
#include "testdata.hpp"
#include "vaql/error.hpp"
#include "vaql/frontend.hpp"
#include "vaql/serialize.hpp"
#include "vaql/transpiler.hpp"

using namespace vaql;

namespace {

std::vector<BackendDescriptor> registry() { return parse_registry(testdata::read("registry.json")); }

const BackendDescriptor& find(const std::vector<BackendDescriptor>& reg, const std::string& id) {
    for (const auto& b : reg)
        if (b.id == id) return b;
    throw std::runtime_error("no backend " + id);
}

BackendDescriptor line3() {
    BackendDescriptor b;
    b.id = "line3";
    b.vendor = "v";
    b.num_qubits = 3;
    b.native_gates = {GateKind::RX, GateKind::RZ, GateKind::CX};
    b.coupling_map = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
    return b;
}

Circuit widen(const Circuit& c, std::size_t width) {
    return Circuit::from_unchecked(width, 0, gates_only(c).instructions());
}

/// Distance between the routed circuit and P_final * U_in * P_initial^-1.
double layout_gap(const Circuit& in, const Circuit& out, const Layout& layout) {
    const std::size_t width = out.num_qubits();
    const auto u_in = oracle::unitary(widen(in, width));
    const auto p0 = oracle::permutation(layout.initial);
    const auto p1 = oracle::permutation(layout.final);
    const oracle::Mat expected = p1 * u_in * p0.adjoint();
    return oracle::phase_distance(oracle::unitary(gates_only(out)), expected);
}

void expect_native(const Circuit& c, const BackendDescriptor& b) {
    for (const auto& instr : c.instructions()) {
        if (const auto* g = std::get_if<Gate>(&instr)) {
            ASSERT_TRUE(b.is_native(g->kind)) << mnemonic(g->kind);
            if (arity(g->kind) == 2) ASSERT_TRUE(b.has_edge(g->qubits[0], g->qubits[1]));
        }
    }
}

bool is_permutation(const std::vector<std::size_t>& v) {
    std::vector<std::size_t> s = v;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != i) return false;
    return true;
}

} // namespace

TEST(Transpiler, RuleTableVerifiedIndependently) {
    std::vector<RewriteRule> rules = decomposition_rules();
    rules.push_back(cx_direction_reversal());
    ASSERT_GE(rules.size(), 14u);
    for (const auto& rule : rules) {
        for (double theta : {0.0, 0.37, -2.1, oracle::kPi}) {
            const std::size_t n = arity(rule.source);
            const std::array<std::size_t, 2> qs{0, 1};
            const Gate g = gates::make(rule.source, {qs.data(), n}, theta);
            Circuit src(n, 0), dst(n, 0);
            src.append(g);
            for (const auto& step : expand_rule(rule, g)) dst.append(step);
            ASSERT_LT(oracle::phase_distance(oracle::unitary(dst), oracle::unitary(src)), 1e-12) << rule.name;
        }
    }
}

TEST(Transpiler, DecomposeExamples) {
    const std::set<GateKind> native{GateKind::RX, GateKind::RZ, GateKind::CX};
    Circuit h(1, 0);
    h.append(gates::h(0));
    const Circuit dh = decompose_to_native(h, native);
    EXPECT_EQ(dh.size(), 3u);
    EXPECT_LT(oracle::phase_distance(oracle::unitary(dh), oracle::unitary(h)), 1e-12);

    Circuit rz(1, 0);
    rz.append(gates::rz(0, 0.5));
    EXPECT_EQ(decompose_to_native(rz, native), rz);

    Circuit sw(2, 0);
    sw.append(gates::swap(0, 1));
    Circuit expected(2, 0);
    expected.append(gates::cx(0, 1)).append(gates::cx(1, 0)).append(gates::cx(0, 1));
    EXPECT_EQ(decompose_to_native(sw, native), expected);

    EXPECT_THROW(decompose_to_native(h, {GateKind::RX, GateKind::CX}), TranspileError);
    EXPECT_THROW(require_universal({GateKind::RX, GateKind::RZ}), TranspileError);
}

TEST(TranspilerProperty, DecomposeAllKindsToBothTargets) {
    std::mt19937_64 rng(99);
    const std::set<GateKind> cx_set{GateKind::RX, GateKind::RZ, GateKind::CX};
    const std::set<GateKind> cz_set{GateKind::RX, GateKind::RZ, GateKind::CZ};
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit c = oracle::random_circuit(rng, 3, 12, false);
        for (const auto* native : {&cx_set, &cz_set}) {
            const Circuit d = decompose_to_native(c, *native);
            for (const auto& i : d.instructions()) ASSERT_TRUE(native->count(std::get<Gate>(i).kind));
            ASSERT_LT(oracle::phase_distance(oracle::unitary(d), oracle::unitary(c)), 1e-9);
        }
    }
}

TEST(Transpiler, RoutingOnLine) {
    Circuit c(3, 0);
    c.append(gates::cx(0, 2));
    const auto r = place_and_route(c, line3(), Placement::identity);
    EXPECT_EQ(r.swap_count, 1u);
    // one SWAP as three CX then the CX between physical 1 and 2
    ASSERT_EQ(r.circuit.size(), 4u);
    EXPECT_EQ(std::get<Gate>(r.circuit.instructions()[3]), gates::cx(1, 2));
    EXPECT_EQ(r.layout.final, (std::vector<std::size_t>{1, 0, 2}));
    EXPECT_EQ(r.layout.initial, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_LT(layout_gap(c, r.circuit, r.layout), 1e-12);

    Circuit adj(3, 0);
    adj.append(gates::cx(0, 1));
    const auto a = place_and_route(adj, line3());
    EXPECT_EQ(a.swap_count, 0u);
    EXPECT_EQ(a.circuit, adj);
    EXPECT_EQ(a.layout.initial, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(a.layout.final, a.layout.initial);
}

TEST(Transpiler, GreedyPlacementAvoidsSwap) {
    Circuit c(3, 0);
    c.append(gates::cx(0, 2)).append(gates::cx(0, 2));
    const auto r = place_and_route(c, line3(), Placement::greedy);
    EXPECT_EQ(r.swap_count, 0u);
    EXPECT_LT(layout_gap(c, r.circuit, r.layout), 1e-12);
}

TEST(Transpiler, DisconnectedCouplingFails) {
    auto b = line3();
    b.coupling_map = {{0, 1}, {1, 0}};
    Circuit c(3, 0);
    c.append(gates::cx(0, 2));
    try {
        place_and_route(c, b, Placement::identity);
        FAIL();
    } catch (const TranspileError& e) {
        EXPECT_EQ(e.stage(), TranspileStage::routing);
    }
}

TEST(Transpiler, DirectionReversal) {
    const auto reg = registry();
    const auto& toy5 = find(reg, "toy5");
    Circuit c(2, 0);
    c.append(gates::cx(1, 0));
    const auto p = transpile(c, toy5, Placement::identity);
    expect_native(p.circuit, toy5);
    EXPECT_LT(layout_gap(c, p.circuit, p.layout), 1e-9);
}

TEST(Transpiler, TranspileExamples) {
    const auto reg = registry();
    BackendDescriptor b = find(reg, "toy5");
    b.num_qubits = 2;
    b.coupling_map = {{0, 1}};
    const Circuit bell = parse_vaql(testdata::read("bell.vaql"));
    const auto p = transpile(bell, b);
    expect_native(p.circuit, b);
    EXPECT_LT(layout_gap(bell, p.circuit, p.layout), 1e-9);
    EXPECT_EQ(p.backend_id, "toy5");
    EXPECT_EQ(p.circuit.measure_count(), 2u);

    const auto e = transpile(Circuit(2, 0), find(reg, "ring4"));
    EXPECT_TRUE(e.circuit.empty());
    EXPECT_EQ(e.swap_count, 0u);
    EXPECT_EQ(e.layout.logical_initial().size(), 2u);
    EXPECT_EQ(e.layout.initial, (std::vector<std::size_t>{0, 1, 2, 3}));

    try {
        transpile(Circuit(3, 0), b);
        FAIL();
    } catch (const TranspileError& err) {
        EXPECT_EQ(err.stage(), TranspileStage::placement);
        EXPECT_NE(std::string(err.what()).find("insufficient qubits"), std::string::npos);
    }
}

TEST(Transpiler, MeasuresFollowFinalLayout) {
    const auto reg = registry();
    Circuit c(3, 3);
    c.append(gates::cx(0, 2)).append(gates::h(1)).append(Measure{0, 0}).append(Measure{1, 2}).append(Measure{2, 1});
    auto b = line3();
    const auto p = transpile(c, b, Placement::identity);
    std::map<std::size_t, std::size_t> cbit_to_phys;
    for (const auto& i : p.circuit.instructions())
        if (const auto* m = std::get_if<Measure>(&i)) ASSERT_TRUE(cbit_to_phys.emplace(m->cbit, m->qubit).second);
    ASSERT_EQ(cbit_to_phys.size(), 3u);
    EXPECT_EQ(cbit_to_phys[0], p.layout.final[0]);
    EXPECT_EQ(cbit_to_phys[2], p.layout.final[1]);
    EXPECT_EQ(cbit_to_phys[1], p.layout.final[2]);
}

TEST(Transpiler, SerializesLogicalLayout) {
    const auto reg = registry();
    const Circuit bell = parse_vaql(testdata::read("bell.vaql"));
    const Json j = to_json(transpile(bell, find(reg, "toy5")));
    EXPECT_EQ(j["backend_id"], "toy5");
    EXPECT_EQ(j["initial_layout"], Json::array({0, 1}));
    EXPECT_EQ(j["swap_count"], 0);
    EXPECT_NO_THROW(parse_vaql(j["circuit"].get<std::string>()));
}

TEST(TranspilerProperty, NativeAndSoundOnFixtureBackends) {
    const auto reg = registry();
    std::mt19937_64 rng(4242);
    for (const char* id : {"toy5", "ring4"}) {
        std::size_t swaps = 0;
        const auto& b = find(reg, id);
        for (int trial = 0; trial < 200; ++trial) {
            const Circuit c = oracle::random_circuit(rng, b.num_qubits, 30, true);
            const auto p = transpile(c, b);
            expect_native(p.circuit, b);
            ASSERT_FALSE(check_native(p.circuit, b));
            ASSERT_TRUE(is_permutation(p.layout.initial));
            ASSERT_TRUE(is_permutation(p.layout.final));
            ASSERT_EQ(p.circuit.measure_count(), c.measure_count());
            ASSERT_LT(layout_gap(c, p.circuit, p.layout), 1e-9) << id << " trial " << trial << "\n"
                                                                << print_vaql(c);
            // measures sit behind all gates, retargeted through the final layout
            std::map<std::size_t, std::size_t> in_measures;
            for (const auto& i : c.instructions())
                if (const auto* m = std::get_if<Measure>(&i)) in_measures[m->cbit] = m->qubit;
            for (const auto& i : p.circuit.instructions())
                if (const auto* m = std::get_if<Measure>(&i))
                    ASSERT_EQ(m->qubit, p.layout.final[in_measures.at(m->cbit)]);
            swaps += p.swap_count;
        }
        // routing must be exercised, not just adjacent gates
        EXPECT_GT(swaps, 50u) << id;
    }
}

TEST(TranspilerProperty, NoSwapsWhenAlreadyAdjacent) {
    const auto reg = registry();
    const auto& ring = find(reg, "ring4");
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c(4, 0);
        for (int k = 0; k < 10; ++k) {
            const std::size_t a = rng() % 4;
            c.append(gates::cz(a, (a + 1) % 4));
        }
        EXPECT_EQ(transpile(c, ring, Placement::identity).swap_count, 0u);
    }
}
