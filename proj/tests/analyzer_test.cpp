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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "testdata.hpp"
#include "vaql/analyzer.hpp"
#include "vaql/error.hpp"
#include "vaql/frontend.hpp"
#include "vaql/optimizer.hpp"
#include "vaql/serialize.hpp"
#include "vaql/transpiler.hpp"

using namespace vaql;

namespace {

Circuit bell() { return parse_vaql(testdata::read("bell.vaql")); }

std::vector<BackendDescriptor> registry() { return parse_registry(testdata::read("registry.json")); }

BackendDescriptor toy(double e1, double e2, double er, double cost = 1.0, std::string id = "toy") {
    BackendDescriptor b;
    b.id = std::move(id);
    b.vendor = "v";
    b.num_qubits = 2;
    b.native_gates = {GateKind::RX, GateKind::RZ, GateKind::CX};
    b.coupling_map = {{0, 1}, {1, 0}};
    b.error_1q = e1;
    b.error_2q = e2;
    b.readout_error = er;
    b.cost_per_shot = cost;
    return b;
}

} // namespace

TEST(Analyzer, BellProfile) {
    const auto p = profile(bell());
    EXPECT_EQ(p.num_qubits, 2u);
    EXPECT_EQ(p.num_cbits, 2u);
    EXPECT_EQ(p.depth, 3u);
    EXPECT_EQ(p.gate_histogram, (std::map<std::string, std::size_t>{{"h", 1}, {"cx", 1}, {"measure", 2}}));
    EXPECT_EQ(p.t_count, 0u);
    EXPECT_EQ(p.two_qubit_count, 1u);
    EXPECT_EQ(p.measure_count, 2u);
}

TEST(Analyzer, EmptyAndTCountProfiles) {
    const auto e = profile(Circuit(1, 0));
    EXPECT_EQ(e.depth, 0u);
    EXPECT_TRUE(e.gate_histogram.empty());

    Circuit c(2, 0);
    c.append(gates::t(0)).append(gates::tdg(0)).append(gates::t(1));
    const auto p = profile(c);
    EXPECT_EQ(p.t_count, 3u);
    EXPECT_EQ(p.depth, 2u);
}

TEST(AnalyzerProperty, ProfileConsistency) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Circuit c = oracle::random_circuit(rng, 5, 30, true);
        const auto p = profile(c);
        std::size_t total = 0;
        for (const auto& [k, v] : p.gate_histogram) total += v;
        ASSERT_EQ(total, c.size());
        ASSERT_LE(p.depth, c.size());
        ASSERT_LE(p.t_count, c.gate_count());
        const auto o = profile(optimize(c).circuit);
        ASSERT_LE(o.num_qubits, p.num_qubits);
        ASSERT_LE(optimize(c).circuit.gate_count(), c.gate_count());
    }
}

TEST(Analyzer, EstimateSuccess) {
    const auto b = toy(0.001, 0.01, 0.02);
    EXPECT_DOUBLE_EQ(estimate_success(Circuit(2, 0), b), 1.0);

    Circuit c(2, 2);
    c.append(gates::rz(0, 0.1)).append(gates::rx(1, 0.2)).append(gates::cx(0, 1));
    c.append(Measure{0, 0}).append(Measure{1, 1});
    // 0.999^2 * 0.99 * 0.98^2
    EXPECT_NEAR(estimate_success(c, b), 0.948895358796, 1e-12);

    Circuit one(1, 0);
    one.append(gates::rx(0, 1.0));
    EXPECT_DOUBLE_EQ(estimate_success(one, toy(0, 0.5, 0.5)), 1.0);

    Circuit h(1, 0);
    h.append(gates::h(0));
    EXPECT_THROW(estimate_success(h, b), BackendError);
    Circuit far(3, 0);
    far.append(gates::cx(0, 2));
    auto wide = b;
    wide.num_qubits = 3;
    EXPECT_THROW(estimate_success(far, wide), BackendError);
}

TEST(AnalyzerProperty, SuccessMonotone) {
    Circuit c(2, 1);
    c.append(gates::rz(0, 0.1)).append(gates::cx(0, 1)).append(Measure{1, 0});
    double prev = 1.1;
    for (double e : {0.0, 0.001, 0.01, 0.1, 0.5}) {
        const double p = estimate_success(c, toy(e, 0.01, 0.01));
        EXPECT_LE(p, prev);
        EXPECT_GT(p, 0.0);
        prev = p;
    }
    Circuit longer = Circuit::from_unchecked(2, 1, {gates::rz(0, 0.1), gates::rx(0, 0.1), gates::cx(0, 1)});
    longer.append(Measure{1, 0});
    EXPECT_LT(estimate_success(longer, toy(0.01, 0.01, 0.01)), estimate_success(c, toy(0.01, 0.01, 0.01)));
}

TEST(Analyzer, FilterBackends) {
    EXPECT_TRUE(filter_backends(bell(), {}).entries.empty());
    const auto r = filter_backends(bell(), registry());
    ASSERT_EQ(r.entries.size(), 3u);
    for (const auto& e : r.entries) {
        if (e.backend_id == "solo1") {
            EXPECT_FALSE(e.feasible);
            EXPECT_EQ(e.reason, "insufficient qubits");
        } else {
            EXPECT_TRUE(e.feasible) << e.backend_id;
            EXPECT_FALSE(e.reason);
        }
    }
}

TEST(Analyzer, FilterReportsTranspileFailure) {
    auto b = toy(0, 0, 0);
    b.coupling_map.clear();
    const auto r = filter_backends(bell(), {b});
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_FALSE(r.entries[0].feasible);
    ASSERT_TRUE(r.entries[0].reason);
    EXPECT_EQ(r.entries[0].reason->rfind("transpilation failed: ", 0), 0u) << *r.entries[0].reason;
}

TEST(Analyzer, SelectionOrdering) {
    Circuit c(2, 0);
    c.append(gates::rx(0, 1.0));
    // success 0.95 vs 0.90
    auto r = select_backend(c, {toy(0.10, 0, 0, 1, "b"), toy(0.05, 0, 0, 1, "a2")});
    EXPECT_EQ(r.entries[0].backend_id, "a2");
    EXPECT_NEAR(r.entries[0].success, 0.95, 1e-12);

    // equal success, cheaper first under the success objective
    SelectionOptions opts;
    opts.shots = 100;
    r = select_backend(c, {toy(0.05, 0, 0, 2.0, "a"), toy(0.05, 0, 0, 1.0, "b")}, opts);
    EXPECT_EQ(r.entries[0].backend_id, "b");
    EXPECT_DOUBLE_EQ(r.entries[0].total_cost, 100.0);
    EXPECT_DOUBLE_EQ(r.entries[1].total_cost, 200.0);

    // full tie falls back to id
    r = select_backend(c, {toy(0.05, 0, 0, 1, "z"), toy(0.05, 0, 0, 1, "m")});
    EXPECT_EQ(r.entries[0].backend_id, "m");

    // cost objective: cheapest first even with worse success
    opts.objective = SelectionObjective::cost;
    r = select_backend(c, {toy(0.01, 0, 0, 5.0, "good"), toy(0.2, 0, 0, 1.0, "cheap")}, opts);
    EXPECT_EQ(r.entries[0].backend_id, "cheap");
}

TEST(Analyzer, ThreeBackendFixtureRanking) {
    const auto r = select_backend(bell(), registry());
    ASSERT_EQ(r.entries.size(), 3u);
    EXPECT_EQ(r.feasible_count(), 2u);
    // Bell on toy5: H -> 3 rotations, CX native on 0->1: 3 one-qubit, 1 two-qubit, 2 measures.
    // Bell on ring4: H -> 3 rotations, CX -> H CZ H: 9 one-qubit, 1 two-qubit, 2 measures.
    const double toy5 = std::pow(1 - 0.001, 3) * (1 - 0.01) * std::pow(1 - 0.02, 2);
    const double ring4 = std::pow(1 - 0.0002, 9) * (1 - 0.005) * std::pow(1 - 0.015, 2);
    ASSERT_GT(ring4, toy5);
    EXPECT_EQ(r.entries[0].backend_id, "ring4");
    EXPECT_NEAR(r.entries[0].success, ring4, 1e-12);
    EXPECT_EQ(r.entries[1].backend_id, "toy5");
    EXPECT_NEAR(r.entries[1].success, toy5, 1e-12);
    EXPECT_EQ(r.entries[2].backend_id, "solo1");
    EXPECT_FALSE(r.entries[2].feasible);
    ASSERT_NE(r.best(), nullptr);
    EXPECT_EQ(r.best()->backend_id, "ring4");

    SelectionOptions cost;
    cost.objective = SelectionObjective::cost;
    const auto rc = select_backend(bell(), registry(), cost);
    EXPECT_EQ(rc.entries[0].backend_id, "toy5");
    EXPECT_EQ(rc.entries[1].backend_id, "ring4");
}

TEST(Analyzer, TrustedVendorsFilter) {
    SelectionOptions opts;
    opts.trusted_vendors = {"acme"};
    const auto r = select_backend(bell(), registry(), opts);
    ASSERT_EQ(r.entries.size(), 3u);
    EXPECT_EQ(r.best()->backend_id, "toy5");
    for (const auto& e : r.entries) {
        if (e.backend_id == "ring4") {
            EXPECT_FALSE(e.feasible);
            EXPECT_EQ(e.reason, "untrusted vendor");
        }
    }
}

TEST(AnalyzerProperty, MonotoneFeasibility) {
    std::mt19937_64 rng(21);
    auto base = registry()[0];
    base.num_qubits = 4;
    base.coupling_map = {{0, 1}, {1, 2}, {2, 3}};
    auto bigger = base;
    bigger.num_qubits = 5;
    bigger.coupling_map.insert({3, 4});
    bigger.coupling_map.insert({4, 0});
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = oracle::random_circuit(rng, 4, 15, true);
        const auto a = filter_backends(c, {base});
        const auto b = filter_backends(c, {bigger});
        if (a.entries[0].feasible) ASSERT_TRUE(b.entries[0].feasible);
    }
}

TEST(Analyzer, RegistryParsing) {
    const auto reg = registry();
    ASSERT_EQ(reg.size(), 3u);
    EXPECT_EQ(reg[1].assembler, Assembler::quil);
    EXPECT_TRUE(reg[0].has_edge(0, 1));
    EXPECT_FALSE(reg[0].has_edge(1, 0));
    EXPECT_TRUE(parse_registry("[]").empty());
    // round trip
    EXPECT_EQ(registry_to_json(parse_registry(registry_to_json(reg).dump())), registry_to_json(reg));

    Json j = registry_to_json(reg);
    j[0]["extra"] = 1;
    EXPECT_THROW(parse_registry(j.dump()), BackendError);
    j = registry_to_json(reg);
    j[0].erase("vendor");
    EXPECT_THROW(parse_registry(j.dump()), BackendError);
    j = registry_to_json(reg);
    j[0]["error_1q"] = 1.0;
    EXPECT_THROW(parse_registry(j.dump()), BackendError);
    j = registry_to_json(reg);
    j[0]["coupling_map"].push_back({0, 9});
    EXPECT_THROW(parse_registry(j.dump()), BackendError);
    j = registry_to_json(reg);
    j[1]["id"] = "toy5";
    EXPECT_THROW(parse_registry(j.dump()), BackendError);
    EXPECT_THROW(parse_registry("{"), BackendError);
}
