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

#include "vaql/serialize.hpp"

#include <set>

#include "vaql/frontend.hpp"

namespace vaql {

Json to_json(const Distribution& dist) {
    Json j = Json::object();
    for (const auto& [bits, p] : dist.probabilities) j[bits] = p;
    return j;
}

Json to_json(const Histogram& hist) {
    Json j = Json::object();
    for (const auto& [bits, n] : hist.counts) j[bits] = n;
    return j;
}

Json to_json(const PassReport& report) {
    return {{"pass", report.pass},
            {"gates_before", report.gates_before},
            {"gates_after", report.gates_after},
            {"depth_before", report.depth_before},
            {"depth_after", report.depth_after},
            {"rewrites", report.rewrites}};
}

Json to_json(const OptimizationResult& result) {
    Json remap = Json::object();
    for (const auto& [from, to] : result.remap) remap[std::to_string(from)] = to;
    Json reports = Json::array();
    for (const auto& r : result.reports) reports.push_back(to_json(r));
    const std::size_t metric = result.objective == Objective::size ? result.circuit.gate_count()
                                                                   : circuit_depth(result.circuit);
    return {{"circuit", print_vaql(result.circuit)},
            {"remap", remap},
            {"reports", reports},
            {"objective", std::string(to_string(result.objective))},
            {"objective_value", metric},
            {"rounds", result.rounds}};
}

Json to_json(const CircuitProfile& p) {
    Json hist = Json::object();
    for (const auto& [name, n] : p.gate_histogram) hist[name] = n;
    return {{"num_qubits", p.num_qubits},   {"num_cbits", p.num_cbits},
            {"depth", p.depth},             {"gate_histogram", hist},
            {"t_count", p.t_count},         {"two_qubit_count", p.two_qubit_count},
            {"measure_count", p.measure_count}};
}

Json to_json(const BackendDescriptor& b) {
    Json natives = Json::array();
    for (GateKind k : b.native_gates) natives.push_back(std::string(mnemonic(k)));
    Json coupling = Json::array();
    for (const auto& [from, to] : b.coupling_map) coupling.push_back({from, to});
    return {{"id", b.id},
            {"vendor", b.vendor},
            {"num_qubits", b.num_qubits},
            {"native_gates", natives},
            {"coupling_map", coupling},
            {"error_1q", b.error_1q},
            {"error_2q", b.error_2q},
            {"readout_error", b.readout_error},
            {"cost_per_shot", b.cost_per_shot},
            {"assembler", std::string(to_string(b.assembler))}};
}

Json to_json(const SelectionResult& selection) {
    Json entries = Json::array();
    for (const auto& e : selection.entries) {
        Json j = {{"backend_id", e.backend_id},
                  {"feasible", e.feasible},
                  {"success", e.success},
                  {"total_cost", e.total_cost}};
        if (e.reason) j["reason"] = *e.reason;
        entries.push_back(std::move(j));
    }
    return entries;
}

Json to_json(const TranspiledProgram& program) {
    const auto initial = program.layout.logical_initial();
    const auto final = program.layout.logical_final();
    return {{"backend_id", program.backend_id},
            {"circuit", print_vaql(program.circuit)},
            {"initial_layout", std::vector<std::size_t>(initial.begin(), initial.end())},
            {"final_layout", std::vector<std::size_t>(final.begin(), final.end())},
            {"swap_count", program.swap_count}};
}

Json to_json(const VariationalResult& result) {
    Json history = Json::array();
    for (const auto& [params, value] : result.history) history.push_back({{"parameters", params}, {"value", value}});
    Json j = {{"best_parameters", result.best_parameters},
              {"best_value", result.best_value},
              {"evaluations", result.evaluations},
              {"history", history}};
    if (result.best_bitstring) j["best_bitstring"] = *result.best_bitstring;
    if (result.best_cut) j["best_cut"] = *result.best_cut;
    if (result.histogram) j["histogram"] = to_json(*result.histogram);
    return j;
}

namespace {

template <typename E>
std::size_t unsigned_value(const Json& v) {
    if (!v.is_number_unsigned()) throw E("expected a non-negative integer, got " + v.dump());
    return v.get<std::size_t>();
}

const std::set<std::string> kBackendFields = {"id",       "vendor",   "num_qubits",    "native_gates",
                                              "coupling_map", "error_1q", "error_2q", "readout_error",
                                              "cost_per_shot", "assembler"};

} // namespace

BackendDescriptor backend_from_json(const Json& j) {
    if (!j.is_object()) throw BackendError("backend descriptor must be a JSON object");
    const std::string label = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "?";
    auto fail = [&](const std::string& msg) -> BackendError {
        return BackendError("backend '" + label + "': " + msg);
    };
    for (const auto& [key, value] : j.items()) {
        if (!kBackendFields.count(key)) throw fail("unknown field '" + key + "'");
    }
    for (const auto& field : kBackendFields) {
        if (!j.contains(field)) throw fail("missing field '" + field + "'");
    }
    BackendDescriptor b;
    try {
        b.id = j.at("id").get<std::string>();
        b.vendor = j.at("vendor").get<std::string>();
        b.num_qubits = unsigned_value<BackendError>(j.at("num_qubits"));
        for (const auto& name : j.at("native_gates")) {
            const auto text = name.get<std::string>();
            const auto kind = gate_from_mnemonic(text);
            if (!kind) throw fail("unknown native gate '" + text + "'");
            b.native_gates.insert(*kind);
        }
        for (const auto& edge : j.at("coupling_map")) {
            if (!edge.is_array() || edge.size() != 2) throw fail("coupling_map entries must be [from, to]");
            b.coupling_map.emplace(unsigned_value<BackendError>(edge[0]), unsigned_value<BackendError>(edge[1]));
        }
        b.error_1q = j.at("error_1q").get<double>();
        b.error_2q = j.at("error_2q").get<double>();
        b.readout_error = j.at("readout_error").get<double>();
        b.cost_per_shot = j.at("cost_per_shot").get<double>();
        const auto assembler = j.at("assembler").get<std::string>();
        if (assembler == "qasm2") {
            b.assembler = Assembler::qasm2;
        } else if (assembler == "quil") {
            b.assembler = Assembler::quil;
        } else {
            throw fail("assembler must be \"qasm2\" or \"quil\"");
        }
    } catch (const Json::exception& e) {
        throw fail(e.what());
    }
    if (b.num_qubits == 0) throw fail("num_qubits must be at least 1");
    validate_backend(b);
    return b;
}

std::vector<BackendDescriptor> parse_registry(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw BackendError(std::string("registry is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw BackendError("registry must be a JSON array");
    std::vector<BackendDescriptor> out;
    std::set<std::string> ids;
    for (const auto& item : j) {
        auto b = backend_from_json(item);
        if (!ids.insert(b.id).second) throw BackendError("duplicate backend id '" + b.id + "'");
        out.push_back(std::move(b));
    }
    return out;
}

Json registry_to_json(const std::vector<BackendDescriptor>& registry) {
    Json out = Json::array();
    for (const auto& b : registry) out.push_back(to_json(b));
    return out;
}

Graph graph_from_json(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
            throw HybridError("graph must be {\"n\": int, \"edges\": [[i, j], ...]}");
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw HybridError("edges must be [i, j] pairs");
            edges.emplace_back(unsigned_value<HybridError>(e[0]), unsigned_value<HybridError>(e[1]));
        }
        return Graph(unsigned_value<HybridError>(j.at("n")), std::move(edges));
    } catch (const Json::exception& e) {
        throw HybridError(std::string("malformed graph: ") + e.what());
    }
}

Observable observable_from_json(const Json& j) {
    try {
        if (!j.is_array() || j.empty()) throw HybridError("observable must be a non-empty [[coefficient, \"PAULIS\"], ...] list");
        std::vector<PauliTerm> terms;
        for (const auto& t : j) {
            if (!t.is_array() || t.size() != 2) throw HybridError("observable terms must be [coefficient, \"PAULIS\"]");
            terms.push_back({t[0].get<double>(), t[1].get<std::string>()});
        }
        const std::size_t n = terms.front().paulis.size();
        return Observable(n, std::move(terms));
    } catch (const Json::exception& e) {
        throw HybridError(std::string("malformed observable: ") + e.what());
    }
}

} // namespace vaql
