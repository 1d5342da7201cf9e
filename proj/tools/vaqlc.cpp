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

// vaqlc: command-line driver for the parse -> optimize -> analyze ->
// select -> transpile -> emit -> simulate pipeline.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "vaql/analyzer.hpp"
#include "vaql/codegen.hpp"
#include "vaql/frontend.hpp"
#include "vaql/hybrid.hpp"
#include "vaql/optimizer.hpp"
#include "vaql/serialize.hpp"
#include "vaql/service.hpp"
#include "vaql/simulator.hpp"
#include "vaql/transpiler.hpp"

namespace {

using namespace vaql;

/// A failure tagged with the pipeline stage that raised it.
struct StageFailure {
    std::string stage;
    std::string message;
};

template <typename F>
auto in_stage(const std::string& stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw StageFailure{stage, e.what()};
    }
}

std::string read_file(const std::string& path) {
    return in_stage("io", [&] {
        if (path == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            return ss.str();
        }
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    });
}

Circuit load_circuit(const std::string& path) {
    const std::string text = read_file(path);
    return in_stage("parse", [&] { return parse_vaql(text); });
}

std::vector<BackendDescriptor> load_registry(const std::string& path) {
    const std::string text = read_file(path);
    return in_stage("backends", [&] { return parse_registry(text); });
}

Json load_json(const std::string& path, const std::string& stage) {
    const std::string text = read_file(path);
    return in_stage(stage, [&] {
        try {
            return Json::parse(text);
        } catch (const Json::exception& e) {
            throw Error(path + " is not valid JSON: " + e.what());
        }
    });
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
    if (g_server) g_server->stop();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vendor-agnostic quantum circuit toolchain"};
    app.require_subcommand(1);

    std::string file;
    std::string registry_path;

    auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form of a circuit");
    parse_cmd->add_option("file", file, "Circuit file (- for stdin)")->required();

    std::string objective = "size";
    bool report = false;
    auto* optimize_cmd = app.add_subcommand("optimize", "Hardware-independent optimization");
    optimize_cmd->add_option("file", file, "Circuit file (- for stdin)")->required();
    optimize_cmd->add_option("--objective", objective, "size or depth")->check(CLI::IsMember({"size", "depth"}));
    optimize_cmd->add_flag("--report", report, "Emit a JSON object with circuit, remap and pass reports");

    auto* analyze_cmd = app.add_subcommand("analyze", "Circuit profile as JSON");
    analyze_cmd->add_option("file", file, "Circuit file (- for stdin)")->required();

    std::string select_objective = "success";
    std::uint64_t shots = 1024;
    std::vector<std::string> trusted;
    auto* select_cmd = app.add_subcommand("select", "Rank backends for a circuit");
    select_cmd->add_option("file", file, "Circuit file (- for stdin)")->required();
    select_cmd->add_option("--backends", registry_path, "Backend registry JSON")->required();
    select_cmd->add_option("--objective", select_objective, "success or cost")
        ->check(CLI::IsMember({"success", "cost"}));
    select_cmd->add_option("--shots", shots, "Shots used for cost")->check(CLI::PositiveNumber);
    select_cmd->add_option("--trust", trusted, "Trusted vendors (others are excluded)");

    std::string backend_id;
    std::string emit = "json";
    auto* transpile_cmd = app.add_subcommand("transpile", "Compile for one backend");
    transpile_cmd->add_option("file", file, "Circuit file (- for stdin)")->required();
    transpile_cmd->add_option("--backends", registry_path, "Backend registry JSON")->required();
    transpile_cmd->add_option("--backend", backend_id, "Backend id")->required();
    transpile_cmd->add_option("--emit", emit, "json, vaql, qasm2 or quil")
        ->check(CLI::IsMember({"json", "vaql", "qasm2", "quil"}));

    std::uint64_t seed = 0;
    bool exact = false;
    auto* simulate_cmd = app.add_subcommand("simulate", "Sample measurement outcomes");
    simulate_cmd->add_option("file", file, "Circuit file (- for stdin)")->required();
    simulate_cmd->add_option("--shots", shots, "Number of shots")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", seed, "PRNG seed");
    simulate_cmd->add_flag("--exact", exact, "Print the exact distribution instead of counts");

    std::string graph_path;
    std::size_t layers = 1, grid = 32;
    auto* qaoa_cmd = app.add_subcommand("qaoa", "QAOA for MaxCut");
    qaoa_cmd->add_option("--graph", graph_path, "Graph JSON {\"n\":..,\"edges\":[[i,j],..]}")->required();
    qaoa_cmd->add_option("--p", layers, "Layers")->check(CLI::Range(1, 2));
    qaoa_cmd->add_option("--grid", grid, "Grid points per axis")->check(CLI::Range(2, 4096));
    qaoa_cmd->add_option("--shots", shots, "Final sampling shots")->check(CLI::PositiveNumber);
    qaoa_cmd->add_option("--seed", seed, "PRNG seed");

    std::string observable_path;
    std::size_t reps = 1, restarts = 5;
    auto* vqe_cmd = app.add_subcommand("vqe", "Variational eigensolver");
    vqe_cmd->add_option("--observable", observable_path, "Observable JSON [[coeff, \"PAULIS\"], ...]")->required();
    vqe_cmd->add_option("--reps", reps, "Ansatz repetitions")->check(CLI::PositiveNumber);
    vqe_cmd->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber);
    vqe_cmd->add_option("--seed", seed, "PRNG seed");

    int port = 8080;
    std::size_t workers = 1;
    std::string journal_path;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP job service");
    serve_cmd->add_option("--port", port, "TCP port")->required();
    serve_cmd->add_option("--backends", registry_path, "Backend registry JSON")->required();
    serve_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    serve_cmd->add_option("--journal", journal_path, "Append-only JSON-lines journal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (parse_cmd->parsed()) {
            std::cout << print_vaql(load_circuit(file));
        } else if (optimize_cmd->parsed()) {
            const Circuit c = load_circuit(file);
            const auto result = in_stage("optimize", [&] {
                return optimize(c, objective == "depth" ? Objective::depth : Objective::size);
            });
            if (report) {
                print_json(to_json(result));
            } else {
                std::cout << print_vaql(result.circuit);
            }
        } else if (analyze_cmd->parsed()) {
            print_json(to_json(profile(load_circuit(file))));
        } else if (select_cmd->parsed()) {
            const Circuit c = load_circuit(file);
            const auto registry = load_registry(registry_path);
            SelectionOptions opts;
            opts.objective = select_objective == "cost" ? SelectionObjective::cost : SelectionObjective::success;
            opts.shots = shots;
            opts.trusted_vendors = trusted;
            print_json(in_stage("select", [&] { return to_json(select_backend(c, registry, opts)); }));
        } else if (transpile_cmd->parsed()) {
            const Circuit c = load_circuit(file);
            const auto registry = load_registry(registry_path);
            auto it = std::find_if(registry.begin(), registry.end(),
                                   [&](const BackendDescriptor& b) { return b.id == backend_id; });
            if (it == registry.end()) throw StageFailure{"select", "unknown backend '" + backend_id + "'"};
            const auto program = in_stage("transpile", [&] { return transpile(c, *it); });
            if (emit == "json") {
                print_json(to_json(program));
            } else if (emit == "vaql") {
                std::cout << print_vaql(program.circuit);
            } else {
                std::cout << in_stage("codegen", [&] {
                    return emit == "qasm2" ? emit_qasm2(program) : emit_quil(program);
                });
            }
        } else if (simulate_cmd->parsed()) {
            const Circuit c = load_circuit(file);
            in_stage("simulate", [&] {
                const auto dist = measurement_distribution(c);
                print_json(exact ? to_json(dist) : to_json(sample(dist, shots, seed)));
            });
        } else if (qaoa_cmd->parsed()) {
            const Json j = load_json(graph_path, "qaoa");
            in_stage("qaoa", [&] {
                QaoaOptions opts{layers, grid, shots, seed};
                print_json(to_json(run_qaoa(graph_from_json(j), opts)));
            });
        } else if (vqe_cmd->parsed()) {
            const Json j = load_json(observable_path, "vqe");
            in_stage("vqe", [&] {
                VqeOptions opts{reps, restarts, seed};
                print_json(to_json(run_vqe(observable_from_json(j), opts)));
            });
        } else if (serve_cmd->parsed()) {
            const auto registry = load_registry(registry_path);
            in_stage("serve", [&] {
                ServiceOptions opts;
                opts.workers = workers;
                if (!journal_path.empty()) opts.journal_path = journal_path;
                JobService service(registry, opts);
                service.start();
                HttpServer server(service);
                const int bound = server.bind("0.0.0.0", port);
                if (bound < 0) throw Error("cannot bind port " + std::to_string(port));
                std::cerr << "vaqlc: serving on port " << bound << '\n';
                g_server = &server;
                std::signal(SIGINT, on_signal);
                std::signal(SIGTERM, on_signal);
                server.listen();
                g_server = nullptr;
            });
        }
    } catch (const StageFailure& f) {
        std::cerr << "vaqlc: " << f.stage << " error: " << f.message << '\n';
        return 1;
    }
    return 0;
}
