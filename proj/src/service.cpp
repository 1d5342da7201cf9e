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

#include "vaql/service.hpp"

#include <algorithm>

#include "httplib.h"

#include "vaql/analyzer.hpp"
#include "vaql/codegen.hpp"
#include "vaql/frontend.hpp"
#include "vaql/optimizer.hpp"

namespace vaql {

namespace {

std::int64_t now_us() {
    using namespace std::chrono;
    return duration_cast<microseconds>(system_clock::now().time_since_epoch()).count();
}

bool terminal(JobStatus s) { return s == JobStatus::done || s == JobStatus::failed; }

} // namespace

std::string_view to_string(JobStatus status) noexcept {
    switch (status) {
    case JobStatus::queued: return "queued";
    case JobStatus::running: return "running";
    case JobStatus::done: return "done";
    case JobStatus::failed: return "failed";
    }
    return "unknown";
}

JobService::JobService(std::vector<BackendDescriptor> registry, ServiceOptions options)
    : registry_(std::move(registry)), options_(std::move(options)) {
    if (options_.workers == 0) throw Error("service needs at least one worker");
    if (options_.journal_path) {
        journal_.open(*options_.journal_path, std::ios::app);
        if (!journal_) throw Error("cannot open journal " + *options_.journal_path);
    }
}

JobService::~JobService() { stop(); }

void JobService::start() {
    std::lock_guard lock(mutex_);
    if (!workers_.empty()) return;
    stopping_ = false;
    for (std::size_t k = 0; k < options_.workers; ++k) workers_.emplace_back([this] { worker_loop(); });
}

void JobService::stop() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    work_.notify_all();
    for (auto& t : workers_) t.join();
    workers_.clear();
}

std::string JobService::submit(const JobRequest& request) {
    if (request.shots == 0) throw RejectedRequest("shots must be at least 1");
    try {
        (void)parse_vaql(request.program);
    } catch (const SourceError& e) {
        throw RejectedRequest(e.what(), e.line(), e.column());
    }
    if (request.backend_id) {
        const bool known = std::any_of(registry_.begin(), registry_.end(),
                                       [&](const BackendDescriptor& b) { return b.id == *request.backend_id; });
        if (!known) throw RejectedRequest("unknown backend '" + *request.backend_id + "'");
    }

    std::lock_guard lock(mutex_);
    const std::uint64_t seq = next_id_++;
    std::string id = "job-" + std::to_string(seq);
    JobRecord record;
    record.id = id;
    record.submitted_us = now_us();
    record.request = request;
    jobs_.emplace(id, record);
    sequence_.emplace(id, seq);
    queue_.push_back(id);
    journal(record);
    work_.notify_one();
    return id;
}

std::optional<JobRecord> JobService::get(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return std::nullopt;
    return it->second;
}

std::optional<JobRecord> JobService::wait(const std::string& id, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return std::nullopt;
    changed_.wait_for(lock, timeout, [&] { return terminal(jobs_.at(id).status); });
    return jobs_.at(id);
}

void JobService::journal(const JobRecord& record) {
    if (!journal_.is_open()) return;
    Json line = {{"job_id", record.id}, {"status", std::string(to_string(record.status))}, {"time_us", now_us()}};
    if (record.error) line["error"] = *record.error;
    journal_ << line.dump() << '\n';
    journal_.flush();
}

void JobService::worker_loop() {
    while (true) {
        std::string id;
        JobRequest request;
        std::uint64_t seq = 0;
        {
            std::unique_lock lock(mutex_);
            work_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
            if (stopping_) return;
            id = queue_.front();
            queue_.pop_front();
            auto& record = jobs_.at(id);
            record.status = JobStatus::running;
            record.started_us = now_us();
            request = record.request;
            seq = sequence_.at(id);
            journal(record);
        }
        changed_.notify_all();

        std::optional<JobResult> result;
        std::optional<std::string> error;
        try {
            result = execute(request, seq);
        } catch (const std::exception& e) {
            error = e.what();
        }

        {
            std::lock_guard lock(mutex_);
            auto& record = jobs_.at(id);
            record.finished_us = now_us();
            if (result) {
                record.status = JobStatus::done;
                record.result = std::move(result);
            } else {
                record.status = JobStatus::failed;
                record.error = std::move(error);
            }
            journal(record);
        }
        changed_.notify_all();
    }
}

JobResult JobService::execute(const JobRequest& request, std::uint64_t default_seed) const {
    const Circuit circuit = parse_vaql(request.program);
    if (!circuit.has_measurements()) throw Error("simulate: program has no measurements");

    const BackendDescriptor* backend = nullptr;
    if (request.backend_id) {
        for (const auto& b : registry_) {
            if (b.id == *request.backend_id) backend = &b;
        }
    } else {
        SelectionOptions sel;
        sel.shots = request.shots;
        const auto ranking = select_backend(circuit, registry_, sel);
        if (const auto* best = ranking.best()) {
            for (const auto& b : registry_) {
                if (b.id == best->backend_id) backend = &b;
            }
        }
        if (!backend) throw Error("select: no feasible backend for this program");
    }

    TranspiledProgram program = transpile(circuit, *backend);
    std::string assembler = emit_assembler(program, backend->assembler);
    // Idle device qubits do not change the outcome distribution.
    const Circuit compact = remove_idle_qubits(program.circuit).circuit;
    Distribution dist = measurement_distribution(compact);
    Histogram hist = sample(dist, request.shots, request.seed.value_or(default_seed));
    return JobResult{std::move(hist), std::move(dist), backend->id, std::move(program), std::move(assembler)};
}

Json to_json(const JobRecord& record) {
    Json req = {{"program", record.request.program}, {"shots", record.request.shots}};
    if (record.request.backend_id) req["backend"] = *record.request.backend_id;
    if (record.request.seed) req["seed"] = *record.request.seed;
    Json j = {{"job_id", record.id},
              {"status", std::string(to_string(record.status))},
              {"submitted_at_us", record.submitted_us},
              {"request", req}};
    if (record.started_us) j["started_at_us"] = *record.started_us;
    if (record.finished_us) j["finished_at_us"] = *record.finished_us;
    if (record.result) {
        j["result"] = {{"histogram", to_json(record.result->histogram)},
                       {"distribution", to_json(record.result->distribution)},
                       {"backend_id", record.result->backend_id},
                       {"transpiled", to_json(record.result->program)},
                       {"assembler", record.result->assembler}};
    }
    if (record.error) j["error"] = *record.error;
    return j;
}

JobRequest job_request_from_json(const Json& j) {
    if (!j.is_object()) throw RejectedRequest("request body must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "program" && key != "backend" && key != "shots" && key != "seed") {
            throw RejectedRequest("unknown field '" + key + "'");
        }
    }
    JobRequest req;
    if (!j.contains("program") || !j["program"].is_string()) throw RejectedRequest("'program' must be a string");
    req.program = j["program"].get<std::string>();
    if (!j.contains("shots") || !j["shots"].is_number_unsigned()) {
        throw RejectedRequest("'shots' must be a positive integer");
    }
    req.shots = j["shots"].get<std::uint64_t>();
    if (j.contains("backend") && !j["backend"].is_null()) {
        if (!j["backend"].is_string()) throw RejectedRequest("'backend' must be a string");
        req.backend_id = j["backend"].get<std::string>();
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
        if (!j["seed"].is_number_unsigned()) throw RejectedRequest("'seed' must be a non-negative integer");
        req.seed = j["seed"].get<std::uint64_t>();
    }
    return req;
}

struct HttpServer::Impl {
    JobService& service;
    httplib::Server server;

    explicit Impl(JobService& s) : service(s) {
        server.Post("/jobs", [this](const httplib::Request& req, httplib::Response& res) {
            Json body;
            try {
                body = Json::parse(req.body);
            } catch (const Json::exception& e) {
                reply(res, 400, {{"error", std::string("request body is not valid JSON: ") + e.what()}});
                return;
            }
            try {
                const auto id = service.submit(job_request_from_json(body));
                reply(res, 202, {{"job_id", id}});
            } catch (const RejectedRequest& e) {
                Json err = {{"error", e.what()}};
                if (e.line()) err["line"] = *e.line();
                if (e.column()) err["column"] = *e.column();
                reply(res, 400, err);
            }
        });
        server.Get(R"(/jobs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
            const auto record = service.get(req.matches[1]);
            if (!record) {
                reply(res, 404, {{"error", "no job with id '" + std::string(req.matches[1]) + "'"}});
                return;
            }
            reply(res, 200, to_json(*record));
        });
        server.Get("/backends", [this](const httplib::Request&, httplib::Response& res) {
            reply(res, 200, registry_to_json(service.backends()));
        });
    }

    static void reply(httplib::Response& res, int status, const Json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }
};

HttpServer::HttpServer(JobService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

} // namespace vaql
