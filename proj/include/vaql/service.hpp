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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "vaql/backend.hpp"
#include "vaql/error.hpp"
#include "vaql/serialize.hpp"
#include "vaql/simulator.hpp"
#include "vaql/transpiler.hpp"

namespace vaql {

struct JobRequest {
    std::string program;
    std::optional<std::string> backend_id;
    std::uint64_t shots = 0;
    std::optional<std::uint64_t> seed;
};

enum class JobStatus { queued, running, done, failed };

std::string_view to_string(JobStatus status) noexcept;

struct JobResult {
    Histogram histogram;
    Distribution distribution;
    std::string backend_id;
    TranspiledProgram program;
    /// The program in the selected backend's assembler format.
    std::string assembler;
};

/// Status moves queued -> running -> done | failed; `result` is set iff
/// done, `error` iff failed. Timestamps are microseconds since the epoch.
struct JobRecord {
    std::string id;
    JobStatus status = JobStatus::queued;
    std::int64_t submitted_us = 0;
    std::optional<std::int64_t> started_us;
    std::optional<std::int64_t> finished_us;
    JobRequest request;
    std::optional<JobResult> result;
    std::optional<std::string> error;
};

/// A request rejected at submission. Carries the source position for
/// parse failures.
class RejectedRequest : public Error {
public:
    explicit RejectedRequest(const std::string& msg) : Error(msg) {}
    RejectedRequest(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg), line_(line), column_(column) {}

    std::optional<std::size_t> line() const noexcept { return line_; }
    std::optional<std::size_t> column() const noexcept { return column_; }

private:
    std::optional<std::size_t> line_;
    std::optional<std::size_t> column_;
};

struct ServiceOptions {
    std::size_t workers = 1;
    /// Append-only JSON-lines log of job state transitions.
    std::optional<std::string> journal_path;
};

/// Job queue in front of the select -> transpile -> simulate pipeline. With
/// one worker, jobs start in submission order.
class JobService {
public:
    JobService(std::vector<BackendDescriptor> registry, ServiceOptions options = {});
    ~JobService();

    JobService(const JobService&) = delete;
    JobService& operator=(const JobService&) = delete;

    /// Launches the worker threads. Jobs submitted earlier stay queued
    /// until then.
    void start();
    /// Stops workers after their current job; queued jobs stay queued.
    void stop();

    /// Validates and enqueues; throws RejectedRequest without enqueueing.
    std::string submit(const JobRequest& request);

    std::optional<JobRecord> get(const std::string& id) const;

    /// Blocks until job `id` is terminal or the timeout expires.
    std::optional<JobRecord> wait(const std::string& id, std::chrono::milliseconds timeout) const;

    const std::vector<BackendDescriptor>& backends() const noexcept { return registry_; }

private:
    void worker_loop();
    JobResult execute(const JobRequest& request, std::uint64_t default_seed) const;
    void journal(const JobRecord& record);

    const std::vector<BackendDescriptor> registry_;
    const ServiceOptions options_;

    mutable std::mutex mutex_;
    mutable std::condition_variable changed_;
    std::condition_variable work_;
    std::deque<std::string> queue_;
    std::unordered_map<std::string, JobRecord> jobs_;
    std::unordered_map<std::string, std::uint64_t> sequence_;
    std::uint64_t next_id_ = 0;
    bool stopping_ = false;
    std::vector<std::thread> workers_;
    std::ofstream journal_;
};

Json to_json(const JobRecord& record);
/// Parses a POST /jobs body. Throws RejectedRequest on malformed input.
JobRequest job_request_from_json(const Json& j);

/// HTTP/JSON front end:
///   POST /jobs      -> 202 {"job_id": ...}
///   GET  /jobs/{id} -> 200 job record | 404
///   GET  /backends  -> 200 registry array
/// Errors are {"error": text} with optional "line" / "column".
class HttpServer {
public:
    explicit HttpServer(JobService& service);
    ~HttpServer();

    /// Binds to `port` (0 picks a free port) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace vaql
