// Copyright 2026 The Ministack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line client for the service's HTTP API.

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ministack::client {

enum class OutputFormat { Table, Json };

/// http://host[:port][/base]. Only plain HTTP is supported.
struct Endpoint {
    std::string host;
    int port = 80;
    std::string base_path;
};

std::optional<Endpoint> parse_endpoint(std::string_view url);

struct CliConfig {
    std::string endpoint = "http://127.0.0.1:8080";
    std::string token;
    OutputFormat output = OutputFormat::Table;
};

/// Environment lookup, injectable for tests.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_environment();

/// $XDG_CONFIG_HOME/ministack/config.json, else ~/.config/ministack/config.json.
std::filesystem::path default_config_path(const EnvLookup& env);

/// Fields set on the command line.
struct ConfigFlags {
    std::optional<std::string> endpoint;
    std::optional<std::string> token;
    std::optional<std::string> output;
    std::optional<std::filesystem::path> config_file;
};

/// Flags win over MINISTACK_ENDPOINT / MINISTACK_TOKEN, which win over the
/// config file ({"endpoint", "token", "output"}). Throws Error(Config) for
/// an unparseable endpoint, unknown output format or malformed file.
CliConfig resolve_config(const ConfigFlags& flags, const EnvLookup& env);

struct HttpResponse {
    int status = 0;
    std::string body;
};

class ApiClient {
public:
    /// Throws Error(Config) for a bad endpoint.
    explicit ApiClient(const CliConfig& config);

    /// Throws Error(Io) when the service cannot be reached.
    HttpResponse get(const std::string& path, const std::string& session = {}) const;
    HttpResponse post(const std::string& path, const nlohmann::json& body, const std::string& session = {}) const;
    HttpResponse del(const std::string& path, const std::string& session = {}) const;

    /// POST /v1/sessions with the configured token. Throws Error(Auth) with
    /// the service's error body on rejection.
    std::string open_session() const;

private:
    Endpoint endpoint_;
    std::string token_;
};

/// Entry point of the ministack executable. Returns 0 on success (and for
/// status/watch/result, only when the job is not FAILED or CANCELLED), 1 on
/// FAILED/CANCELLED jobs and on API or network errors, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env = process_environment());

}  // namespace ministack::client
