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


// HTTP + JSON front end of the service. See docs/api.md for the schemas.

#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "ministack/error.hpp"
#include "ministack/service/service.hpp"

namespace ministack::service {

/// 400 for malformed requests, 401 Auth, 404 unknown ids, 409 state
/// conflicts, 503 NoHealthyDevice, 500 otherwise.
int http_status(ErrorCode code);

/// {"error": {"code": "<ErrorCode name>", "message": "..."}}
nlohmann::json error_body(ErrorCode code, const std::string& message);

class HttpServer {
public:
    HttpServer(Service& service, const ServiceConfig& config);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds host:port from the config; port 0 picks a free port. Returns
    /// the bound port. Throws Error(Io).
    int bind();
    /// Serves on the bound socket until stop(). Blocks.
    void serve();
    /// bind() plus serve() on a background thread.
    int start();
    void stop();
    [[nodiscard]] int port() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ministack::service
