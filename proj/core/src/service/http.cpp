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


#include "ministack/service/http.hpp"

#include <thread>

#include <httplib.h>

namespace ministack::service {

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax:
        case ErrorCode::UnsupportedGate:
        case ErrorCode::Index:
        case ErrorCode::Level:
        case ErrorCode::TooLarge:
        case ErrorCode::MeasurePresent:
        case ErrorCode::DimMismatch:
        case ErrorCode::Validation:
        case ErrorCode::Limit:
        case ErrorCode::UnknownKey:
        case ErrorCode::InvalidPolicy:
        case ErrorCode::UnknownPolicy:
        case ErrorCode::UnknownPass:
        case ErrorCode::NoDecomposition:
        case ErrorCode::TooWide:
        case ErrorCode::DisconnectedDevice:
            return 400;
        case ErrorCode::Auth:
            return 401;
        case ErrorCode::UnknownDevice:
        case ErrorCode::UnknownJob:
            return 404;
        case ErrorCode::AlreadyClosed:
        case ErrorCode::NotDone:
        case ErrorCode::AlreadyTerminal:
        case ErrorCode::IllegalTransition:
        case ErrorCode::DuplicateDevice:
            return 409;
        case ErrorCode::NoHealthyDevice:
            return 503;
        default:
            return 500;
    }
}

nlohmann::json error_body(ErrorCode code, const std::string& message) {
    return {{"error", {{"code", error_code_name(code)}, {"message", message}}}};
}

namespace {

void reply(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, ErrorCode code, const std::string& message) {
    reply(res, http_status(code), error_body(code, message));
}

std::string bearer(const httplib::Request& req) {
    const auto header = req.get_header_value("Authorization");
    constexpr std::string_view prefix = "Bearer ";
    if (header.size() <= prefix.size() || header.compare(0, prefix.size(), prefix) != 0) {
        throw Error(ErrorCode::Auth, "missing bearer token");
    }
    return header.substr(prefix.size());
}

nlohmann::json parse_body(const httplib::Request& req) {
    auto j = nlohmann::json::parse(req.body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::Syntax, "request body is not valid JSON");
    return j;
}

}  // namespace

struct HttpServer::Impl {
    Service& service;
    ServiceConfig config;
    httplib::Server server;
    std::vector<Cidr> local;
    int port = -1;
    std::thread thread;

    Impl(Service& s, const ServiceConfig& c) : service(s), config(c) {
        for (const auto& cidr : config.local_cidrs) local.push_back(*parse_cidr(cidr));
        routes();
    }

    using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

    /// Wraps a handler so every ministack::Error becomes its JSON error body.
    static httplib::Server::Handler guarded(Handler h) {
        return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
            try {
                h(req, res);
            } catch (const Error& e) {
                reply_error(res, e.code(), e.what());
            } catch (const std::exception& e) {
                reply(res, 500, {{"error", {{"code", "Internal"}, {"message", e.what()}}}});
            }
        };
    }

    void routes() {
        server.Post("/v1/sessions", guarded([this](const auto& req, auto& res) {
            const auto body = parse_body(req);
            if (!body.is_object() || !body.contains("token") || !body.at("token").is_string()) {
                throw Error(ErrorCode::Validation, "expected {\"token\": string}");
            }
            const Session s = service.open_session(body.at("token").template get<std::string>());
            reply(res, 201, {{"session_id", s.session_id}, {"created_at", s.created_at}});
        }));
        server.Delete(R"(/v1/sessions/([^/]+))", guarded([this](const auto& req, auto& res) {
            const std::string id = req.matches[1];
            if (bearer(req) != id) throw Error(ErrorCode::Auth, "a session can only close itself");
            service.close_session(id);
            reply(res, 200, {{"session_id", id}, {"open", false}});
        }));

        server.Post("/v1/jobs", guarded([this](const auto& req, auto& res) {
            const auto session = bearer(req);
            service.authenticate(session);
            SubmissionRequest request = parse_submission(parse_body(req));
            request.origin = detect_origin(req.remote_addr, req.has_header(config.gateway_header.c_str()), local);
            const JobId id = service.submit(session, std::move(request));
            reply(res, 202, {{"job_id", id}});
        }));
        server.Get("/v1/jobs", guarded([this](const auto& req, auto& res) {
            reply(res, 200, {{"jobs", service.list_jobs(bearer(req))}});
        }));
        server.Get(R"(/v1/jobs/([^/]+))", guarded([this](const auto& req, auto& res) {
            reply(res, 200, service.job_view(bearer(req), req.matches[1]));
        }));
        server.Get(R"(/v1/jobs/([^/]+)/result)", guarded([this](const auto& req, auto& res) {
            reply(res, 200, service.result(bearer(req), req.matches[1]));
        }));
        server.Delete(R"(/v1/jobs/([^/]+))", guarded([this](const auto& req, auto& res) {
            const auto session = bearer(req);
            const std::string id = req.matches[1];
            service.cancel(session, id);
            reply(res, 200, service.job_view(session, id));
        }));

        server.Get("/v1/devices", guarded([this](const auto& req, auto& res) {
            service.authenticate(bearer(req));
            reply(res, 200, {{"devices", service.list_devices()}});
        }));
        server.Get(R"(/v1/devices/([^/]+))", guarded([this](const auto& req, auto& res) {
            service.authenticate(bearer(req));
            reply(res, 200, service.device(req.matches[1]));
        }));
        server.Get(R"(/v1/devices/([^/]+)/telemetry)", guarded([this](const auto& req, auto& res) {
            service.authenticate(bearer(req));
            reply(res, 200, service.telemetry(req.matches[1]));
        }));

        if (config.static_dir) server.set_mount_point("/", config.static_dir->string());
        server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
            if (res.status == 404 && res.body.empty()) {
                reply(res, 404, {{"error", {{"code", "NotFound"}, {"message", "no such endpoint"}}}});
            }
        });
    }
};

HttpServer::HttpServer(Service& service, const ServiceConfig& config)
    : impl_(std::make_unique<Impl>(service, config)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
    auto& s = impl_->server;
    const auto& c = impl_->config;
    const int port = c.port == 0 ? s.bind_to_any_port(c.host) : (s.bind_to_port(c.host, c.port) ? c.port : -1);
    if (port < 0) throw Error(ErrorCode::Io, "cannot bind " + c.host + ":" + std::to_string(c.port));
    impl_->port = port;
    return port;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

int HttpServer::start() {
    const int port = bind();
    impl_->thread = std::thread([this] { serve(); });
    impl_->server.wait_until_ready();
    return port;
}

void HttpServer::stop() {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

int HttpServer::port() const { return impl_->port; }

}  // namespace ministack::service
