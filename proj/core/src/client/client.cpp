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


#include "ministack/client/client.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "ministack/error.hpp"

namespace ministack::client {

namespace {

constexpr auto kWatchInterval = std::chrono::milliseconds(500);

bool terminal_state(const std::string& s) { return s == "DONE" || s == "FAILED" || s == "CANCELLED"; }

httplib::Headers auth_headers(const std::string& session) {
    if (session.empty()) return {};
    return {{"Authorization", "Bearer " + session}};
}

}  // namespace

std::optional<Endpoint> parse_endpoint(std::string_view url) {
    constexpr std::string_view scheme = "http://";
    if (url.substr(0, scheme.size()) != scheme) return std::nullopt;
    url.remove_prefix(scheme.size());
    Endpoint e;
    const auto slash = url.find('/');
    std::string_view authority = url.substr(0, slash);
    if (slash != std::string_view::npos) {
        e.base_path = std::string(url.substr(slash));
        while (!e.base_path.empty() && e.base_path.back() == '/') e.base_path.pop_back();
    }
    const auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
        const auto digits = authority.substr(colon + 1);
        int port = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || port < 1 || port > 65535) {
            return std::nullopt;
        }
        e.port = port;
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) return std::nullopt;
    e.host = std::string(authority);
    return e;
}

EnvLookup process_environment() {
    return [](const std::string& name) -> std::optional<std::string> {
        const char* v = std::getenv(name.c_str());
        if (!v) return std::nullopt;
        return std::string(v);
    };
}

std::filesystem::path default_config_path(const EnvLookup& env) {
    if (auto xdg = env("XDG_CONFIG_HOME"); xdg && !xdg->empty()) {
        return std::filesystem::path(*xdg) / "ministack" / "config.json";
    }
    const auto home = env("HOME").value_or(".");
    return std::filesystem::path(home) / ".config" / "ministack" / "config.json";
}

CliConfig resolve_config(const ConfigFlags& flags, const EnvLookup& env) {
    CliConfig c;
    std::optional<std::string> output;
    const auto file = flags.config_file.value_or(default_config_path(env));
    if (std::ifstream in(file); in) {
        auto j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::Config, "malformed config file " + file.string());
        try {
            c.endpoint = j.value("endpoint", c.endpoint);
            c.token = j.value("token", c.token);
            if (j.contains("output")) output = j.at("output").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::Config, "config file " + file.string() + ": " + e.what());
        }
    } else if (flags.config_file) {
        throw Error(ErrorCode::Config, "cannot read config file " + file.string());
    }
    if (auto v = env("MINISTACK_ENDPOINT")) c.endpoint = *v;
    if (auto v = env("MINISTACK_TOKEN")) c.token = *v;
    if (flags.endpoint) c.endpoint = *flags.endpoint;
    if (flags.token) c.token = *flags.token;
    if (flags.output) output = flags.output;

    if (!parse_endpoint(c.endpoint)) throw Error(ErrorCode::Config, "endpoint '" + c.endpoint + "' is not an http:// URL");
    if (output) {
        if (*output == "table") {
            c.output = OutputFormat::Table;
        } else if (*output == "json") {
            c.output = OutputFormat::Json;
        } else {
            throw Error(ErrorCode::Config, "output must be 'table' or 'json', got '" + *output + "'");
        }
    }
    return c;
}

// -- HTTP -----------------------------------------------------------------------

ApiClient::ApiClient(const CliConfig& config) : token_(config.token) {
    auto e = parse_endpoint(config.endpoint);
    if (!e) throw Error(ErrorCode::Config, "endpoint '" + config.endpoint + "' is not an http:// URL");
    endpoint_ = *e;
}

namespace {

template <typename Call>
HttpResponse perform(const Endpoint& e, Call&& call) {
    httplib::Client cli(e.host, e.port);
    cli.set_connection_timeout(5);
    cli.set_read_timeout(30);
    auto res = call(cli);
    if (!res) {
        throw Error(ErrorCode::Io, "cannot reach " + e.host + ":" + std::to_string(e.port) + " (" +
                                       httplib::to_string(res.error()) + ")");
    }
    return {res->status, res->body};
}

}  // namespace

HttpResponse ApiClient::get(const std::string& path, const std::string& session) const {
    return perform(endpoint_, [&](httplib::Client& c) { return c.Get(endpoint_.base_path + path, auth_headers(session)); });
}

HttpResponse ApiClient::post(const std::string& path, const nlohmann::json& body, const std::string& session) const {
    return perform(endpoint_, [&](httplib::Client& c) {
        return c.Post(endpoint_.base_path + path, auth_headers(session), body.dump(), "application/json");
    });
}

HttpResponse ApiClient::del(const std::string& path, const std::string& session) const {
    return perform(endpoint_, [&](httplib::Client& c) { return c.Delete(endpoint_.base_path + path, auth_headers(session)); });
}

std::string ApiClient::open_session() const {
    const auto res = post("/v1/sessions", {{"token", token_}});
    if (res.status != 201) throw Error(ErrorCode::Auth, "HTTP " + std::to_string(res.status) + ": " + res.body);
    return nlohmann::json::parse(res.body).at("session_id").get<std::string>();
}

// -- command line -----------------------------------------------------------------

namespace {

struct ApiError {
    HttpResponse response;
};

void require_ok(const HttpResponse& r) {
    if (r.status < 200 || r.status >= 300) throw ApiError{r};
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

std::string text(const nlohmann::json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void print_devices_table(const nlohmann::json& body, std::ostream& out) {
    out << std::left << std::setw(10) << "DEVICE" << std::setw(8) << "QUBITS" << std::setw(9) << "HEALTHY"
        << std::setw(8) << "F1Q" << std::setw(8) << "F2Q" << std::setw(9) << "READOUT" << std::setw(7) << "QUEUE"
        << "EST_WAIT_S\n";
    for (const auto& d : body.at("devices")) {
        const auto& f = d.at("fomac");
        out << std::left << std::setw(10) << d.at("device_id").get<std::string>() << std::setw(8)
            << d.at("properties").at("num_qubits").get<int>() << std::setw(9)
            << (f.at("healthy").get<bool>() ? "yes" : "no") << std::setw(8)
            << fixed(f.at("avg_1q_fidelity").get<double>(), 4) << std::setw(8)
            << fixed(f.at("avg_2q_fidelity").get<double>(), 4) << std::setw(9)
            << fixed(f.at("avg_readout_fidelity").get<double>(), 4) << std::setw(7)
            << d.at("queue_length").get<std::size_t>() << fixed(d.at("est_wait_s").get<double>(), 3) << "\n";
    }
}

void print_job_table(const nlohmann::json& job, std::ostream& out) {
    auto row = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(12) << k << v << "\n"; };
    row("job_id", text(job.at("job_id")));
    row("state", text(job.at("state")));
    row("device", text(job.value("device_id", nlohmann::json())));
    row("shots", text(job.at("shots")));
    row("priority", text(job.at("priority")));
    if (job.contains("origin")) row("origin", text(job.at("origin")));
    const auto& transitions = job.at("transitions");
    if (!transitions.empty()) {
        const double t0 = transitions.front().at("at").get<double>();
        for (const auto& t : transitions) {
            row("", text(t.at("state")) + " +" + fixed(t.at("at").get<double>() - t0, 3) + "s");
        }
    }
    if (job.contains("error")) row("error", text(job.at("error")));
}

void print_result_table(const nlohmann::json& env, std::ostream& out) {
    const auto& m = env.at("metadata");
    out << "job " << text(env.at("job_id")) << " on " << text(m.value("device_id", nlohmann::json()))
        << ", calibration " << text(m.value("calibrated_at", nlohmann::json())) << "\n";
    const auto& counts = env.at("counts").at("counts");
    const auto& hist = env.at("histogram");
    const auto& mitigated = env.at("mitigated_histogram");
    out << std::left << std::setw(18) << "BITSTRING" << std::setw(10) << "COUNT" << std::setw(10) << "FREQ";
    if (!mitigated.is_null()) out << "MITIGATED";
    out << "\n";
    std::set<std::string> keys;
    for (const auto& [k, _] : hist.items()) keys.insert(k);
    if (!mitigated.is_null()) {
        for (const auto& [k, _] : mitigated.items()) keys.insert(k);
    }
    for (const auto& k : keys) {
        out << std::left << std::setw(18) << (k.empty() ? "(none)" : k) << std::setw(10)
            << (counts.contains(k) ? counts.at(k).get<std::uint64_t>() : 0) << std::setw(10)
            << fixed(hist.value(k, 0.0), 4);
        if (!mitigated.is_null()) out << fixed(mitigated.value(k, 0.0), 4);
        out << "\n";
    }
    if (m.contains("mitigation_error")) out << "mitigation: " << text(m.at("mitigation_error")) << "\n";
}

int job_exit_code(const nlohmann::json& job) {
    const auto state = job.at("state").get<std::string>();
    return state == "FAILED" || state == "CANCELLED" ? 1 : 0;
}

std::string slurp(const std::string& file) {
    if (file == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + file);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
    CLI::App app{"Command-line client for the ministack service.", "ministack"};
    app.require_subcommand(1);
    ConfigFlags flags;
    app.add_option("--endpoint", flags.endpoint, "Service URL, e.g. http://127.0.0.1:8080");
    app.add_option("--token", flags.token, "Access token");
    app.add_option("--output", flags.output, "table or json");
    app.add_option("--config", flags.config_file, "Config file (default: per-user config)");

    auto* devices = app.add_subcommand("devices", "List devices with health and queue state");

    auto* submit = app.add_subcommand("submit", "Submit a circuit file ('-' for stdin)");
    std::string file;
    int shots = 1000;
    std::optional<int> priority;
    std::optional<std::string> device, policy;
    std::optional<std::uint64_t> seed;
    bool mitigate = false;
    submit->add_option("file", file, "Circuit source")->required();
    submit->add_option("--shots", shots, "Number of shots")->capture_default_str();
    submit->add_option("--priority", priority, "0 (lowest) to 9");
    submit->add_option("--device", device, "Run on this device instead of letting the scheduler pick");
    submit->add_option("--policy", policy, "w_esp,w_wait,w_exec");
    submit->add_flag("--mitigate", mitigate, "Request readout-error mitigation");
    submit->add_option("--seed", seed, "Pin the sampling seed");

    std::string job_id;
    auto* status = app.add_subcommand("status", "Show a job");
    auto* result = app.add_subcommand("result", "Show a finished job's result");
    auto* cancel = app.add_subcommand("cancel", "Cancel a job");
    auto* watch = app.add_subcommand("watch", "Poll a job until it finishes");
    for (auto* sub : {status, result, cancel, watch}) sub->add_option("job_id", job_id, "Job id")->required();
    for (auto* sub : {devices, submit, status, result, cancel, watch}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    nlohmann::json policy_body;
    if (policy) {
        std::vector<double> w;
        std::stringstream ss(*policy);
        std::string part;
        try {
            while (std::getline(ss, part, ',')) w.push_back(std::stod(part));
        } catch (const std::exception&) {
            w.clear();
        }
        if (w.size() != 3) {
            err << "usage error: --policy expects three numbers w_esp,w_wait,w_exec\n";
            return 2;
        }
        policy_body = {{"w_esp", w[0]}, {"w_wait", w[1]}, {"w_exec", w[2]}};
    }

    std::string source;
    if (submit->parsed()) {
        try {
            source = slurp(file);
        } catch (const Error& e) {
            err << "usage error: " << e.what() << "\n";
            return 2;
        }
    }

    CliConfig config;
    try {
        config = resolve_config(flags, env);
    } catch (const Error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    const bool json = config.output == OutputFormat::Json;

    try {
        const ApiClient api(config);
        const std::string session = api.open_session();

        if (devices->parsed()) {
            const auto r = api.get("/v1/devices", session);
            require_ok(r);
            if (json) {
                out << r.body << "\n";
            } else {
                print_devices_table(nlohmann::json::parse(r.body), out);
            }
            return 0;
        }
        if (submit->parsed()) {
            nlohmann::json body{{"circuit", source}, {"shots", shots}, {"mitigate", mitigate}};
            if (priority) body["priority"] = *priority;
            if (device) body["device"] = *device;
            if (policy) body["policy"] = policy_body;
            if (seed) body["seed"] = *seed;
            const auto r = api.post("/v1/jobs", body, session);
            require_ok(r);
            if (json) {
                out << r.body << "\n";
            } else {
                out << nlohmann::json::parse(r.body).at("job_id").get<std::string>() << "\n";
            }
            return 0;
        }
        if (status->parsed() || cancel->parsed()) {
            const auto r = status->parsed() ? api.get("/v1/jobs/" + job_id, session) : api.del("/v1/jobs/" + job_id, session);
            require_ok(r);
            const auto job = nlohmann::json::parse(r.body);
            if (json) {
                out << r.body << "\n";
            } else {
                print_job_table(job, out);
            }
            return status->parsed() ? job_exit_code(job) : 0;
        }
        if (result->parsed()) {
            const auto r = api.get("/v1/jobs/" + job_id + "/result", session);
            require_ok(r);
            if (json) {
                out << r.body << "\n";
            } else {
                print_result_table(nlohmann::json::parse(r.body), out);
            }
            return 0;
        }
        if (watch->parsed()) {
            std::string last_state;
            while (true) {
                const auto r = api.get("/v1/jobs/" + job_id, session);
                require_ok(r);
                const auto job = nlohmann::json::parse(r.body);
                const auto state = job.at("state").get<std::string>();
                if (state != last_state) {
                    if (json) {
                        out << r.body << "\n";
                    } else {
                        out << job_id << " " << state << "\n";
                    }
                    out.flush();
                    last_state = state;
                }
                if (terminal_state(state)) {
                    if (!json && job.contains("error")) out << "error: " << text(job.at("error")) << "\n";
                    return job_exit_code(job);
                }
                std::this_thread::sleep_for(kWatchInterval);
            }
        }
    } catch (const ApiError& e) {
        err << "error: HTTP " << e.response.status << ": " << e.response.body << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: unexpected response: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ministack::client
