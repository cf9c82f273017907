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


// ministack-server: registers the simulated devices and serves the HTTP API.

#include <csignal>
#include <iostream>
#include <memory>
#include <thread>

#include <CLI11.hpp>

#include "ministack/backends/profile.hpp"
#include "ministack/backends/simulator.hpp"
#include "ministack/error.hpp"
#include "ministack/qdmi/qdmi.hpp"
#include "ministack/service/http.hpp"
#include "ministack/service/service.hpp"

using namespace ministack;

int main(int argc, char** argv) {
    CLI::App app{"Serves the ministack HTTP API over the simulated devices.", "ministack-server"};
    std::optional<std::filesystem::path> config_path;
    std::optional<std::string> host;
    std::optional<int> port;
    std::vector<std::string> tokens;
    app.add_option("--config", config_path, "Service configuration file")->check(CLI::ExistingFile);
    app.add_option("--host", host, "Listen address (overrides the config)");
    app.add_option("--port", port, "Listen port, 0 for any (overrides the config)");
    app.add_option("--allow-token", tokens, "Accept this token in addition to the allow-list file");
    CLI11_PARSE(app, argc, argv);

    // Signals are collected by one thread so shutdown runs outside a handler.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    try {
        service::ServiceConfig config = config_path ? service::load_config(*config_path) : service::ServiceConfig{};
        if (host) config.host = *host;
        if (port) config.port = *port;
        config.validate();

        QdmiOptions options;
        if (config.allow_list_path) options.allow_list = load_allow_list(*config.allow_list_path);
        options.allow_list.insert(tokens.begin(), tokens.end());
        options.max_shots = config.max_shots;
        if (options.allow_list.empty()) std::cerr << "warning: allow-list is empty; every session will be refused\n";
        auto qdmi = std::make_shared<Qdmi>(options);

        auto profiles = backends::builtin_profiles();
        for (const auto& p : config.profiles) profiles.push_back(backends::load_profile(p));
        for (auto& p : profiles) {
            backends::SimulatorOptions sim;
            sim.readout_noise = config.readout_noise;
            sim.failure_rate = config.failure_rate;
            sim.failure_seed = p.telemetry.rng_seed;
            qdmi->register_device(std::make_shared<backends::SimulatorDevice>(std::move(p), sim));
        }

        service::Service svc(qdmi, config);
        service::HttpServer http(svc, config);
        const int bound = http.bind();
        std::cout << "ministack-server listening on http://" << config.host << ":" << bound << std::endl;

        std::thread waiter([&] {
            int sig = 0;
            sigwait(&signals, &sig);
            http.stop();
        });
        http.serve();
        if (waiter.joinable()) {
            // serve() can also end on its own; wake the waiter in that case.
            pthread_kill(waiter.native_handle(), SIGTERM);
            waiter.join();
        }
    } catch (const Error& e) {
        std::cerr << "ministack-server: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
