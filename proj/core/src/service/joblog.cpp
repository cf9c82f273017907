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


#include "ministack/service/joblog.hpp"

#include <string>

#include "ministack/error.hpp"

namespace ministack::service {

JobLog::JobLog(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    out_.open(path_, std::ios::app);
    if (!out_) throw Error(ErrorCode::Io, "cannot open job log '" + path_.string() + "'");
}

void JobLog::append(const nlohmann::json& entry) {
    const std::string line = entry.dump();
    std::lock_guard lock(mu_);
    out_ << line << '\n';
    out_.flush();
    if (!out_) throw Error(ErrorCode::Io, "write to job log '" + path_.string() + "' failed");
}

std::vector<nlohmann::json> JobLog::read(const std::filesystem::path& path) {
    std::vector<nlohmann::json> entries;
    std::ifstream in(path);
    if (!in) return entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (!j.is_discarded() && j.is_object()) entries.push_back(std::move(j));
    }
    return entries;
}

}  // namespace ministack::service
