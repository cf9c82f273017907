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


#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <vector>

#include <nlohmann/json.hpp>

namespace ministack::service {

/// Append-only JSON-lines file. Each append is flushed before returning.
class JobLog {
public:
    /// Opens (creating if needed) for appending. Throws Error(Io).
    explicit JobLog(std::filesystem::path path);

    void append(const nlohmann::json& entry);
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

    /// Every well-formed line of an existing log; a missing file reads as
    /// empty. A torn final line (crash mid-write) is skipped.
    static std::vector<nlohmann::json> read(const std::filesystem::path& path);

private:
    std::filesystem::path path_;
    std::mutex mu_;
    std::ofstream out_;
};

}  // namespace ministack::service
