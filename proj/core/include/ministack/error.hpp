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

#include <stdexcept>
#include <string>
#include <string_view>

namespace ministack {

/// Every failure raised by the stack carries one of these codes. The service
/// layer maps them onto HTTP status codes, so keep the list closed.
enum class ErrorCode {
    // circuit-ir
    Syntax,
    UnsupportedGate,
    Index,
    Level,
    TooLarge,
    MeasurePresent,
    DimMismatch,
    // qdmi-core
    Auth,
    AlreadyClosed,
    UnknownDevice,
    UnknownKey,
    Validation,
    Limit,
    UnknownJob,
    NotDone,
    AlreadyTerminal,
    InvalidProperties,
    DuplicateDevice,
    IllegalTransition,
    // backends
    Cancelled,
    ExecutionFailed,
    // compiler
    NoDecomposition,
    TooWide,
    DisconnectedDevice,
    UnknownPolicy,
    UnknownPass,
    // scheduler
    NoHealthyDevice,
    EmptyQueue,
    Overlap,
    InvalidPolicy,
    // service
    SingularConfusion,
    Config,
    Io,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failures report the 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(ErrorCode code, const std::string& message, int line, int column);

    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace ministack
