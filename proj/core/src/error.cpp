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

#include "ministack/error.hpp"

namespace ministack {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "SyntaxError";
        case ErrorCode::UnsupportedGate: return "UnsupportedGate";
        case ErrorCode::Index: return "IndexError";
        case ErrorCode::Level: return "LevelError";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::MeasurePresent: return "MeasurePresent";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::Auth: return "AuthError";
        case ErrorCode::AlreadyClosed: return "AlreadyClosed";
        case ErrorCode::UnknownDevice: return "UnknownDevice";
        case ErrorCode::UnknownKey: return "UnknownKey";
        case ErrorCode::Validation: return "ValidationError";
        case ErrorCode::Limit: return "LimitError";
        case ErrorCode::UnknownJob: return "UnknownJob";
        case ErrorCode::NotDone: return "NotDone";
        case ErrorCode::AlreadyTerminal: return "AlreadyTerminal";
        case ErrorCode::InvalidProperties: return "InvalidProperties";
        case ErrorCode::DuplicateDevice: return "DuplicateDevice";
        case ErrorCode::IllegalTransition: return "IllegalTransition";
        case ErrorCode::Cancelled: return "Cancelled";
        case ErrorCode::ExecutionFailed: return "ExecutionFailed";
        case ErrorCode::NoDecomposition: return "NoDecomposition";
        case ErrorCode::TooWide: return "TooWide";
        case ErrorCode::DisconnectedDevice: return "DisconnectedDevice";
        case ErrorCode::UnknownPolicy: return "UnknownPolicy";
        case ErrorCode::UnknownPass: return "UnknownPass";
        case ErrorCode::NoHealthyDevice: return "NoHealthyDevice";
        case ErrorCode::EmptyQueue: return "EmptyQueue";
        case ErrorCode::Overlap: return "OverlapError";
        case ErrorCode::InvalidPolicy: return "InvalidPolicy";
        case ErrorCode::SingularConfusion: return "SingularConfusion";
        case ErrorCode::Config: return "ConfigError";
        case ErrorCode::Io: return "IoError";
    }
    return "Error";
}

SyntaxError::SyntaxError(ErrorCode code, const std::string& message, int line, int column)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace ministack
