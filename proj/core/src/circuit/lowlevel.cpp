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

#include "ministack/circuit/lowlevel.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "ministack/error.hpp"

namespace ministack::circuit {
namespace {

constexpr std::string_view kMagic = "; ministack lowlevel v1";

std::string layout_text(const Layout& layout) {
    std::string out;
    for (int l = 0; l < layout.size(); ++l) {
        out += " " + std::to_string(l) + ":" + std::to_string(layout.physical(l));
    }
    return out;
}

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) words.push_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

template <typename T>
std::optional<T> to_number(std::string_view s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

class LineReader {
public:
    LineReader(std::string_view text) : text_(text) {}

    bool next(std::string_view& line) {
        if (pos_ >= text_.size()) return false;
        const auto end = text_.find('\n', pos_);
        line = text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
        pos_ = end == std::string_view::npos ? text_.size() : end + 1;
        ++line_no_;
        return true;
    }
    int line_no() const { return line_no_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
};

}  // namespace

std::string emit_lowlevel(const QuantumCircuit& circuit) {
    if (circuit.level() != Level::Native) {
        throw Error(ErrorCode::Level, "emit_lowlevel requires a NATIVE circuit, got GENERIC");
    }
    std::string out(kMagic);
    out += "\n.device " + circuit.device() + "\n";
    out += ".qubits " + std::to_string(circuit.num_qubits()) + "\n";
    out += ".clbits " + std::to_string(circuit.num_clbits()) + "\n";
    out += ".layout" + layout_text(circuit.layout()) + "\n";
    out += ".final" + layout_text(circuit.final_layout()) + "\n";
    for (const auto& op : circuit.ops()) {
        out += op.name;
        for (double p : op.params) out += " " + format_angle(p);
        for (int q : op.qubits) out += " q" + std::to_string(q);
        for (int c : op.clbits) out += " -> c" + std::to_string(c);
        out += "\n";
    }
    return out;
}

QuantumCircuit parse_lowlevel(std::string_view text) {
    LineReader reader(text);
    std::string_view line;
    auto fail = [&](const std::string& msg) -> void {
        throw SyntaxError(ErrorCode::Syntax, msg, reader.line_no(), 1);
    };

    if (!reader.next(line) || split_words(line) != split_words(kMagic)) fail("missing lowlevel header");

    std::string device;
    std::optional<int> qubits, clbits;
    std::optional<Layout> layout, final_layout;
    auto parse_layout = [&](std::span<const std::string_view> words) {
        std::vector<int> map;
        for (auto w : words) {
            const auto colon = w.find(':');
            auto l = colon == std::string_view::npos ? std::nullopt : to_number<int>(w.substr(0, colon));
            auto p = colon == std::string_view::npos ? std::nullopt : to_number<int>(w.substr(colon + 1));
            if (!l || !p || *l != static_cast<int>(map.size())) fail("malformed layout entry '" + std::string(w) + "'");
            map.push_back(*p);
        }
        return Layout(std::move(map));
    };

    // Header directives must precede instructions.
    std::optional<QuantumCircuit> circuit;
    while (reader.next(line)) {
        auto words = split_words(line);
        if (words.empty() || words[0].starts_with(";")) continue;
        const auto head = words[0];
        if (head.starts_with(".")) {
            if (circuit) fail("header directive after instructions");
            std::span<const std::string_view> rest(words.begin() + 1, words.end());
            if (head == ".device") {
                if (rest.size() != 1) fail(".device takes one name");
                device = std::string(rest[0]);
            } else if (head == ".qubits" || head == ".clbits") {
                auto n = rest.size() == 1 ? to_number<int>(rest[0]) : std::nullopt;
                if (!n || *n < 0) fail("malformed " + std::string(head));
                (head == ".qubits" ? qubits : clbits) = *n;
            } else if (head == ".layout") {
                layout = parse_layout(rest);
            } else if (head == ".final") {
                final_layout = parse_layout(rest);
            } else {
                fail("unknown directive '" + std::string(head) + "'");
            }
            continue;
        }
        if (!circuit) {
            if (device.empty() || !qubits || !clbits || !layout || !final_layout) fail("incomplete header");
            circuit.emplace(*qubits, *clbits, Level::Native);
            circuit->set_native(device, *layout, *final_layout);
        }
        GateOp op;
        op.name = std::string(head);
        std::size_t i = 1;
        for (; i < words.size() && !words[i].starts_with("q") && words[i] != "->"; ++i) {
            auto v = to_number<double>(words[i]);
            if (!v) fail("malformed parameter '" + std::string(words[i]) + "'");
            op.params.push_back(*v);
        }
        for (; i < words.size() && words[i].starts_with("q"); ++i) {
            auto q = to_number<int>(words[i].substr(1));
            if (!q) fail("malformed qubit '" + std::string(words[i]) + "'");
            op.qubits.push_back(*q);
        }
        if (i < words.size()) {
            auto c = (words[i] == "->" && i + 2 == words.size() && words[i + 1].starts_with("c"))
                         ? to_number<int>(words[i + 1].substr(1))
                         : std::nullopt;
            if (!c) fail("malformed instruction tail");
            op.clbits.push_back(*c);
        }
        try {
            circuit->append(std::move(op));
        } catch (const Error& e) {
            throw SyntaxError(e.code(), e.what(), reader.line_no(), 1);
        }
    }
    if (!circuit) {
        if (device.empty() || !qubits || !clbits || !layout || !final_layout) fail("incomplete header");
        circuit.emplace(*qubits, *clbits, Level::Native);
        circuit->set_native(device, *layout, *final_layout);
    }
    return *std::move(circuit);
}

}  // namespace ministack::circuit
