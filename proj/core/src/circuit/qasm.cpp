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

#include "ministack/circuit/qasm.hpp"

#include <cctype>
#include <charconv>
#include <numbers>
#include <optional>
#include <vector>

#include "ministack/error.hpp"

namespace ministack::circuit {
namespace {

enum class Tok { Ident, Number, String, Arrow, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                t.kind = Tok::Number;
                lex_number(t.text);
            } else if (c == '"') {
                t.kind = Tok::String;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') t.text += advance();
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw SyntaxError(ErrorCode::Syntax, "unterminated string", t.line, t.column);
                }
                advance();
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                t.kind = Tok::Arrow;
                t.text = "->";
                advance();
                advance();
            } else if (std::string_view(";,[]()+-*/").find(c) != std::string_view::npos) {
                t.kind = Tok::Symbol;
                t.text = std::string(1, advance());
            } else {
                throw SyntaxError(ErrorCode::Syntax, std::string("unexpected character '") + c + "'", t.line,
                                  t.column);
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                return;
            }
        }
    }

    void lex_number(std::string& out) {
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) out += advance();
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            out += advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            out += advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) out += advance();
            digits();
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Register {
    std::string name;
    int offset;
    int size;
};

struct PendingOp {
    GateOp op;
    int line;
    int column;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, const AngleBindings& bindings)
        : toks_(std::move(tokens)), bindings_(bindings) {}

    double expression_only() {
        const double v = expr();
        if (peek().kind != Tok::End) fail(peek(), "trailing input after expression");
        return v;
    }

    QuantumCircuit program() {
        const Token& head = peek();
        if (head.kind != Tok::Ident || head.text != "OPENQASM") fail(head, "expected 'OPENQASM 2.0;' header");
        next();
        const Token& version = next();
        if (version.kind != Tok::Number || (version.text != "2.0" && version.text != "2")) {
            fail(version, "unsupported version (expected 2.0)");
        }
        expect_symbol(";");

        while (peek().kind != Tok::End) statement();

        QuantumCircuit circuit(qubits_, clbits_);
        for (auto& p : ops_) {
            try {
                circuit.append(std::move(p.op));
            } catch (const Error& e) {
                throw SyntaxError(e.code(), e.what(), p.line, p.column);
            }
        }
        return circuit;
    }

private:
    [[noreturn]] static void fail(const Token& t, const std::string& msg, ErrorCode code = ErrorCode::Syntax) {
        throw SyntaxError(code, msg, t.line, t.column);
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::End) ++pos_;
        return t;
    }
    bool at_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
    void expect_symbol(std::string_view s) {
        if (!at_symbol(s)) fail(peek(), "expected '" + std::string(s) + "'");
        next();
    }
    const Token& expect_ident() {
        if (peek().kind != Tok::Ident) fail(peek(), "expected identifier");
        return next();
    }
    int expect_int() {
        const Token& t = peek();
        int v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (t.kind != Tok::Number || ec != std::errc() || p != t.text.data() + t.text.size()) {
            fail(t, "expected integer");
        }
        next();
        return v;
    }

    void statement() {
        const Token& kw = expect_ident();
        if (kw.text == "include") {
            if (peek().kind != Tok::String) fail(peek(), "expected file name");
            next();
            expect_symbol(";");
        } else if (kw.text == "qreg" || kw.text == "creg") {
            declare(kw.text == "qreg");
        } else if (kw.text == "measure") {
            measure(kw);
        } else if (kw.text == "barrier") {
            std::vector<int> qs;
            for (auto& arg : arg_list(true)) qs.insert(qs.end(), arg.begin(), arg.end());
            expect_symbol(";");
            ops_.push_back({make_op("barrier", std::move(qs)), kw.line, kw.column});
        } else {
            gate(kw);
        }
    }

    void declare(bool quantum) {
        const Token& name = expect_ident();
        expect_symbol("[");
        const Token& size_tok = peek();
        const int size = expect_int();
        if (size <= 0) fail(size_tok, "register size must be positive");
        expect_symbol("]");
        expect_symbol(";");
        auto& regs = quantum ? qregs_ : cregs_;
        for (const auto& r : qregs_) {
            if (r.name == name.text) fail(name, "register '" + name.text + "' redeclared");
        }
        for (const auto& r : cregs_) {
            if (r.name == name.text) fail(name, "register '" + name.text + "' redeclared");
        }
        int& total = quantum ? qubits_ : clbits_;
        regs.push_back({name.text, total, size});
        total += size;
    }

    // One argument resolves to a single index or, for a bare register name,
    // every index of that register.
    std::vector<int> argument(bool quantum) {
        const Token& name = expect_ident();
        const auto& regs = quantum ? qregs_ : cregs_;
        const Register* reg = nullptr;
        for (const auto& r : regs) {
            if (r.name == name.text) reg = &r;
        }
        if (!reg) {
            fail(name, std::string("unknown ") + (quantum ? "quantum" : "classical") + " register '" + name.text + "'");
        }
        if (!at_symbol("[")) {
            std::vector<int> all(reg->size);
            for (int i = 0; i < reg->size; ++i) all[i] = reg->offset + i;
            return all;
        }
        next();
        const Token& idx_tok = peek();
        const int idx = expect_int();
        if (idx < 0 || idx >= reg->size) {
            fail(idx_tok,
                 "index " + std::to_string(idx) + " out of range for register '" + reg->name + "[" +
                     std::to_string(reg->size) + "]'",
                 ErrorCode::Index);
        }
        expect_symbol("]");
        return {reg->offset + idx};
    }

    std::vector<std::vector<int>> arg_list(bool quantum) {
        std::vector<std::vector<int>> args;
        args.push_back(argument(quantum));
        while (at_symbol(",")) {
            next();
            args.push_back(argument(quantum));
        }
        return args;
    }

    static std::optional<std::size_t> broadcast_width(const std::vector<std::vector<int>>& args, const Token& at) {
        std::optional<std::size_t> width;
        for (const auto& a : args) {
            if (a.size() == 1) continue;
            if (width && *width != a.size()) fail(at, "register size mismatch in broadcast");
            width = a.size();
        }
        return width;
    }

    void measure(const Token& kw) {
        auto q = argument(true);
        if (peek().kind != Tok::Arrow) fail(peek(), "expected '->'");
        next();
        auto c = argument(false);
        expect_symbol(";");
        if (q.size() != c.size()) fail(kw, "measure register sizes differ");
        for (std::size_t i = 0; i < q.size(); ++i) ops_.push_back({make_measure(q[i], c[i]), kw.line, kw.column});
    }

    void gate(const Token& kw) {
        auto info = find_gate(kw.text);
        if (!info || !info->generic) fail(kw, "unsupported gate '" + kw.text + "'", ErrorCode::UnsupportedGate);
        std::vector<double> params;
        if (at_symbol("(")) {
            next();
            if (!at_symbol(")")) {
                params.push_back(expr());
                while (at_symbol(",")) {
                    next();
                    params.push_back(expr());
                }
            }
            expect_symbol(")");
        }
        auto args = arg_list(true);
        expect_symbol(";");
        const auto width = broadcast_width(args, kw);
        const std::size_t n = width.value_or(1);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> qs;
            for (const auto& a : args) qs.push_back(a.size() == 1 ? a[0] : a[i]);
            ops_.push_back({make_op(kw.text, std::move(qs), params), kw.line, kw.column});
        }
    }

    double expr() {
        double v = term();
        while (at_symbol("+") || at_symbol("-")) {
            const bool plus = next().text == "+";
            const double rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (at_symbol("*") || at_symbol("/")) {
            const bool mul = next().text == "*";
            const double rhs = unary();
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double unary() {
        if (at_symbol("-")) {
            next();
            return -unary();
        }
        if (at_symbol("+")) {
            next();
            return unary();
        }
        return primary();
    }

    double primary() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            next();
            double v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || p != t.text.data() + t.text.size()) fail(t, "malformed number '" + t.text + "'");
            return v;
        }
        if (t.kind == Tok::Ident) {
            next();
            if (t.text == "pi") return std::numbers::pi;
            auto it = bindings_.find(t.text);
            if (it == bindings_.end()) fail(t, "unknown identifier '" + t.text + "' in expression");
            return it->second;
        }
        if (at_symbol("(")) {
            next();
            const double v = expr();
            expect_symbol(")");
            return v;
        }
        fail(t, "expected expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const AngleBindings& bindings_;
    std::vector<Register> qregs_;
    std::vector<Register> cregs_;
    int qubits_ = 0;
    int clbits_ = 0;
    std::vector<PendingOp> ops_;
};

}  // namespace

double evaluate_angle(std::string_view expression, const AngleBindings& bindings) {
    Parser p(Lexer(expression).run(), bindings);
    return p.expression_only();
}

QuantumCircuit parse_circuit(std::string_view text) {
    static const AngleBindings kNone;
    Parser p(Lexer(text).run(), kNone);
    return p.program();
}

std::string to_qasm(const QuantumCircuit& circuit) {
    if (circuit.level() != Level::Generic) throw Error(ErrorCode::Level, "to_qasm requires a GENERIC circuit");
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (circuit.num_qubits() > 0) out += "qreg q[" + std::to_string(circuit.num_qubits()) + "];\n";
    if (circuit.num_clbits() > 0) out += "creg c[" + std::to_string(circuit.num_clbits()) + "];\n";
    for (const auto& op : circuit.ops()) {
        if (op.is_measure()) {
            out += "measure q[" + std::to_string(op.qubits[0]) + "] -> c[" + std::to_string(op.clbits[0]) + "];\n";
            continue;
        }
        out += op.name;
        if (!op.params.empty()) {
            out += "(";
            for (std::size_t i = 0; i < op.params.size(); ++i) {
                if (i) out += ",";
                out += format_angle(op.params[i]);
            }
            out += ")";
        }
        for (std::size_t i = 0; i < op.qubits.size(); ++i) {
            out += (i ? ",q[" : " q[") + std::to_string(op.qubits[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

}  // namespace ministack::circuit
