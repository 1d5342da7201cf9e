// Copyright 2026 The vaql Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vaql/frontend.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace vaql {

SourceError::SourceError(Kind kind, std::size_t line, std::size_t column, std::string message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + std::string(to_string(kind)) +
            " error: " + message),
      kind_(kind), line_(line), column_(column), message_(std::move(message)) {}

std::string_view to_string(SourceError::Kind kind) noexcept {
    switch (kind) {
    case SourceError::Kind::lex: return "lex";
    case SourceError::Kind::syntax: return "syntax";
    case SourceError::Kind::semantic: return "semantic";
    }
    return "unknown";
}

namespace {

enum class Tok { ident, number, semicolon, comma, lparen, rparen, arrow, end };

struct Token {
    Tok type;
    std::string_view text;
    std::size_t line;
    std::size_t column;
};

std::string_view describe(Tok t) {
    switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::semicolon: return "';'";
    case Tok::comma: return "','";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::arrow: return "'->'";
    case Tok::end: return "end of input";
    }
    return "token";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, {}, line_, col_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    bool digit_at(std::size_t p) const {
        return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
    }

    Token next() {
        const std::size_t start = pos_, line = line_, col = col_;
        const char c = src_[pos_];
        auto single = [&](Tok t) {
            advance();
            return Token{t, src_.substr(start, 1), line, col};
        };
        switch (c) {
        case ';': return single(Tok::semicolon);
        case ',': return single(Tok::comma);
        case '(': return single(Tok::lparen);
        case ')': return single(Tok::rparen);
        default: break;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            advance();
            advance();
            return {Tok::arrow, src_.substr(start, 2), line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                advance();
            }
            return {Tok::ident, src_.substr(start, pos_ - start), line, col};
        }
        if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            return number(start, line, col);
        }
        throw SourceError(SourceError::Kind::lex, line, col,
                          std::string("unexpected character '") + c + "'");
    }

    // [+-] digits [. digits] [(e|E) [+-] digits], or [+-] . digits ...
    Token number(std::size_t start, std::size_t line, std::size_t col) {
        auto fail = [&] {
            throw SourceError(SourceError::Kind::lex, line, col, "malformed number");
        };
        if (src_[pos_] == '+' || src_[pos_] == '-') advance();
        bool mantissa = false;
        while (digit_at(pos_)) {
            advance();
            mantissa = true;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            while (digit_at(pos_)) {
                advance();
                mantissa = true;
            }
        }
        if (!mantissa) fail();
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
            if (!digit_at(pos_)) fail();
            while (digit_at(pos_)) advance();
        }
        if (pos_ < src_.size() &&
            (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '.')) {
            fail();
        }
        return {Tok::number, src_.substr(start, pos_ - start), line, col};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Circuit run() {
        expect_keyword("qubits");
        const Token& nq_tok = peek();
        const std::size_t nq = integer();
        expect(Tok::semicolon);
        expect_keyword("cbits");
        const std::size_t nc = integer();
        expect(Tok::semicolon);
        if (nq == 0) semantic(nq_tok, "circuit must have at least one qubit");
        if (nq > kMaxRegisterSize || nc > kMaxRegisterSize) {
            semantic(nq_tok, "register size exceeds " + std::to_string(kMaxRegisterSize));
        }
        Circuit circuit(nq, nc);
        while (peek().type != Tok::end) instruction(circuit);
        return circuit;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void syntax(const Token& at, const std::string& msg) const {
        throw SourceError(SourceError::Kind::syntax, at.line, at.column, msg);
    }
    [[noreturn]] void semantic(const Token& at, const std::string& msg) const {
        throw SourceError(SourceError::Kind::semantic, at.line, at.column, msg);
    }

    const Token& expect(Tok type) {
        const Token& t = peek();
        if (t.type != type) {
            syntax(t, "expected " + std::string(describe(type)) + ", found " + found(t));
        }
        return take();
    }

    void expect_keyword(std::string_view kw) {
        const Token& t = peek();
        if (t.type != Tok::ident || t.text != kw) {
            syntax(t, "expected '" + std::string(kw) + "', found " + found(t));
        }
        take();
    }

    static std::string found(const Token& t) {
        if (t.type == Tok::end) return "end of input";
        return "'" + std::string(t.text) + "'";
    }

    std::size_t integer() {
        const Token& t = peek();
        if (t.type != Tok::number) syntax(t, "expected integer, found " + found(t));
        std::uint64_t value = 0;
        const char* first = t.text.data();
        const char* last = first + t.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            if (ec == std::errc::result_out_of_range) semantic(t, "integer out of range");
            syntax(t, "expected non-negative integer, found " + found(t));
        }
        take();
        return static_cast<std::size_t>(value);
    }

    double angle() {
        const Token& t = peek();
        if (t.type != Tok::number) syntax(t, "expected angle, found " + found(t));
        std::string_view text = t.text;
        // from_chars rejects a leading '+'.
        if (!text.empty() && text.front() == '+') text.remove_prefix(1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
            semantic(t, "angle " + found(t) + " is not a finite number");
        }
        take();
        return value;
    }

    void instruction(Circuit& circuit) {
        const Token& head = peek();
        if (head.type != Tok::ident) syntax(head, "expected instruction, found " + found(head));
        take();
        Instruction instr;
        if (head.text == "measure") {
            Measure m;
            m.qubit = integer();
            expect(Tok::arrow);
            m.cbit = integer();
            instr = m;
        } else {
            auto kind = gate_from_mnemonic(head.text);
            if (!kind) syntax(head, "unknown instruction '" + std::string(head.text) + "'");
            double theta = 0.0;
            if (is_parametric(*kind)) {
                expect(Tok::lparen);
                theta = angle();
                expect(Tok::rparen);
            } else if (peek().type == Tok::lparen) {
                syntax(peek(), std::string(mnemonic(*kind)) + " takes no angle");
            }
            std::array<std::size_t, 2> q{};
            q[0] = integer();
            if (arity(*kind) == 2) {
                expect(Tok::comma);
                q[1] = integer();
            }
            instr = gates::make(*kind, std::span<const std::size_t>(q.data(), arity(*kind)), theta);
        }
        expect(Tok::semicolon);
        if (auto reason = circuit.check(instr)) semantic(head, *reason);
        circuit.append(instr);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Circuit parse_vaql(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

std::string format_angle(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string print_vaql(const Circuit& circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "; cbits " +
                      std::to_string(circuit.num_cbits()) + ";\n";
    for (const auto& instr : circuit.instructions()) {
        if (const auto* m = std::get_if<Measure>(&instr)) {
            out += "measure " + std::to_string(m->qubit) + " -> " + std::to_string(m->cbit) + ";\n";
            continue;
        }
        const auto& g = std::get<Gate>(instr);
        out += mnemonic(g.kind);
        if (is_parametric(g.kind)) out += "(" + format_angle(g.angle) + ")";
        out += " " + std::to_string(g.qubits[0]);
        if (arity(g.kind) == 2) out += ", " + std::to_string(g.qubits[1]);
        out += ";\n";
    }
    return out;
}

} // namespace vaql
