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

#pragma once

#include <string>
#include <string_view>

#include "vaql/circuit.hpp"
#include "vaql/error.hpp"

namespace vaql {

/// Parse failure with a 1-based position in the source text.
class SourceError : public Error {
public:
    enum class Kind { lex, syntax, semantic };

    SourceError(Kind kind, std::size_t line, std::size_t column, std::string message);

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

std::string_view to_string(SourceError::Kind kind) noexcept;

/// Parses the neutral circuit language:
///
///     program := header instr*
///     header  := "qubits" INT ";" "cbits" INT ";"
///     instr   := MNEMONIC ["(" FLOAT ")"] INT ["," INT] ";"
///              | "measure" INT "->" INT ";"
///
/// `#` starts a comment running to end of line. Circuit invariants are
/// enforced while parsing and reported as semantic errors.
Circuit parse_vaql(std::string_view text);

/// Canonical rendering: header line, one instruction per line, angles with
/// 17 significant digits. parse_vaql(print_vaql(c)) == c bit for bit.
std::string print_vaql(const Circuit& circuit);

/// Angle rendering with 17 significant digits (`%.17g` style); parses back exactly.
std::string format_angle(double value);

} // namespace vaql
