// Copyright 2026 The quditcost Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file qcf.hpp
 * QCF, a line-oriented text format for qudit circuits.
 *
 *     # comment
 *     dim 3
 *     wires 2
 *     apply H 1
 *     apply CNOT 1 2
 *     apply P 1 : k=2
 *     apply U 1 : m=1,n=2
 *     measure 1 2
 *
 * The header (`dim`, then `wires`) is mandatory. Wires are 1-based. Gate
 * names are the family tokens of the catalog (H, Hdag, CNOT, CNOTdag, X, Z,
 * P, U, CZ, W, PX, PY, PZ, I); parameters must lie in [0, d). An optional
 * `measure` line ends the circuit.
 */

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "gates.hpp"

namespace qudit {

/// Syntax or semantic error in QCF input, with a 1-based line and column.
class QcfError : public std::runtime_error {
  public:
    QcfError(std::size_t line, std::size_t column, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line), column_(column), detail_(message) {}

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }
    [[nodiscard]] const std::string &detail() const { return detail_; }

  private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

namespace detail {

struct QcfToken {
    std::string_view text;
    std::size_t column; // 1-based
};

inline std::vector<QcfToken> qcf_tokenize(std::string_view text, std::size_t offset) {
    std::vector<QcfToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back({text.substr(start, i - start), offset + start + 1});
        }
    }
    return out;
}

inline long long qcf_integer(const QcfToken &tok, std::size_t line, const char *what) {
    long long value = 0;
    const auto *first = tok.text.data();
    const auto *last = first + tok.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw QcfError(line, tok.column,
                       std::string("expected integer ") + what + ", got '" +
                           std::string(tok.text) + "'");
    }
    return value;
}

} // namespace detail

inline Circuit parse_qcf(std::string_view text) {
    std::optional<int> dim;
    std::optional<Circuit> circuit;
    bool measured = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;

    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }

        std::string_view params_text;
        std::size_t params_offset = 0;
        if (const auto colon = line.find(':'); colon != std::string_view::npos) {
            params_text = line.substr(colon + 1);
            params_offset = colon + 1;
            line = line.substr(0, colon);
        }
        const auto tokens = detail::qcf_tokenize(line, 0);
        if (tokens.empty()) {
            if (!params_text.empty()) {
                throw QcfError(line_no, params_offset, "parameters without a statement");
            }
            continue;
        }
        const auto &keyword = tokens[0];
        const auto expect_count = [&](std::size_t n) {
            if (tokens.size() != n) {
                throw QcfError(line_no, tokens.size() > n ? tokens[n].column : keyword.column,
                               "'" + std::string(keyword.text) + "' takes " +
                                   std::to_string(n - 1) + " argument(s)");
            }
        };
        const auto reject_params = [&] {
            if (!params_text.empty()) {
                throw QcfError(line_no, params_offset,
                               "'" + std::string(keyword.text) + "' takes no parameters");
            }
        };

        if (measured) {
            throw QcfError(line_no, keyword.column, "nothing may follow 'measure'");
        }

        if (!dim) {
            if (keyword.text != "dim") {
                throw QcfError(line_no, keyword.column, "expected 'dim <d>' header");
            }
            expect_count(2);
            reject_params();
            const auto d = detail::qcf_integer(tokens[1], line_no, "dimension");
            if (d < 2 || d > 64) {
                throw QcfError(line_no, tokens[1].column, "dimension must be in [2, 64]");
            }
            dim = static_cast<int>(d);
            continue;
        }
        if (!circuit) {
            if (keyword.text != "wires") {
                throw QcfError(line_no, keyword.column, "expected 'wires <n>' header");
            }
            expect_count(2);
            reject_params();
            const auto n = detail::qcf_integer(tokens[1], line_no, "wire count");
            if (n < 1 || n > 24 ||
                ipow(static_cast<std::size_t>(*dim), static_cast<std::size_t>(n)) > (1U << 24)) {
                throw QcfError(line_no, tokens[1].column, "wire count out of range");
            }
            circuit.emplace(*dim, static_cast<std::size_t>(n));
            continue;
        }

        const auto parse_wires = [&](std::size_t first) {
            Wires wires;
            for (std::size_t t = first; t < tokens.size(); ++t) {
                const auto w = detail::qcf_integer(tokens[t], line_no, "wire");
                if (w < 1 || static_cast<std::size_t>(w) > circuit->num_wires()) {
                    throw QcfError(line_no, tokens[t].column,
                                   "wire " + std::to_string(w) + " out of range 1.." +
                                       std::to_string(circuit->num_wires()));
                }
                const auto zero_based = static_cast<std::size_t>(w - 1);
                if (std::find(wires.begin(), wires.end(), zero_based) != wires.end()) {
                    throw QcfError(line_no, tokens[t].column,
                                   "duplicate wire " + std::to_string(w));
                }
                wires.push_back(zero_based);
            }
            return wires;
        };

        if (keyword.text == "measure") {
            reject_params();
            if (tokens.size() < 2) {
                throw QcfError(line_no, keyword.column, "'measure' needs at least one wire");
            }
            circuit->measure(parse_wires(1));
            measured = true;
            continue;
        }
        if (keyword.text != "apply") {
            throw QcfError(line_no, keyword.column,
                           "unknown statement '" + std::string(keyword.text) + "'");
        }
        if (tokens.size() < 2) {
            throw QcfError(line_no, keyword.column, "'apply' needs a gate name");
        }
        const auto family = family_from_name(tokens[1].text);
        if (!family) {
            throw QcfError(line_no, tokens[1].column,
                           "unknown gate '" + std::string(tokens[1].text) + "'");
        }
        const auto &info = family_info(*family);
        if (tokens.size() - 2 != static_cast<std::size_t>(info.arity)) {
            throw QcfError(line_no, tokens[1].column,
                           "gate " + std::string(info.name) + " takes " +
                               std::to_string(info.arity) + " wire(s), got " +
                               std::to_string(tokens.size() - 2));
        }
        Wires wires = parse_wires(2);

        // key=value pairs after ':'
        std::vector<std::string> keys;
        std::vector<int> values;
        std::size_t cursor = 0;
        while (cursor <= params_text.size() && !params_text.empty()) {
            const std::size_t comma = std::min(params_text.find(',', cursor), params_text.size());
            const auto item_tokens =
                detail::qcf_tokenize(params_text.substr(cursor, comma - cursor),
                                     params_offset + cursor);
            if (item_tokens.size() != 1) {
                throw QcfError(line_no, params_offset + cursor + 1,
                               "expected 'key=value' parameter");
            }
            const auto &item = item_tokens[0];
            const auto eq = item.text.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw QcfError(line_no, item.column, "expected 'key=value' parameter");
            }
            const detail::QcfToken value_tok{item.text.substr(eq + 1), item.column + eq + 1};
            const auto value = detail::qcf_integer(value_tok, line_no, "parameter");
            if (value < 0 || value >= *dim) {
                throw QcfError(line_no, value_tok.column,
                               "parameter " + std::string(item.text.substr(0, eq)) + "=" +
                                   std::to_string(value) + " out of range [0, " +
                                   std::to_string(*dim) + ")");
            }
            keys.emplace_back(item.text.substr(0, eq));
            values.push_back(static_cast<int>(value));
            cursor = comma + 1;
        }

        std::vector<std::string> expected_keys;
        if (info.params == ParamShape::K) {
            expected_keys = {"k"};
        } else if (info.params == ParamShape::MN) {
            expected_keys = {"m", "n"};
        }
        if (keys != expected_keys) {
            std::string want = expected_keys.empty() ? "no parameters" : "";
            for (std::size_t i = 0; i < expected_keys.size(); ++i) {
                want += (i ? "," : "") + expected_keys[i] + "=<int>";
            }
            throw QcfError(line_no, params_text.empty() ? tokens[1].column : params_offset + 1,
                           "gate " + std::string(info.name) + " expects " + want);
        }
        try {
            circuit->apply(make_gate(*family, *dim, values), std::move(wires));
        } catch (const std::invalid_argument &e) {
            throw QcfError(line_no, tokens[1].column, e.what());
        }
    }

    if (!dim) {
        throw QcfError(1, 1, "missing 'dim <d>' header");
    }
    if (!circuit) {
        throw QcfError(line_no, 1, "missing 'wires <n>' header");
    }
    return std::move(*circuit);
}

/// Serializes a circuit to QCF; parse_qcf(to_qcf(c)) rebuilds the same steps.
inline std::string to_qcf(const Circuit &c) {
    std::ostringstream out;
    out << "dim " << c.dim() << "\nwires " << c.num_wires() << "\n";
    for (const auto &step : c.steps()) {
        out << "apply " << step.gate.name();
        for (const auto w : step.wires) {
            out << ' ' << (w + 1);
        }
        const auto params = step.gate.params();
        switch (family_info(step.gate.family()).params) {
        case ParamShape::K:
            out << " : k=" << params[0];
            break;
        case ParamShape::MN:
            out << " : m=" << params[0] << ",n=" << params[1];
            break;
        case ParamShape::None:
            break;
        }
        out << "\n";
    }
    if (const auto &wires = c.measurement()) {
        out << "measure";
        for (const auto w : *wires) {
            out << ' ' << (w + 1);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace qudit
