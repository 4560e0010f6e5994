#pragma once
// Minimal RFC-4180 CSV reader/writer. Strict on quoting (stray or
// unterminated quotes are errors), tolerant of CRLF and of a missing final
// newline. A bare empty line yields no record.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlsn::csv {

struct ParseError : std::runtime_error {
    std::size_t line;

    ParseError(std::size_t line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct Row {
    std::size_t line = 0;   // 1-based line where the record starts
    std::vector<std::string> fields;

    bool operator==(const Row&) const = default;
};

inline std::vector<Row> parse(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line = 1;

    Row row;
    row.line = line;
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;   // current field started with a quote
    bool any_field = false;    // record has content beyond a bare newline

    auto end_field = [&] {
        row.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
    };
    auto end_record = [&] {
        if (any_field || !row.fields.empty()) {
            end_field();
            rows.push_back(std::move(row));
        }
        row = Row{};
        any_field = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || was_quoted) {
                    throw ParseError(line, "unexpected quote inside unquoted field");
                }
                in_quotes = true;
                was_quoted = true;
                any_field = true;
                break;
            case ',':
                end_field();
                any_field = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                row.line = line;
                break;
            default:
                if (was_quoted) {
                    throw ParseError(line, "text after closing quote");
                }
                field += c;
                any_field = true;
                break;
        }
    }
    if (in_quotes) {
        throw ParseError(row.line, "unterminated quoted field");
    }
    end_record();
    return rows;
}

inline std::string escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += escape(fields[i]);
    }
    out += '\n';
    return out;
}

}   // namespace mlsn::csv
