#include "valuation/csv.hpp"

#include <charconv>

#include "valuation/errors.hpp"

namespace valuation::csv {

namespace {

bool needs_quoting(std::string_view field) {
    return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

void emit_field(std::string& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
}

} // namespace

std::string emit(const Table& table) {
    std::string out;
    for (const Row& row : table) {
        // A lone empty field must be quoted or the line would vanish.
        if (row.size() == 1 && row[0].empty()) {
            out += "\"\"\n";
            continue;
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0)
                out += ',';
            emit_field(out, row[i]);
        }
        out += '\n';
    }
    return out;
}

Table parse(std::string_view text) {
    Table table;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                continue;
            }
            field += c;
            ++i;
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_started = true;
            ++i;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            row_started = true;
            ++i;
            break;
        case '\r':
            ++i;
            break;
        case '\n':
            if (row_started || !field.empty() || !row.empty()) {
                row.push_back(std::move(field));
                field.clear();
                table.push_back(std::move(row));
                row.clear();
            }
            row_started = false;
            ++i;
            break;
        default:
            field += c;
            row_started = true;
            ++i;
            break;
        }
    }
    if (in_quotes)
        throw ParseError("unterminated quoted CSV field");
    if (row_started || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        table.push_back(std::move(row));
    }
    return table;
}

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace valuation::csv
