#include "citelink/csv.hpp"

#include <charconv>
#include <cmath>

#include "citelink/error.hpp"

namespace citelink::csv {

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join_row(const std::vector<std::string> &fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out += ',';
        out += escape(fields[i]);
    }
    out += '\n';
    return out;
}

std::string fixed(double value, int decimals) {
    if (std::isnan(value))
        return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    if (ec != std::errc{})
        throw Error("cannot format number");
    std::string out(buf, end);
    // "-0.0" reads oddly in a table
    if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    return out;
}

bool Reader::next(std::vector<std::string> &row) {
    row.clear();
    std::string line;
    if (!std::getline(in_, line))
        return false;
    ++line_;
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    std::size_t i = 0;
    while (true) {
        if (i >= line.size()) {
            if (!quoted)
                break;
            // quoted field continues on the next physical line
            if (!std::getline(in_, line))
                throw ParseError("unterminated quoted field starting on line " + std::to_string(record_line_));
            ++line_;
            field += '\n';
            i = 0;
            continue;
        }
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        if (c == '"' && field.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '\r' && i + 1 == line.size()) {
            // CRLF line ending
        } else {
            field += c;
        }
        ++i;
    }
    row.push_back(std::move(field));
    return true;
}

} // namespace citelink::csv
