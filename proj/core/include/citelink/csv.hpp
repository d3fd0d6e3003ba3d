#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace citelink::csv {

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// One CSV line including the trailing newline.
std::string join_row(const std::vector<std::string> &fields);

/// Formats a double with a fixed number of decimals, independent of locale.
std::string fixed(double value, int decimals);

/// RFC 4180 reader. Quoted fields may span lines.
class Reader {
public:
    explicit Reader(std::istream &in) : in_(in) {}

    /// Reads the next record; false at end of input. Throws ParseError on an
    /// unterminated quoted field.
    bool next(std::vector<std::string> &row);

    /// Physical line on which the last returned record started (1-based).
    std::size_t line() const { return record_line_; }

private:
    std::istream &in_;
    std::size_t line_ = 0;
    std::size_t record_line_ = 0;
};

} // namespace citelink::csv
