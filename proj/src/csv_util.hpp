#pragma once

// Internal CSV helpers shared by the event-log and prefix readers.

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace logbench::detail {

// RFC-4180 style reader: quoted fields may contain the delimiter, doubled
// quotes and newlines. Tracks the physical record number for error messages.
class CsvReader {
public:
    CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

    // Returns false at end of input. Throws on an unterminated quote.
    bool next_record(std::vector<std::string>& fields) {
        fields.clear();
        int c = in_.get();
        if (c == std::istream::traits_type::eof()) return false;
        ++record_number_;

        std::string field;
        bool in_quotes = false;
        for (;; c = in_.get()) {
            if (c == std::istream::traits_type::eof()) {
                if (in_quotes)
                    throw std::runtime_error("unterminated quoted field at record " +
                                             std::to_string(record_number_));
                break;
            }
            char ch = static_cast<char>(c);
            if (in_quotes) {
                if (ch == '"') {
                    if (in_.peek() == '"') {
                        in_.get();
                        field.push_back('"');
                    } else {
                        in_quotes = false;
                    }
                } else {
                    field.push_back(ch);
                }
                continue;
            }
            if (ch == '"' && field.empty()) {
                in_quotes = true;
            } else if (ch == delimiter_) {
                fields.push_back(std::move(field));
                field.clear();
            } else if (ch == '\n') {
                break;
            } else if (ch == '\r') {
                if (in_.peek() == '\n') in_.get();
                break;
            } else {
                field.push_back(ch);
            }
        }
        fields.push_back(std::move(field));
        return true;
    }

    std::size_t record_number() const { return record_number_; }

private:
    std::istream& in_;
    char delimiter_;
    std::size_t record_number_ = 0;
};

inline void write_csv_field(std::ostream& out, std::string_view field, char delimiter) {
    bool needs_quotes = field.find_first_of("\"\r\n") != std::string_view::npos ||
                        field.find(delimiter) != std::string_view::npos;
    if (!needs_quotes) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace logbench::detail
