#pragma once

// Internal helpers for the strict line-oriented text formats. Not installed.

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "specbm/errors.hpp"

namespace specbm::detail {

/** Line reader that tracks line numbers and strips a trailing '\r'. */
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /** Read the next line; returns false at end of input. */
    bool next(std::string& line) {
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_number_;
        return true;
    }

    int line_number() const { return line_number_; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("line " + std::to_string(line_number_) + ": " + what);
    }

private:
    std::istream& in_;
    int line_number_ = 0;
};

/** Split a line into whitespace-separated fields. */
inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

/** Parse a whole field as a decimal integer; reports via reader.fail. */
template <class Int>
Int parse_int(const LineReader& reader, std::string_view field, const char* what) {
    Int value{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        reader.fail(std::string("expected integer ") + what + ", got '" + std::string(field) + "'");
    return value;
}

}  // namespace specbm::detail
