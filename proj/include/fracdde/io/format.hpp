#pragma once

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fracdde/errors.hpp"

namespace fracdde::io {

/// Shortest decimal string that parses back to the same double.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// Strict full-string parse; "inf" and "nan" are not accepted.
inline double parse_number(std::string_view text, std::string_view what) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() ||
        !std::isfinite(v)) {
        throw ConfigError(std::string(what) + ": not a finite number: '" + std::string(text) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Comma-separated rows with '.' decimals; fields are written as given.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header) : os_(os) {
        write_fields(header);
        columns_ = header.size();
    }

    template <class... Fields>
    void row(const Fields&... fields) {
        static_assert(sizeof...(Fields) > 0);
        if (sizeof...(Fields) != columns_) throw LengthError("CsvWriter: wrong number of fields");
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(fields), first = false), ...);
        os_ << '\n';
    }

private:
    static std::string cell(double v) { return format_number(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(unsigned long v) { return std::to_string(v); }
    static std::string cell(unsigned long long v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "true" : "false"; }
    static std::string cell(std::string_view v) { return std::string(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    void write_fields(std::initializer_list<std::string_view> fields) {
        bool first = true;
        for (auto f : fields) {
            os_ << (first ? "" : ",") << f;
            first = false;
        }
        os_ << '\n';
    }

    std::ostream& os_;
    std::size_t columns_ = 0;
};

}  // namespace fracdde::io
