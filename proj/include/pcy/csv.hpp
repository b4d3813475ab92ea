#pragma once

// Minimal RFC 4180 reader/writer: comma separated, double-quote escaping,
// LF or CRLF line endings, optional UTF-8 BOM.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace pcy::csv {

struct Record {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
    bool malformed = false;  // unterminated quote or stray quote
};

[[nodiscard]] inline std::vector<Record> read(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<Record> out;
    Record cur;
    std::string field;
    std::size_t line = 1;
    cur.line = line;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool record_has_content = false;

    auto end_field = [&] {
        cur.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = !record_has_content && cur.fields.size() == 1 && cur.fields[0].empty();
        if (!blank) out.push_back(std::move(cur));
        cur = Record{};
        cur.line = line;
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
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
                if (field.empty() && !field_was_quoted) {
                    in_quotes = true;
                    field_was_quoted = true;
                    record_has_content = true;
                } else {
                    cur.malformed = true;
                    field += c;
                }
                break;
            case ',':
                record_has_content = true;
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                field += c;
                break;
            case '\n':
                ++line;
                end_record();
                break;
            default:
                if (field_was_quoted) cur.malformed = true;
                record_has_content = true;
                field += c;
        }
    }
    if (in_quotes) cur.malformed = true;
    if (record_has_content || !field.empty() || in_quotes) end_record();
    return out;
}

[[nodiscard]] inline std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

[[nodiscard]] inline std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += quote(fields[i]);
    }
    return out;
}

[[nodiscard]] inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// Plain decimal: optional '-', digits, optional fraction. No exponent,
// no thousands separators, no inf/nan.
[[nodiscard]] inline std::optional<double> parse_decimal(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

[[nodiscard]] inline std::optional<long long> parse_integer(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

// Shortest text that parses back to the same double.
[[nodiscard]] inline std::string format_decimal(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

}  // namespace pcy::csv
