#pragma once

// Output documents for the command-line front end: one or more named tables
// plus summary key/values, rendered as an aligned text table, CSV or JSON.
// Rendering is deterministic for identical documents.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pcy/csv.hpp"
#include "pcy/json_io.hpp"

namespace pcy {

enum class OutputFormat { HumanTable, Csv, Json };

[[nodiscard]] inline std::optional<OutputFormat> parse_format(std::string_view s) {
    if (s == "human" || s == "table") return OutputFormat::HumanTable;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    return std::nullopt;
}

struct OutputTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

struct Document {
    std::vector<OutputTable> tables;
    std::vector<std::pair<std::string, json>> summary;
};

[[nodiscard]] inline std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

inline void render_human(const Document& doc, std::ostream& out) {
    bool first = true;
    for (const auto& t : doc.tables) {
        if (!first) out << '\n';
        first = false;
        if (doc.tables.size() > 1) out << t.name << '\n';
        std::vector<std::size_t> width(t.columns.size());
        for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
        for (const auto& row : t.rows)
            for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
                width[c] = std::max(width[c], cell_text(row[c]).size());
        auto line = [&](const std::vector<std::string>& cells, const std::vector<bool>& right) {
            std::string s;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) s += "  ";
                const std::string pad(width[c] - std::min(width[c], cells[c].size()), ' ');
                s += right[c] ? pad + cells[c] : cells[c] + pad;
            }
            while (!s.empty() && s.back() == ' ') s.pop_back();
            out << s << '\n';
        };
        std::vector<bool> right(t.columns.size(), false);
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            bool numeric = !t.rows.empty();
            for (const auto& row : t.rows) {
                const auto txt = cell_text(row[c]);
                if (!row[c].is_number() && !(row[c].is_string() && csv::parse_decimal(txt))) numeric = false;
            }
            right[c] = numeric;
        }
        line(t.columns, right);
        std::vector<std::string> rule;
        for (auto w : width) rule.emplace_back(w, '-');
        line(rule, std::vector<bool>(rule.size(), false));
        for (const auto& row : t.rows) {
            std::vector<std::string> cells;
            for (const auto& v : row) cells.push_back(cell_text(v));
            line(cells, right);
        }
    }
    if (!doc.summary.empty()) {
        if (!doc.tables.empty()) out << '\n';
        for (const auto& [k, v] : doc.summary) out << k << ": " << cell_text(v) << '\n';
    }
}

inline void render_csv(const Document& doc, std::ostream& out) {
    bool first = true;
    for (const auto& t : doc.tables) {
        if (!first) out << '\n';
        first = false;
        out << csv::join(t.columns) << '\n';
        for (const auto& row : t.rows) {
            std::vector<std::string> cells;
            for (const auto& v : row) cells.push_back(cell_text(v));
            out << csv::join(cells) << '\n';
        }
    }
    if (!doc.summary.empty()) {
        if (!doc.tables.empty()) out << '\n';
        out << "key,value\n";
        for (const auto& [k, v] : doc.summary) out << csv::join({k, cell_text(v)}) << '\n';
    }
}

inline void render_json(const Document& doc, std::ostream& out) {
    json root = json::object();
    for (const auto& t : doc.tables) {
        json arr = json::array();
        for (const auto& row : t.rows) {
            json obj = json::object();
            for (std::size_t c = 0; c < t.columns.size() && c < row.size(); ++c) obj[t.columns[c]] = row[c];
            arr.push_back(std::move(obj));
        }
        root[t.name] = std::move(arr);
    }
    if (!doc.summary.empty()) {
        json s = json::object();
        for (const auto& [k, v] : doc.summary) s[k] = v;
        root["summary"] = std::move(s);
    }
    out << root.dump(2) << '\n';
}

inline void render(const Document& doc, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::HumanTable: render_human(doc, out); break;
        case OutputFormat::Csv: render_csv(doc, out); break;
        case OutputFormat::Json: render_json(doc, out); break;
    }
}

}  // namespace pcy
