#pragma once

// CSV loaders for the purifier catalog, rate table and AQI calendars.
//
// Parsers never throw on malformed input. A missing or unusable header is
// reported through ParseReport::fatal; every rejected row is listed with its
// line number, column and reason.

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcy/catalog.hpp"
#include "pcy/csv.hpp"
#include "pcy/errors.hpp"

namespace pcy {

struct RowError {
    std::size_t row_number = 0;  // 1-based line in the file; the header is line 1
    std::string column;
    std::string message;
};

struct ParseReport {
    std::size_t accepted = 0;
    std::vector<RowError> rejected;
    std::optional<std::string> fatal;

    [[nodiscard]] bool ok() const noexcept { return !fatal && rejected.empty(); }
};

namespace detail {

class Header {
public:
    explicit Header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) index_.emplace(std::string(csv::trim(names[i])), i);
        width_ = names.size();
    }

    [[nodiscard]] bool has(const std::string& name) const { return index_.count(name) != 0; }
    [[nodiscard]] std::size_t width() const noexcept { return width_; }

    // Empty view when the column is absent from the header.
    [[nodiscard]] std::string_view get(const csv::Record& r, const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end() || it->second >= r.fields.size()) return {};
        return csv::trim(r.fields[it->second]);
    }

private:
    std::map<std::string, std::size_t> index_;
    std::size_t width_ = 0;
};

struct RowFailure {
    std::string column;
    std::string message;
};

inline double require_decimal(const Header& h, const csv::Record& r, const std::string& col) {
    const auto text = h.get(r, col);
    if (text.empty()) throw RowFailure{col, "missing value"};
    const auto v = csv::parse_decimal(text);
    if (!v) throw RowFailure{col, "not a decimal number: '" + std::string(text) + "'"};
    return *v;
}

inline std::optional<double> optional_decimal(const Header& h, const csv::Record& r, const std::string& col) {
    const auto text = h.get(r, col);
    if (text.empty()) return std::nullopt;
    const auto v = csv::parse_decimal(text);
    if (!v) throw RowFailure{col, "not a decimal number: '" + std::string(text) + "'"};
    return v;
}

inline std::string require_text(const Header& h, const csv::Record& r, const std::string& col) {
    const auto text = h.get(r, col);
    if (text.empty()) throw RowFailure{col, "missing value"};
    return std::string(text);
}

// Checks the record shape shared by every file: same width as the header,
// no quoting errors.
inline std::optional<RowError> shape_error(const Header& h, const csv::Record& r) {
    if (r.malformed) return RowError{r.line, "", "malformed quoting"};
    if (r.fields.size() != h.width())
        return RowError{r.line, "",
                        "expected " + std::to_string(h.width()) + " fields, found " +
                            std::to_string(r.fields.size())};
    return std::nullopt;
}

inline std::optional<std::string> missing_columns(const Header& h, std::initializer_list<const char*> cols) {
    std::string missing;
    for (const char* c : cols) {
        if (!h.has(c)) {
            if (!missing.empty()) missing += ", ";
            missing += c;
        }
    }
    if (missing.empty()) return std::nullopt;
    return "header is missing required column(s): " + missing;
}

inline bool is_leap(long long y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline bool valid_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    const auto y = *csv::parse_integer(s.substr(0, 4));
    const auto m = *csv::parse_integer(s.substr(5, 2));
    const auto d = *csv::parse_integer(s.substr(8, 2));
    if (m < 1 || m > 12 || d < 1) return false;
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const int max_day = kDays[m - 1] + ((m == 2 && is_leap(y)) ? 1 : 0);
    return d <= max_day;
}

}  // namespace detail

struct CatalogParse {
    Catalog catalog;
    ParseReport report;
};

inline constexpr const char* kCatalogColumns[] = {
    "id", "brand", "model", "initial_cost_usd", "cadr_cfm", "rated_watts",
    "filter_price_usd", "filter_interval_days", "annual_filter_cost_usd", "model_year",
    "expected_pcy_usd"};

[[nodiscard]] inline CatalogParse parse_catalog(std::string_view text) {
    using namespace detail;
    CatalogParse out;
    const auto records = csv::read(text);
    if (records.empty()) {
        out.report.fatal = "missing header row";
        return out;
    }
    const Header h(records.front().fields);
    if (auto m = missing_columns(h, {"id", "brand", "model", "initial_cost_usd", "cadr_cfm", "rated_watts"})) {
        out.report.fatal = *m;
        return out;
    }
    if (!h.has("annual_filter_cost_usd") && !(h.has("filter_price_usd") && h.has("filter_interval_days"))) {
        out.report.fatal =
            "header needs annual_filter_cost_usd or filter_price_usd + filter_interval_days";
        return out;
    }

    std::set<std::string> seen;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (auto e = shape_error(h, r)) {
            out.report.rejected.push_back(*e);
            continue;
        }
        try {
            PurifierSpec s;
            s.id = require_text(h, r, "id");
            s.brand = require_text(h, r, "brand");
            s.model = require_text(h, r, "model");
            s.initial_cost_usd = require_decimal(h, r, "initial_cost_usd");
            if (!(s.initial_cost_usd >= 0.0)) throw RowFailure{"initial_cost_usd", "must be >= 0"};
            s.cadr_cfm = require_decimal(h, r, "cadr_cfm");
            if (!(s.cadr_cfm > 0.0)) throw RowFailure{"cadr_cfm", "must be > 0"};
            s.rated_watts = require_decimal(h, r, "rated_watts");
            if (!(s.rated_watts > 0.0)) throw RowFailure{"rated_watts", "must be > 0"};

            const auto price = optional_decimal(h, r, "filter_price_usd");
            const auto interval = optional_decimal(h, r, "filter_interval_days");
            const auto annual = optional_decimal(h, r, "annual_filter_cost_usd");
            const bool periodic = price || interval;
            if (periodic && annual)
                throw RowFailure{"annual_filter_cost_usd",
                                 "ambiguous filter plan: both periodic and annualized costs given"};
            if (periodic) {
                if (!price) throw RowFailure{"filter_price_usd", "missing value"};
                if (!interval) throw RowFailure{"filter_interval_days", "missing value"};
                if (!(*price >= 0.0)) throw RowFailure{"filter_price_usd", "must be >= 0"};
                if (!(*interval > 0.0)) throw RowFailure{"filter_interval_days", "must be > 0"};
                s.filter_plan = PeriodicFilter{*price, *interval};
            } else if (annual) {
                if (!(*annual >= 0.0)) throw RowFailure{"annual_filter_cost_usd", "must be >= 0"};
                s.filter_plan = AnnualizedFilter{*annual};
            } else {
                throw RowFailure{"annual_filter_cost_usd", "no filter plan given"};
            }

            if (const auto y = h.get(r, "model_year"); !y.empty()) {
                const auto v = csv::parse_integer(y);
                if (!v || *v < 1900 || *v > 2200) throw RowFailure{"model_year", "not a plausible year"};
                s.model_year = static_cast<int>(*v);
            }
            const auto expected = optional_decimal(h, r, "expected_pcy_usd");
            if (expected && !(*expected >= 0.0)) throw RowFailure{"expected_pcy_usd", "must be >= 0"};

            if (!seen.insert(s.id).second) throw RowFailure{"id", "duplicate id '" + s.id + "'"};
            if (expected) out.catalog.expected_pcy_usd.emplace(s.id, *expected);
            out.catalog.units.push_back(std::move(s));
            ++out.report.accepted;
        } catch (const RowFailure& f) {
            out.report.rejected.push_back({r.line, f.column, f.message});
        }
    }
    return out;
}

[[nodiscard]] inline std::string serialize_catalog(const Catalog& catalog) {
    std::vector<std::string> header(std::begin(kCatalogColumns), std::end(kCatalogColumns));
    std::string out = csv::join(header) + "\n";
    for (const auto& u : catalog.units) {
        std::vector<std::string> row{u.id, u.brand, u.model, csv::format_decimal(u.initial_cost_usd),
                                     csv::format_decimal(u.cadr_cfm), csv::format_decimal(u.rated_watts)};
        if (const auto* p = std::get_if<PeriodicFilter>(&u.filter_plan)) {
            row.push_back(csv::format_decimal(p->filter_price_usd));
            row.push_back(csv::format_decimal(p->replacement_interval_days));
            row.emplace_back();
        } else {
            row.emplace_back();
            row.emplace_back();
            row.push_back(csv::format_decimal(std::get<AnnualizedFilter>(u.filter_plan).usd_per_365_days));
        }
        row.push_back(u.model_year ? std::to_string(*u.model_year) : "");
        const auto it = catalog.expected_pcy_usd.find(u.id);
        row.push_back(it != catalog.expected_pcy_usd.end() ? csv::format_decimal(it->second) : "");
        out += csv::join(row) + "\n";
    }
    return out;
}

struct RatesParse {
    RateTable rates;
    ParseReport report;
};

[[nodiscard]] inline RatesParse parse_rates(std::string_view text) {
    using namespace detail;
    RatesParse out;
    const auto records = csv::read(text);
    if (records.empty()) {
        out.report.fatal = "missing header row";
        return out;
    }
    const Header h(records.front().fields);
    if (auto m = missing_columns(h, {"region", "usd_per_kwh"})) {
        out.report.fatal = *m;
        return out;
    }
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (auto e = shape_error(h, r)) {
            out.report.rejected.push_back(*e);
            continue;
        }
        try {
            const auto region = require_text(h, r, "region");
            const double rate = require_decimal(h, r, "usd_per_kwh");
            if (!is_sane_rate(rate)) throw RowFailure{"usd_per_kwh", "rate must be in (0, 10) USD/kWh"};
            if (out.rates.contains(region)) throw RowFailure{"region", "duplicate region '" + region + "'"};
            out.rates.usd_per_kwh.emplace(region, rate);
            if (const auto name = h.get(r, "name"); !name.empty())
                out.rates.names.emplace(region, std::string(name));
            ++out.report.accepted;
        } catch (const RowFailure& f) {
            out.report.rejected.push_back({r.line, f.column, f.message});
        }
    }
    return out;
}

[[nodiscard]] inline std::string serialize_rates(const RateTable& rates) {
    std::string out = "region,name,usd_per_kwh\n";
    for (const auto& [region, rate] : rates.usd_per_kwh) {
        const auto it = rates.names.find(region);
        out += csv::join({region, it != rates.names.end() ? it->second : "", csv::format_decimal(rate)}) + "\n";
    }
    return out;
}

struct AqiParse {
    std::vector<AqiCalendar> calendars;  // in order of first appearance
    ParseReport report;
};

// Long form `region,date,aqi` or wide form `region,days_over_100`.
[[nodiscard]] inline AqiParse parse_aqi(std::string_view text) {
    using namespace detail;
    AqiParse out;
    const auto records = csv::read(text);
    if (records.empty()) {
        out.report.fatal = "missing header row";
        return out;
    }
    const Header h(records.front().fields);
    const bool long_form = h.has("date") && h.has("aqi");
    const bool wide_form = h.has("days_over_100");
    if (!h.has("region")) {
        out.report.fatal = "header is missing required column(s): region";
        return out;
    }
    if (long_form == wide_form) {
        out.report.fatal = long_form ? "header mixes long form (date,aqi) and wide form (days_over_100)"
                                     : "header needs date,aqi (long form) or days_over_100 (wide form)";
        return out;
    }

    std::map<std::string, std::size_t> slot;
    std::set<std::pair<std::string, std::string>> seen_dates;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (auto e = shape_error(h, r)) {
            out.report.rejected.push_back(*e);
            continue;
        }
        try {
            const auto region = require_text(h, r, "region");
            if (long_form) {
                const auto date = require_text(h, r, "date");
                if (!valid_iso_date(date)) throw RowFailure{"date", "not a yyyy-mm-dd date: '" + date + "'"};
                const auto aqi = csv::parse_integer(h.get(r, "aqi"));
                if (!aqi || *aqi < 0 || *aqi > 100000) throw RowFailure{"aqi", "not a nonnegative integer"};
                if (!seen_dates.emplace(region, date).second)
                    throw RowFailure{"date", "duplicate date " + date + " for region '" + region + "'"};
                auto [it, fresh] = slot.emplace(region, out.calendars.size());
                if (fresh) out.calendars.push_back({region, DailySeries{}});
                std::get<DailySeries>(out.calendars[it->second].data)
                    .values.push_back({date, static_cast<int>(*aqi)});
            } else {
                const auto days = csv::parse_integer(h.get(r, "days_over_100"));
                if (!days || *days < 0 || *days > 366)
                    throw RowFailure{"days_over_100", "must be an integer in 0..366"};
                if (slot.count(region)) throw RowFailure{"region", "duplicate region '" + region + "'"};
                slot.emplace(region, out.calendars.size());
                out.calendars.push_back({region, ExceedanceCount{static_cast<int>(*days)}});
            }
            ++out.report.accepted;
        } catch (const RowFailure& f) {
            out.report.rejected.push_back({r.line, f.column, f.message});
        }
    }
    return out;
}

[[nodiscard]] inline std::string serialize_aqi(const std::vector<AqiCalendar>& calendars) {
    const bool long_form = !calendars.empty() && std::holds_alternative<DailySeries>(calendars.front().data);
    // One file holds one form; a mixed list has no faithful encoding.
    for (const auto& c : calendars)
        if (std::holds_alternative<DailySeries>(c.data) != long_form)
            throw DomainError("serialize_aqi: calendars mix daily series and exceedance counts");
    std::string out = long_form ? "region,date,aqi\n" : "region,days_over_100\n";
    for (const auto& c : calendars) {
        if (const auto* s = std::get_if<DailySeries>(&c.data)) {
            for (const auto& d : s->values) out += csv::join({c.region, d.date, std::to_string(d.aqi)}) + "\n";
        } else {
            out += csv::join({c.region, std::to_string(std::get<ExceedanceCount>(c.data).days_over_threshold)}) + "\n";
        }
    }
    return out;
}

[[nodiscard]] inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace pcy
