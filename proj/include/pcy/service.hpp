#pragma once

// Stateless HTTP facade for the what-if explorer.
//
//   GET  /api/catalog
//   GET  /api/rates
//   GET  /api/reference/{hepa|merv|particles}
//   POST /api/rank   WhatIfRequest
//   POST /api/pcy    WhatIfRequest + "spec" (inline) or "unit" (id)
//
// Handlers are plain member functions returning {status, body}; mount()
// binds them to an httplib::Server. The loaded datasets are shared read-only
// between concurrent requests.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <httplib.h>

#include "pcy/analytics.hpp"
#include "pcy/catalog.hpp"
#include "pcy/cost_engine.hpp"
#include "pcy/json_io.hpp"

namespace pcy {

struct HttpResult {
    int status = 200;
    json body;
};

// One scenario: where (region or rate), how long (days or calendar), how big,
// which formula variant, which units.
struct WhatIfRequest {
    std::optional<std::string> region;
    std::optional<double> rate_usd_per_kwh;
    std::optional<double> t_operate_days;
    std::optional<std::string> calendar_ref;      // name of a calendar loaded by the server
    std::optional<AqiCalendar> inline_calendar;
    double home_area_sqft = 2500.0;
    InitialCostMode mode = InitialCostMode::SpecFormula;
    double threshold_usd = 1990.0;
    std::optional<std::vector<std::string>> unit_ids;
    std::optional<PurifierSpec> inline_spec;
    std::optional<std::string> unit;
};

[[nodiscard]] inline std::variant<WhatIfRequest, std::vector<FieldError>> parse_whatif(const json& j) {
    std::vector<FieldError> errors;
    WhatIfRequest req;
    if (!j.is_object()) return std::vector<FieldError>{{"", "request body must be a JSON object"}};

    if (j.contains("region")) {
        if (j["region"].is_string() && !j["region"].get<std::string>().empty()) req.region = j["region"].get<std::string>();
        else errors.push_back({"region", "must be a non-empty string"});
    }
    if (j.contains("rate_usd_per_kwh")) {
        const auto& v = j["rate_usd_per_kwh"];
        if (v.is_number() && is_sane_rate(v.get<double>())) req.rate_usd_per_kwh = v.get<double>();
        else errors.push_back({"rate_usd_per_kwh", "must be a number in (0, 10)"});
    }
    if (j.contains("region") && j.contains("rate_usd_per_kwh"))
        errors.push_back({"region", "give exactly one of region and rate_usd_per_kwh"});
    if (!j.contains("region") && !j.contains("rate_usd_per_kwh"))
        errors.push_back({"region", "one of region or rate_usd_per_kwh is required"});

    if (j.contains("t_operate_days")) {
        const auto& v = j["t_operate_days"];
        if (v.is_number() && v.get<double>() >= 0.0 && v.get<double>() <= kDaysPerYear)
            req.t_operate_days = v.get<double>();
        else errors.push_back({"t_operate_days", "must be a number in [0, 365]"});
    }
    if (j.contains("calendar")) {
        const auto& c = j["calendar"];
        if (c.is_string()) {
            req.calendar_ref = c.get<std::string>();
        } else if (c.is_object() && c.contains("days_over_threshold")) {
            const auto& d = c["days_over_threshold"];
            if (d.is_number_integer() && d.get<int>() >= 0 && d.get<int>() <= 366)
                req.inline_calendar = AqiCalendar{c.value("region", "inline"), ExceedanceCount{d.get<int>()}};
            else errors.push_back({"calendar.days_over_threshold", "must be an integer in 0..366"});
        } else if (c.is_object() && c.contains("daily") && c["daily"].is_array()) {
            DailySeries series;
            bool ok = true;
            for (const auto& e : c["daily"]) {
                if (!e.is_object() || !e.contains("date") || !e["date"].is_string() || !e.contains("aqi") ||
                    !e["aqi"].is_number_integer() || e["aqi"].get<int>() < 0) {
                    ok = false;
                    break;
                }
                series.values.push_back({e["date"].get<std::string>(), e["aqi"].get<int>()});
            }
            if (ok) req.inline_calendar = AqiCalendar{c.value("region", "inline"), std::move(series)};
            else errors.push_back({"calendar.daily", "entries must be {date: string, aqi: integer >= 0}"});
        } else {
            errors.push_back({"calendar", "must be a calendar name or {days_over_threshold} / {daily: [...]}"});
        }
    }
    if (j.contains("t_operate_days") && j.contains("calendar"))
        errors.push_back({"t_operate_days", "give exactly one of t_operate_days and calendar"});
    if (!j.contains("t_operate_days") && !j.contains("calendar"))
        errors.push_back({"t_operate_days", "one of t_operate_days or calendar is required"});

    if (j.contains("home_area_sqft")) {
        const auto& v = j["home_area_sqft"];
        if (v.is_number() && v.get<double>() > 0.0) req.home_area_sqft = v.get<double>();
        else errors.push_back({"home_area_sqft", "must be a number > 0"});
    }
    if (j.contains("mode")) {
        const auto m = j["mode"].is_string() ? parse_mode(j["mode"].get<std::string>()) : std::nullopt;
        if (m) req.mode = *m;
        else errors.push_back({"mode", "must be \"spec\" or \"table5\""});
    }
    if (j.contains("threshold_usd")) {
        const auto& v = j["threshold_usd"];
        if (v.is_number() && v.get<double>() > 0.0) req.threshold_usd = v.get<double>();
        else errors.push_back({"threshold_usd", "must be a number > 0"});
    }
    if (j.contains("units")) {
        const auto& u = j["units"];
        std::vector<std::string> ids;
        bool ok = u.is_array();
        if (ok)
            for (const auto& e : u) {
                if (!e.is_string()) { ok = false; break; }
                ids.push_back(e.get<std::string>());
            }
        if (ok) req.unit_ids = std::move(ids);
        else errors.push_back({"units", "must be an array of unit ids"});
    }
    if (j.contains("spec")) req.inline_spec = spec_from_json(j["spec"], errors);
    if (j.contains("unit")) {
        if (j["unit"].is_string()) req.unit = j["unit"].get<std::string>();
        else errors.push_back({"unit", "must be a string"});
    }
    if (!errors.empty()) return errors;
    return req;
}

class Service {
public:
    Service(Catalog catalog, RateTable rates, std::vector<AqiCalendar> calendars = {}, CostModelParams defaults = {})
        : catalog_(std::move(catalog)), rates_(std::move(rates)), calendars_(std::move(calendars)),
          defaults_(defaults) {}

    [[nodiscard]] HttpResult get_catalog() const {
        json units = json::array();
        for (const auto& u : catalog_.units) units.push_back(to_json(u));
        return {200, {{"units", units}}};
    }

    [[nodiscard]] HttpResult get_rates() const { return {200, {{"rates", to_json(rates_)}}}; }

    [[nodiscard]] HttpResult get_reference(const std::string& table) const {
        if (table == "hepa") return {200, {{"hepa", hepa_table_json()}}};
        if (table == "merv") return {200, {{"merv", merv_table_json()}}};
        if (table == "particles") return {200, {{"particles", particle_table_json()}}};
        return not_found("reference", "unknown reference table '" + table + "'");
    }

    [[nodiscard]] HttpResult post_rank(const std::string& body) const {
        WhatIfRequest req;
        CostContext ctx;
        json echo;
        if (auto err = prepare(body, req, ctx, echo)) return *err;

        std::vector<PurifierSpec> units;
        if (req.unit_ids) {
            for (const auto& id : *req.unit_ids) {
                const auto* u = catalog_.find(id);
                if (!u) return not_found("units", "unknown unit '" + id + "'");
                units.push_back(*u);
            }
        } else {
            units = catalog_.units;
        }
        if (req.inline_spec) units.push_back(*req.inline_spec);
        if (units.empty()) return bad_request({{"units", "no units selected"}});

        const auto ranked = rank_by_pcy(units, ctx);
        json results = json::array();
        std::size_t position = 0;
        for (const auto& r : ranked.ranked) results.push_back(unit_json(++position, r.spec, r.result, ctx, req));
        json errors = json::array();
        for (const auto& e : ranked.errors) errors.push_back({{"id", e.id}, {"message", e.message}});
        echo["results"] = std::move(results);
        echo["errors"] = std::move(errors);
        return {200, std::move(echo)};
    }

    [[nodiscard]] HttpResult post_pcy(const std::string& body) const {
        WhatIfRequest req;
        CostContext ctx;
        json echo;
        if (auto err = prepare(body, req, ctx, echo)) return *err;

        if (req.inline_spec && req.unit) return bad_request({{"spec", "give exactly one of spec and unit"}});
        PurifierSpec spec;
        if (req.inline_spec) {
            spec = *req.inline_spec;
        } else if (req.unit) {
            const auto* u = catalog_.find(*req.unit);
            if (!u) return not_found("unit", "unknown unit '" + *req.unit + "'");
            spec = *u;
        } else {
            return bad_request({{"spec", "one of spec or unit is required"}});
        }
        try {
            const auto r = pcy(spec, ctx);
            echo["result"] = unit_json(1, spec, r, ctx, req);
        } catch (const std::exception& e) {
            return bad_request({{"spec", e.what()}});
        }
        return {200, std::move(echo)};
    }

    [[nodiscard]] const Catalog& catalog() const noexcept { return catalog_; }
    [[nodiscard]] const RateTable& rates() const noexcept { return rates_; }

private:
    static HttpResult bad_request(const std::vector<FieldError>& errors) {
        json arr = json::array();
        for (const auto& e : errors) arr.push_back({{"field", e.field}, {"message", e.message}});
        return {400, {{"errors", arr}}};
    }

    static HttpResult not_found(const std::string& field, const std::string& message) {
        return {404, {{"errors", json::array({{{"field", field}, {"message", message}}})}}};
    }

    // Parses the body, resolves region/calendar references and fills the
    // parameter echo. Returns an error response on failure.
    std::optional<HttpResult> prepare(const std::string& body, WhatIfRequest& req, CostContext& ctx, json& echo) const {
        const auto parsed = json::parse(body, nullptr, false);
        if (parsed.is_discarded()) return bad_request({{"", "body is not valid JSON"}});
        auto result = parse_whatif(parsed);
        if (auto* errors = std::get_if<std::vector<FieldError>>(&result)) return bad_request(*errors);
        req = std::get<WhatIfRequest>(std::move(result));

        ctx.params = defaults_;
        ctx.params.initial_cost_mode = req.mode;
        ctx.params.reference_area_sqft = req.home_area_sqft;
        ctx.params.medical_cost_threshold_usd = req.threshold_usd;

        json params;
        if (req.region) {
            if (!rates_.contains(*req.region)) return not_found("region", "unknown region '" + *req.region + "'");
            ctx.rate_usd_per_kwh = rates_.rate(*req.region);
            params["region"] = *req.region;
        } else {
            ctx.rate_usd_per_kwh = *req.rate_usd_per_kwh;
            params["region"] = nullptr;
        }
        params["rate_usd_per_kwh"] = ctx.rate_usd_per_kwh;

        if (req.t_operate_days) {
            ctx.t_operate_days = *req.t_operate_days;
            params["calendar"] = nullptr;
        } else {
            const AqiCalendar* cal = nullptr;
            if (req.calendar_ref) {
                for (const auto& c : calendars_)
                    if (c.region == *req.calendar_ref) cal = &c;
                if (!cal) return not_found("calendar", "unknown calendar '" + *req.calendar_ref + "'");
            } else {
                cal = &*req.inline_calendar;
            }
            ctx.t_operate_days = std::min(operating_days(*cal, ctx.params.aqi_orange_threshold), 365);
            params["calendar"] = cal->region;
        }
        params["t_operate_days"] = ctx.t_operate_days;
        params["home_area_sqft"] = ctx.params.reference_area_sqft;
        params["lifetime_years"] = ctx.params.lifetime_years;
        params["coverage_factor"] = ctx.params.coverage_factor;
        params["aqi_orange_threshold"] = ctx.params.aqi_orange_threshold;
        params["threshold_usd"] = format_usd(ctx.params.medical_cost_threshold_usd);

        echo = json::object();
        echo["mode"] = std::string(to_string(req.mode));
        echo["params"] = std::move(params);
        return std::nullopt;
    }

    static json unit_json(std::size_t rank, const PurifierSpec& spec, const PcyResult& r, const CostContext& ctx,
                          const WhatIfRequest& req) {
        json shares;
        try {
            shares = to_json(pcy_breakdown(r, spec, ctx));
        } catch (const DomainError&) {
            shares = nullptr;
        }
        return {{"rank", rank},
                {"id", spec.id},
                {"brand", spec.brand},
                {"model", spec.model},
                {"pcy", to_json(r)},
                {"shares", shares},
                {"below_medical_threshold", r.total_usd_per_year < req.threshold_usd}};
    }

    Catalog catalog_;
    RateTable rates_;
    std::vector<AqiCalendar> calendars_;
    CostModelParams defaults_;
};

inline void mount(httplib::Server& server, const Service& service) {
    auto send = [](httplib::Response& res, const HttpResult& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    server.Get("/api/catalog", [&service, send](const httplib::Request&, httplib::Response& res) {
        send(res, service.get_catalog());
    });
    server.Get("/api/rates", [&service, send](const httplib::Request&, httplib::Response& res) {
        send(res, service.get_rates());
    });
    server.Get(R"(/api/reference/([A-Za-z]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.get_reference(req.matches[1]));
    });
    server.Post("/api/rank", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.post_rank(req.body));
    });
    server.Post("/api/pcy", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.post_pcy(req.body));
    });
}

}  // namespace pcy
