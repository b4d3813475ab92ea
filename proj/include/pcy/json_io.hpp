#pragma once

// JSON views of the domain types. Computed money leaves as a two-decimal
// string; catalog inputs keep their full numeric value so that an echoed
// spec can be posted back unchanged.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pcy/analytics.hpp"
#include "pcy/catalog.hpp"
#include "pcy/cost_engine.hpp"
#include "pcy/money.hpp"
#include "pcy/reference.hpp"

namespace pcy {

using json = nlohmann::ordered_json;

[[nodiscard]] inline json to_json(const FilterPlan& plan) {
    if (const auto* p = std::get_if<PeriodicFilter>(&plan))
        return {{"kind", "periodic"},
                {"filter_price_usd", p->filter_price_usd},
                {"replacement_interval_days", p->replacement_interval_days}};
    return {{"kind", "annualized"}, {"usd_per_365_days", std::get<AnnualizedFilter>(plan).usd_per_365_days}};
}

[[nodiscard]] inline json to_json(const PurifierSpec& s) {
    json j{{"id", s.id},
           {"brand", s.brand},
           {"model", s.model},
           {"initial_cost_usd", s.initial_cost_usd},
           {"cadr_cfm", s.cadr_cfm},
           {"rated_watts", s.rated_watts},
           {"filter_plan", to_json(s.filter_plan)}};
    j["model_year"] = s.model_year ? json(*s.model_year) : json(nullptr);
    return j;
}

[[nodiscard]] inline json to_json(const PcyResult& r) {
    return {{"total_usd_per_year", format_usd(r.total_usd_per_year)},
            {"initial_component_usd", format_usd(r.initial_component_usd)},
            {"maintenance_usd_per_year", format_usd(r.maintenance_usd_per_year)},
            {"electricity_usd_per_year", format_usd(r.electricity_usd_per_year)},
            {"optimal_coverage_sqft", r.optimal_coverage_sqft},
            {"normalization_multiplier", r.normalization_multiplier}};
}

[[nodiscard]] inline json to_json(const CostShares& s) {
    return {{"initial", s.initial}, {"maintenance", s.maintenance}, {"electricity", s.electricity}};
}

[[nodiscard]] inline json to_json(const SummaryStats& s) {
    json j{{"n", s.n},
           {"mean", format_usd(s.mean)},
           {"median", format_usd(s.median)},
           {"stddev", s.stddev},
           {"min", format_usd(s.min)},
           {"max", format_usd(s.max)}};
    j["sample_stddev"] = s.sample_stddev ? json(*s.sample_stddev) : json(nullptr);
    j["cv"] = s.cv ? json(*s.cv) : json(nullptr);
    return j;
}

[[nodiscard]] inline json to_json(const LinearFit& f) {
    json j{{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
    j["orientation"] = f.orientation ? json(std::string(to_string(*f.orientation))) : json(nullptr);
    return j;
}

[[nodiscard]] inline json to_json(const RateTable& rates) {
    json arr = json::array();
    for (const auto& [region, rate] : rates.usd_per_kwh) {
        const auto it = rates.names.find(region);
        arr.push_back({{"region", region},
                       {"name", it != rates.names.end() ? it->second : region},
                       {"usd_per_kwh", rate}});
    }
    return arr;
}

[[nodiscard]] inline json hepa_table_json() {
    json arr = json::array();
    for (const auto& c : kHepaClasses) {
        arr.push_back({{"class", std::string(c.label)},
                       {"alias", c.alias.empty() ? json(nullptr) : json(std::string(c.alias))},
                       {"efficiency", c.efficiency}});
    }
    return arr;
}

[[nodiscard]] inline json merv_table_json() {
    json arr = json::array();
    for (const auto& m : kMervRatings) {
        arr.push_back({{"rating", m.rating},
                       {"dust_efficiency", std::string(m.dust_efficiency)},
                       {"particle_size", std::string(m.particle_size)},
                       {"efficiency_lower_bound", m.efficiency_lower_bound}});
    }
    return arr;
}

[[nodiscard]] inline json particle_table_json() {
    json arr = json::array();
    for (const auto& p : kPollutants)
        arr.push_back({{"name", std::string(p.name)}, {"min_microns", p.min_microns}, {"max_microns", p.max_microns}});
    return arr;
}

struct FieldError {
    std::string field;
    std::string message;
};

namespace detail {

inline std::optional<double> number_field(const json& j, const std::string& key, const std::string& prefix,
                                          std::vector<FieldError>& errors) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const auto& v = j.at(key);
    if (!v.is_number()) {
        errors.push_back({prefix + key, "must be a number"});
        return std::nullopt;
    }
    return v.get<double>();
}

}  // namespace detail

// Builds and validates a spec from JSON. Returns nullopt with field-level
// messages appended to `errors` on failure.
[[nodiscard]] inline std::optional<PurifierSpec> spec_from_json(const json& j, std::vector<FieldError>& errors,
                                                                const std::string& prefix = "spec.") {
    const auto before = errors.size();
    if (!j.is_object()) {
        errors.push_back({prefix.substr(0, prefix.size() - 1), "must be an object"});
        return std::nullopt;
    }
    PurifierSpec s;
    auto text = [&](const char* key, std::string& out, bool required) {
        if (!j.contains(key) || j.at(key).is_null()) {
            if (required) errors.push_back({prefix + key, "is required"});
            return;
        }
        if (!j.at(key).is_string() || j.at(key).get<std::string>().empty()) {
            errors.push_back({prefix + key, "must be a non-empty string"});
            return;
        }
        out = j.at(key).get<std::string>();
    };
    text("id", s.id, false);
    text("brand", s.brand, true);
    text("model", s.model, true);
    if (s.id.empty()) s.id = "inline";

    auto positive = [&](const char* key, double& out, bool allow_zero) {
        const auto v = detail::number_field(j, key, prefix, errors);
        if (!j.contains(key) || j.at(key).is_null()) {
            errors.push_back({prefix + key, "is required"});
            return;
        }
        if (!v) return;
        if (allow_zero ? !(*v >= 0.0) : !(*v > 0.0)) {
            errors.push_back({prefix + key, allow_zero ? "must be >= 0" : "must be > 0"});
            return;
        }
        out = *v;
    };
    positive("initial_cost_usd", s.initial_cost_usd, true);
    positive("cadr_cfm", s.cadr_cfm, false);
    positive("rated_watts", s.rated_watts, false);

    if (!j.contains("filter_plan") || !j.at("filter_plan").is_object()) {
        errors.push_back({prefix + "filter_plan", "is required and must be an object"});
    } else {
        const auto& fp = j.at("filter_plan");
        const std::string kind = fp.value("kind", "");
        const std::string fprefix = prefix + "filter_plan.";
        if (kind == "periodic") {
            const auto price = detail::number_field(fp, "filter_price_usd", fprefix, errors);
            const auto interval = detail::number_field(fp, "replacement_interval_days", fprefix, errors);
            if (!price || !(*price >= 0.0)) errors.push_back({fprefix + "filter_price_usd", "must be a number >= 0"});
            if (!interval || !(*interval > 0.0))
                errors.push_back({fprefix + "replacement_interval_days", "must be a number > 0"});
            if (price && interval) s.filter_plan = PeriodicFilter{*price, *interval};
        } else if (kind == "annualized") {
            const auto annual = detail::number_field(fp, "usd_per_365_days", fprefix, errors);
            if (!annual || !(*annual >= 0.0)) errors.push_back({fprefix + "usd_per_365_days", "must be a number >= 0"});
            else s.filter_plan = AnnualizedFilter{*annual};
        } else {
            errors.push_back({fprefix + "kind", "must be \"periodic\" or \"annualized\""});
        }
    }
    if (j.contains("model_year") && !j.at("model_year").is_null()) {
        if (!j.at("model_year").is_number_integer()) errors.push_back({prefix + "model_year", "must be an integer"});
        else s.model_year = j.at("model_year").get<int>();
    }
    if (errors.size() != before) return std::nullopt;
    return s;
}

}  // namespace pcy
