#pragma once

// Domain types shared by the cost engine, analytics, ingest and service
// layers. Everything here is a plain value type and is never mutated after
// loading.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pcy/errors.hpp"

namespace pcy {

// Filter replaced every `replacement_interval_days` at `filter_price_usd`.
struct PeriodicFilter {
    double filter_price_usd = 0.0;
    double replacement_interval_days = 0.0;

    friend bool operator==(const PeriodicFilter&, const PeriodicFilter&) = default;
};

// Filter spending already expressed per 365 days of continuous use.
struct AnnualizedFilter {
    double usd_per_365_days = 0.0;

    friend bool operator==(const AnnualizedFilter&, const AnnualizedFilter&) = default;
};

using FilterPlan = std::variant<PeriodicFilter, AnnualizedFilter>;

inline void validate(const FilterPlan& plan) {
    if (const auto* p = std::get_if<PeriodicFilter>(&plan)) {
        if (!(p->filter_price_usd >= 0.0) || !std::isfinite(p->filter_price_usd))
            throw DomainError("filter_price_usd must be a finite value >= 0");
        if (!(p->replacement_interval_days > 0.0) || !std::isfinite(p->replacement_interval_days))
            throw DomainError("replacement_interval_days must be > 0");
    } else {
        const auto& a = std::get<AnnualizedFilter>(plan);
        if (!(a.usd_per_365_days >= 0.0) || !std::isfinite(a.usd_per_365_days))
            throw DomainError("annual filter cost must be a finite value >= 0");
    }
}

struct PurifierSpec {
    std::string id;
    std::string brand;
    std::string model;
    double initial_cost_usd = 0.0;
    double cadr_cfm = 0.0;
    double rated_watts = 0.0;
    FilterPlan filter_plan = AnnualizedFilter{};
    std::optional<int> model_year;

    [[nodiscard]] std::string display_name() const { return brand + " " + model; }

    friend bool operator==(const PurifierSpec&, const PurifierSpec&) = default;
};

inline void validate(const PurifierSpec& spec) {
    if (spec.id.empty()) throw DomainError("id must not be empty");
    if (!(spec.initial_cost_usd >= 0.0) || !std::isfinite(spec.initial_cost_usd))
        throw DomainError("initial_cost_usd must be a finite value >= 0");
    if (!(spec.cadr_cfm > 0.0) || !std::isfinite(spec.cadr_cfm))
        throw DomainError("cadr_cfm must be > 0");
    if (!(spec.rated_watts > 0.0) || !std::isfinite(spec.rated_watts))
        throw DomainError("rated_watts must be > 0");
    validate(spec.filter_plan);
}

// Loaded purifier set. `expected_pcy_usd` is the printed audit column; the
// engine never reads it.
struct Catalog {
    std::vector<PurifierSpec> units;
    std::map<std::string, double> expected_pcy_usd;

    // Resolves an exact id, an exact "Brand Model" name, or a 1-based row
    // position, in that order.
    [[nodiscard]] const PurifierSpec* find(std::string_view key) const {
        for (const auto& u : units)
            if (u.id == key) return &u;
        for (const auto& u : units)
            if (u.display_name() == key) return &u;
        if (!key.empty() && key.find_first_not_of("0123456789") == std::string_view::npos &&
            key.size() < 6) {
            const auto pos = static_cast<std::size_t>(std::stoul(std::string(key)));
            if (pos >= 1 && pos <= units.size()) return &units[pos - 1];
        }
        return nullptr;
    }

    [[nodiscard]] const PurifierSpec& at(std::string_view key) const {
        if (const auto* u = find(key)) return *u;
        throw NotFoundError(std::string(key), "unit");
    }

    friend bool operator==(const Catalog&, const Catalog&) = default;
};

inline constexpr double kMaxSaneRate = 10.0;

// Electricity price per region code, USD per kWh.
struct RateTable {
    std::map<std::string, double> usd_per_kwh;
    std::map<std::string, std::string> names;  // optional display names

    [[nodiscard]] double rate(const std::string& region) const {
        const auto it = usd_per_kwh.find(region);
        if (it == usd_per_kwh.end()) throw NotFoundError(region, "region");
        return it->second;
    }

    [[nodiscard]] bool contains(const std::string& region) const {
        return usd_per_kwh.count(region) != 0;
    }

    [[nodiscard]] std::size_t size() const noexcept { return usd_per_kwh.size(); }

    friend bool operator==(const RateTable&, const RateTable&) = default;
};

[[nodiscard]] inline bool is_sane_rate(double usd_per_kwh) {
    return std::isfinite(usd_per_kwh) && usd_per_kwh > 0.0 && usd_per_kwh < kMaxSaneRate;
}

struct DailyAqi {
    std::string date;  // ISO yyyy-mm-dd
    int aqi = 0;

    friend bool operator==(const DailyAqi&, const DailyAqi&) = default;
};

struct DailySeries {
    std::vector<DailyAqi> values;

    friend bool operator==(const DailySeries&, const DailySeries&) = default;
};

struct ExceedanceCount {
    int days_over_threshold = 0;

    friend bool operator==(const ExceedanceCount&, const ExceedanceCount&) = default;
};

struct AqiCalendar {
    std::string region;
    std::variant<DailySeries, ExceedanceCount> data;

    friend bool operator==(const AqiCalendar&, const AqiCalendar&) = default;
};

enum class InitialCostMode {
    SpecFormula,   // PCY includes C_initial / lifetime
    Table5Compat,  // PCY omits the initial cost, as the published table does
};

[[nodiscard]] inline std::string_view to_string(InitialCostMode m) {
    return m == InitialCostMode::SpecFormula ? "spec" : "table5";
}

[[nodiscard]] inline std::optional<InitialCostMode> parse_mode(std::string_view s) {
    if (s == "spec" || s == "spec-formula" || s == "SpecFormula") return InitialCostMode::SpecFormula;
    if (s == "table5" || s == "table5-compat" || s == "Table5Compat") return InitialCostMode::Table5Compat;
    return std::nullopt;
}

struct CostModelParams {
    int lifetime_years = 10;
    double reference_area_sqft = 2500.0;
    double hours_per_day = 24.0;
    double coverage_factor = 1.5;
    int aqi_orange_threshold = 100;
    double medical_cost_threshold_usd = 1990.0;
    InitialCostMode initial_cost_mode = InitialCostMode::SpecFormula;

    friend bool operator==(const CostModelParams&, const CostModelParams&) = default;
};

inline void validate(const CostModelParams& p) {
    if (p.lifetime_years <= 0) throw DomainError("lifetime_years must be > 0");
    if (!(p.reference_area_sqft > 0.0) || !std::isfinite(p.reference_area_sqft))
        throw DomainError("reference_area_sqft must be > 0");
    if (!(p.hours_per_day > 0.0) || p.hours_per_day > 24.0)
        throw DomainError("hours_per_day must be in (0, 24]");
    if (!(p.coverage_factor > 0.0) || !std::isfinite(p.coverage_factor))
        throw DomainError("coverage_factor must be > 0");
    if (p.aqi_orange_threshold < 0) throw DomainError("aqi_orange_threshold must be >= 0");
    if (!(p.medical_cost_threshold_usd > 0.0))
        throw DomainError("medical_cost_threshold_usd must be > 0");
}

}  // namespace pcy
