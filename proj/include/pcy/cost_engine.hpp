#pragma once

// Purification Cost per Year (PCY): annualized purchase, filter and
// electricity cost of one purifier, scaled to the number of units needed to
// cover a reference home.
//
//   A_optimal  = CADR * coverage_factor                      (factor 3/2)
//   elec/yr    = T_operate * (W / 1000) * rate * hours_per_day
//   maint/yr   = T_operate * C_filter / T_replacement
//   PCY        = (C_initial / lifetime + maint/yr + elec/yr) * (area / A_optimal)
//
// In Table5Compat mode the C_initial / lifetime term is dropped.

#include <cmath>
#include <variant>

#include "pcy/catalog.hpp"
#include "pcy/errors.hpp"

namespace pcy {

inline constexpr double kDaysPerYear = 365.0;

struct CostContext {
    double rate_usd_per_kwh = 0.0;
    double t_operate_days = kDaysPerYear;
    CostModelParams params{};

    friend bool operator==(const CostContext&, const CostContext&) = default;
};

inline void validate(const CostContext& ctx) {
    if (!(ctx.rate_usd_per_kwh > 0.0) || !std::isfinite(ctx.rate_usd_per_kwh))
        throw DomainError("electricity rate must be > 0");
    if (!(ctx.t_operate_days >= 0.0 && ctx.t_operate_days <= kDaysPerYear))
        throw DomainError("t_operate_days must be in [0, 365]");
    validate(ctx.params);
}

struct PcyResult {
    double total_usd_per_year = 0.0;
    double initial_component_usd = 0.0;  // 0 in Table5Compat mode
    double maintenance_usd_per_year = 0.0;
    double electricity_usd_per_year = 0.0;
    double optimal_coverage_sqft = 0.0;
    double normalization_multiplier = 0.0;

    friend bool operator==(const PcyResult&, const PcyResult&) = default;
};

// Fractions of the three-component annual sum. The initial share is always
// C_initial / lifetime, whatever the engine mode.
struct CostShares {
    double initial = 0.0;
    double maintenance = 0.0;
    double electricity = 0.0;
};

[[nodiscard]] inline double optimal_coverage(double cadr_cfm, const CostModelParams& params = {}) {
    if (!(cadr_cfm > 0.0) || !std::isfinite(cadr_cfm)) throw DomainError("cadr must be > 0");
    return cadr_cfm * params.coverage_factor;
}

// Smallest CADR recommended for a room: two thirds of its floor area.
[[nodiscard]] inline double min_cadr_for_room(double room_area_sqft) {
    if (!(room_area_sqft > 0.0) || !std::isfinite(room_area_sqft))
        throw DomainError("room area must be > 0");
    return room_area_sqft * 2.0 / 3.0;
}

[[nodiscard]] inline double electricity_cost_per_year(const CostContext& ctx, double watts) {
    if (!(watts > 0.0) || !std::isfinite(watts)) throw DomainError("watts must be > 0");
    return ctx.t_operate_days * (watts / 1000.0) * ctx.rate_usd_per_kwh * ctx.params.hours_per_day;
}

[[nodiscard]] inline double maintenance_cost_per_year(const CostContext& ctx, const FilterPlan& plan) {
    validate(plan);
    if (const auto* p = std::get_if<PeriodicFilter>(&plan))
        return ctx.t_operate_days * p->filter_price_usd / p->replacement_interval_days;
    // Prorated linearly by operating days.
    return std::get<AnnualizedFilter>(plan).usd_per_365_days * (ctx.t_operate_days / kDaysPerYear);
}

[[nodiscard]] inline PcyResult pcy(const PurifierSpec& spec, const CostContext& ctx) {
    validate(spec);
    validate(ctx);

    PcyResult r;
    r.optimal_coverage_sqft = optimal_coverage(spec.cadr_cfm, ctx.params);
    r.normalization_multiplier = ctx.params.reference_area_sqft / r.optimal_coverage_sqft;
    r.initial_component_usd = ctx.params.initial_cost_mode == InitialCostMode::SpecFormula
                                  ? spec.initial_cost_usd / ctx.params.lifetime_years
                                  : 0.0;
    r.maintenance_usd_per_year = maintenance_cost_per_year(ctx, spec.filter_plan);
    r.electricity_usd_per_year = electricity_cost_per_year(ctx, spec.rated_watts);
    r.total_usd_per_year =
        (r.initial_component_usd + r.maintenance_usd_per_year + r.electricity_usd_per_year) *
        r.normalization_multiplier;
    return r;
}

[[nodiscard]] inline CostShares pcy_breakdown(const PcyResult& r, const PurifierSpec& spec,
                                              const CostContext& ctx) {
    const double initial = spec.initial_cost_usd / ctx.params.lifetime_years;
    const double sum = initial + r.maintenance_usd_per_year + r.electricity_usd_per_year;
    if (!(sum > 0.0)) throw DomainError("cost breakdown undefined: all components are zero");
    CostShares s;
    s.initial = initial / sum;
    s.maintenance = r.maintenance_usd_per_year / sum;
    s.electricity = r.electricity_usd_per_year / sum;
    return s;
}

// Days the purifier runs when it is switched on only above `threshold` AQI.
[[nodiscard]] inline int operating_days(const AqiCalendar& cal, int threshold) {
    if (const auto* s = std::get_if<DailySeries>(&cal.data)) {
        int n = 0;
        for (const auto& d : s->values)
            if (d.aqi > threshold) ++n;
        return n;
    }
    return std::get<ExceedanceCount>(cal.data).days_over_threshold;
}

}  // namespace pcy
