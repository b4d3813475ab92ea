#pragma once

// Descriptive statistics, least squares, ranking and scenario sweeps over a
// purifier catalog. Batch operations never abort on a bad unit: the failure
// is recorded against the unit id and the sweep continues.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pcy/catalog.hpp"
#include "pcy/cost_engine.hpp"
#include "pcy/errors.hpp"

namespace pcy {

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;                 // population (divide by n)
    std::optional<double> sample_stddev; // divide by n - 1; absent for n == 1
    std::optional<double> cv;            // stddev / mean; absent when mean == 0
    double min = 0.0;
    double max = 0.0;

    // Coefficient of variation with the n - 1 convention.
    [[nodiscard]] std::optional<double> sample_cv() const {
        if (!sample_stddev || mean == 0.0) return std::nullopt;
        return *sample_stddev / std::abs(mean);
    }
};

[[nodiscard]] inline SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw DomainError("summarize: empty input");
    SummaryStats s;
    s.n = values.size();
    const auto n = static_cast<double>(s.n);

    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;

    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / n);
    if (s.n > 1) s.sample_stddev = std::sqrt(ss / (n - 1.0));
    if (s.mean != 0.0) s.cv = s.stddev / std::abs(s.mean);

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = s.n / 2;
    s.median = (s.n % 2 == 1) ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    s.min = sorted.front();
    s.max = sorted.back();
    return s;
}

enum class FitOrientation {
    CoverageExplainsPrice,  // x = A_optimal, y = C_initial
    PriceExplainsCoverage,  // x = C_initial, y = A_optimal
};

[[nodiscard]] inline std::string_view to_string(FitOrientation o) {
    return o == FitOrientation::CoverageExplainsPrice ? "coverage->price" : "price->coverage";
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::optional<FitOrientation> orientation;
};

[[nodiscard]] inline LinearFit ols_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DomainError("ols_fit: xs and ys differ in length");
    if (xs.size() < 2) throw DomainError("ols_fit: need at least two points");
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); }))
        throw DomainError("ols_fit: xs are all identical");

    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += e * e;
    }
    // Constant ys are fitted exactly by a flat line.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

[[nodiscard]] inline LinearFit coverage_price_fit(std::span<const PurifierSpec> units,
                                                  FitOrientation orientation,
                                                  const CostModelParams& params = {}) {
    std::vector<double> coverage, price;
    coverage.reserve(units.size());
    price.reserve(units.size());
    for (const auto& u : units) {
        coverage.push_back(optimal_coverage(u.cadr_cfm, params));
        price.push_back(u.initial_cost_usd);
    }
    auto fit = orientation == FitOrientation::CoverageExplainsPrice ? ols_fit(coverage, price)
                                                                    : ols_fit(price, coverage);
    fit.orientation = orientation;
    return fit;
}

struct UnitError {
    std::string id;
    std::string message;
};

struct RankedUnit {
    PurifierSpec spec;
    PcyResult result;
};

struct RankResult {
    std::vector<RankedUnit> ranked;
    std::vector<UnitError> errors;
};

// Ascending by total PCY; ties broken by (brand, model), then id.
[[nodiscard]] inline RankResult rank_by_pcy(std::span<const PurifierSpec> units, const CostContext& ctx) {
    if (units.empty()) throw DomainError("rank_by_pcy: empty catalog");
    RankResult out;
    out.ranked.reserve(units.size());
    for (const auto& u : units) {
        try {
            out.ranked.push_back({u, pcy(u, ctx)});
        } catch (const std::exception& e) {
            out.errors.push_back({u.id, e.what()});
        }
    }
    std::sort(out.ranked.begin(), out.ranked.end(), [](const RankedUnit& a, const RankedUnit& b) {
        return std::tie(a.result.total_usd_per_year, a.spec.brand, a.spec.model, a.spec.id) <
               std::tie(b.result.total_usd_per_year, b.spec.brand, b.spec.model, b.spec.id);
    });
    return out;
}

[[nodiscard]] inline std::vector<double> totals(std::span<const RankedUnit> ranked) {
    std::vector<double> t;
    t.reserve(ranked.size());
    for (const auto& r : ranked) t.push_back(r.result.total_usd_per_year);
    return t;
}

struct ThresholdReport {
    double threshold_usd = 0.0;
    std::size_t n_below = 0;
    std::size_t n_above = 0;  // total >= threshold
    std::vector<std::string> items_above;
};

struct ScoredUnit {
    std::string id;
    double total_usd_per_year = 0.0;
};

[[nodiscard]] inline ThresholdReport threshold_report(std::span<const ScoredUnit> pcys, double threshold_usd) {
    if (pcys.empty()) throw DomainError("threshold_report: empty input");
    ThresholdReport r;
    r.threshold_usd = threshold_usd;
    for (const auto& p : pcys) {
        if (p.total_usd_per_year < threshold_usd) {
            ++r.n_below;
        } else {
            ++r.n_above;
            r.items_above.push_back(p.id);
        }
    }
    return r;
}

[[nodiscard]] inline ThresholdReport threshold_report(std::span<const RankedUnit> ranked, double threshold_usd) {
    std::vector<ScoredUnit> scored;
    scored.reserve(ranked.size());
    for (const auto& r : ranked) scored.push_back({r.spec.id, r.result.total_usd_per_year});
    return threshold_report(scored, threshold_usd);
}

struct RegionError {
    std::string region;
    std::string id;
    std::string message;
};

struct StateSweep {
    std::map<std::string, SummaryStats> per_region;
    // Range of per-region median PCY.
    double median_range = 0.0;
    std::string lowest_median_region;
    std::string highest_median_region;
    // Per-unit spread PCY(highest rate) - PCY(lowest rate), summarized over units.
    std::optional<SummaryStats> per_unit_range;
    std::string lowest_rate_region;
    std::string highest_rate_region;
    std::vector<RegionError> errors;
};

[[nodiscard]] inline StateSweep state_sweep(std::span<const PurifierSpec> units, const RateTable& rates,
                                            const CostContext& ctx_template) {
    if (rates.size() == 0) throw DomainError("state_sweep: empty rate table");
    if (units.empty()) throw DomainError("state_sweep: empty catalog");

    StateSweep out;
    // per region: id -> total
    std::map<std::string, std::map<std::string, double>> by_region;
    for (const auto& [region, rate] : rates.usd_per_kwh) {
        CostContext ctx = ctx_template;
        ctx.rate_usd_per_kwh = rate;
        std::vector<double> vals;
        for (const auto& u : units) {
            try {
                const double t = pcy(u, ctx).total_usd_per_year;
                by_region[region][u.id] = t;
                vals.push_back(t);
            } catch (const std::exception& e) {
                out.errors.push_back({region, u.id, e.what()});
            }
        }
        if (!vals.empty()) out.per_region.emplace(region, summarize(vals));
    }

    if (!out.per_region.empty()) {
        const auto [lo, hi] = std::minmax_element(
            out.per_region.begin(), out.per_region.end(),
            [](const auto& a, const auto& b) { return a.second.median < b.second.median; });
        out.lowest_median_region = lo->first;
        out.highest_median_region = hi->first;
        out.median_range = hi->second.median - lo->second.median;
    }

    const auto [rlo, rhi] = std::minmax_element(
        rates.usd_per_kwh.begin(), rates.usd_per_kwh.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    out.lowest_rate_region = rlo->first;
    out.highest_rate_region = rhi->first;

    std::vector<double> spreads;
    const auto& lo_totals = by_region[rlo->first];
    const auto& hi_totals = by_region[rhi->first];
    for (const auto& [id, hi_total] : hi_totals) {
        const auto it = lo_totals.find(id);
        if (it != lo_totals.end()) spreads.push_back(hi_total - it->second);
    }
    if (!spreads.empty()) out.per_unit_range = summarize(spreads);
    return out;
}

struct CountyResult {
    std::string region;
    int operating_days = 0;
    std::optional<SummaryStats> stats;
    ThresholdReport threshold;
};

struct CountyScenario {
    std::vector<CountyResult> counties;
    std::optional<SummaryStats> pooled;  // over every (county, unit) pair
    ThresholdReport pooled_threshold;
    std::vector<RegionError> errors;
};

// Runs every unit in every county, switching purifiers on only on days whose
// AQI exceeds the orange threshold. Counts above 365 (leap years) are capped.
[[nodiscard]] inline CountyScenario county_scenario(std::span<const PurifierSpec> units,
                                                    std::span<const AqiCalendar> calendars,
                                                    const CostContext& ctx_template) {
    if (calendars.empty()) throw DomainError("county_scenario: no calendars");
    if (units.empty()) throw DomainError("county_scenario: empty catalog");

    CountyScenario out;
    std::vector<ScoredUnit> pooled;
    for (const auto& cal : calendars) {
        CostContext ctx = ctx_template;
        const int days = std::min(operating_days(cal, ctx.params.aqi_orange_threshold), 365);
        ctx.t_operate_days = days;

        CountyResult c;
        c.region = cal.region;
        c.operating_days = days;
        std::vector<ScoredUnit> scored;
        for (const auto& u : units) {
            try {
                scored.push_back({u.id, pcy(u, ctx).total_usd_per_year});
            } catch (const std::exception& e) {
                out.errors.push_back({cal.region, u.id, e.what()});
            }
        }
        if (!scored.empty()) {
            std::vector<double> vals;
            for (const auto& s : scored) vals.push_back(s.total_usd_per_year);
            c.stats = summarize(vals);
            c.threshold = threshold_report(scored, ctx.params.medical_cost_threshold_usd);
        } else {
            c.threshold.threshold_usd = ctx.params.medical_cost_threshold_usd;
        }
        pooled.insert(pooled.end(), scored.begin(), scored.end());
        out.counties.push_back(std::move(c));
    }
    out.pooled_threshold.threshold_usd = ctx_template.params.medical_cost_threshold_usd;
    if (!pooled.empty()) {
        std::vector<double> vals;
        for (const auto& s : pooled) vals.push_back(s.total_usd_per_year);
        out.pooled = summarize(vals);
        out.pooled_threshold = threshold_report(pooled, ctx_template.params.medical_cost_threshold_usd);
    }
    return out;
}

// Operating days implied by a scenario statistic when PCY is proportional to
// operating days (Table5Compat mode): 365 * scenario / continuous.
[[nodiscard]] inline double implied_operating_days(double scenario_value, double continuous_value) {
    if (!(continuous_value > 0.0)) throw DomainError("continuous statistic must be > 0");
    return kDaysPerYear * scenario_value / continuous_value;
}

}  // namespace pcy
