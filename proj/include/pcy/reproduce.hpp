#pragma once

// Audit of the published figures against the shipped datasets. Every line is
// REPRODUCED, DISCREPANCY (with the computed value) or INFO.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "pcy/analytics.hpp"
#include "pcy/catalog.hpp"
#include "pcy/cost_engine.hpp"
#include "pcy/money.hpp"

namespace pcy {

// Published values.
namespace published {
inline constexpr double kMedianPcy = 1607.52;
inline constexpr double kStateRange = 1002.12;
inline constexpr double kInitialShare = 0.138;
inline constexpr double kCvInitial = 1.00;
inline constexpr double kCvMaintenance = 0.74;
inline constexpr double kCvPcy = 1.06;
inline constexpr double kTrendSlope = 0.998;
inline constexpr double kTrendIntercept = 13.4;
inline constexpr double kTrendR2 = 0.431;
inline constexpr double kLosAngelesMean = 347.01;
inline constexpr double kLosAngelesMedian = 253.04;
inline constexpr double kCountyPooledMedian = 506.09;
inline constexpr double kKingsMean = 694.01;
inline constexpr double kMedicalCostUsd = 1990.0;
inline constexpr int kUnitsBelowThreshold = 47;
inline constexpr int kUnitsInThresholdClaim = 52;
inline constexpr double kCaliforniaRate = 0.251;
inline constexpr const char* kBestPerformers[] = {"Medify MA-112", "Blueair Pure 311 Auto",
                                                  "Blueair Pure 211+ Auto", "Coway Airmega 250",
                                                  "Coway Airmega AP-1216L"};
}  // namespace published

// Acceptance tolerances.
namespace tolerance {
inline constexpr double kRowUsd = 0.01;
inline constexpr double kMedianUsd = 25.0;
inline constexpr double kInitialShare = 0.005;
inline constexpr double kCv = 0.05;
inline constexpr double kSlope = 0.05;
inline constexpr double kIntercept = 5.0;
inline constexpr double kR2 = 0.02;
inline constexpr double kStateRangeUsd = 10.0;
inline constexpr double kImpliedDays = 5.0;
}  // namespace tolerance

enum class ReproStatus { Reproduced, Discrepancy, Info };

[[nodiscard]] inline std::string_view to_string(ReproStatus s) {
    switch (s) {
        case ReproStatus::Reproduced: return "REPRODUCED";
        case ReproStatus::Discrepancy: return "DISCREPANCY";
        case ReproStatus::Info: return "INFO";
    }
    return "?";
}

struct ReproLine {
    std::string section;
    std::string label;
    ReproStatus status = ReproStatus::Info;
    std::string computed;
    std::string expected;
    std::string note;
};

struct ReproductionReport {
    std::vector<ReproLine> lines;

    [[nodiscard]] std::size_t count(ReproStatus s, std::string_view section = {}) const {
        return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [&](const ReproLine& l) {
            return l.status == s && (section.empty() || l.section == section);
        }));
    }

    [[nodiscard]] const ReproLine* find(std::string_view section, std::string_view label) const {
        for (const auto& l : lines)
            if (l.section == section && l.label == label) return &l;
        return nullptr;
    }
};

[[nodiscard]] inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

[[nodiscard]] inline ReproStatus within(double computed, double expected, double tol) {
    // Half-ulp slack so that a value printed at the tolerance edge is not rejected
    // by binary noise.
    return std::abs(computed - expected) <= tol * (1.0 + 1e-9) ? ReproStatus::Reproduced
                                                                : ReproStatus::Discrepancy;
}

// Printed value vs recomputed value, compared after rounding to cents.
[[nodiscard]] inline bool matches_printed_cents(double computed, double printed, double tol_usd = tolerance::kRowUsd) {
    const auto diff = std::llabs(to_cents(computed) - to_cents(printed));
    return static_cast<double>(diff) <= std::round(tol_usd * 100.0);
}

struct ReproductionInputs {
    const Catalog* catalog = nullptr;
    const RateTable* rates = nullptr;
    const std::vector<AqiCalendar>* calendars = nullptr;  // optional
    std::string reference_region = "CA";
    CostModelParams params{};
};

namespace detail {

inline CostContext context_for(const ReproductionInputs& in, InitialCostMode mode, double days = kDaysPerYear) {
    CostContext ctx;
    ctx.rate_usd_per_kwh = in.rates->contains(in.reference_region) ? in.rates->rate(in.reference_region)
                                                                   : published::kCaliforniaRate;
    ctx.t_operate_days = days;
    ctx.params = in.params;
    ctx.params.initial_cost_mode = mode;
    return ctx;
}

inline std::string cv_text(const SummaryStats& s) {
    std::string out = "pop " + (s.cv ? fixed(*s.cv, 3) : std::string("n/a"));
    out += " / sample " + (s.sample_cv() ? fixed(*s.sample_cv(), 3) : std::string("n/a"));
    return out;
}

inline ReproLine cv_line(const std::string& label, const SummaryStats& s, double expected, ReproStatus use_status) {
    const bool pop_ok = s.cv && std::abs(*s.cv - expected) <= tolerance::kCv;
    const auto scv = s.sample_cv();
    const bool sample_ok = scv && std::abs(*scv - expected) <= tolerance::kCv;
    std::string note;
    if (pop_ok || sample_ok) {
        const double dp = s.cv ? std::abs(*s.cv - expected) : 1e9;
        const double ds = scv ? std::abs(*scv - expected) : 1e9;
        note = std::string("within ±0.05 for: ") + (pop_ok ? "population " : "") + (sample_ok ? "sample " : "") +
               "(closest: " + (ds < dp ? "sample" : "population") + ")";
    } else {
        note = "neither convention within ±0.05";
    }
    ReproStatus status = use_status;
    if (status != ReproStatus::Info) status = (pop_ok || sample_ok) ? ReproStatus::Reproduced : ReproStatus::Discrepancy;
    return {"cv", label, status, cv_text(s), fixed(expected, 2), note};
}

inline ReproLine fit_line(const LinearFit& f) {
    const bool ok = std::abs(f.slope - published::kTrendSlope) <= tolerance::kSlope &&
                    std::abs(f.intercept - published::kTrendIntercept) <= tolerance::kIntercept &&
                    std::abs(f.r_squared - published::kTrendR2) <= tolerance::kR2;
    return {"ols",
            std::string(to_string(*f.orientation)),
            ok ? ReproStatus::Reproduced : ReproStatus::Discrepancy,
            "slope " + fixed(f.slope, 4) + ", intercept " + fixed(f.intercept, 2) + ", r2 " + fixed(f.r_squared, 4),
            "slope 0.998, intercept 13.4, r2 0.431",
            "tolerance ±0.05 / ±5 / ±0.02"};
}

}  // namespace detail

[[nodiscard]] inline ReproductionReport reproduce(const ReproductionInputs& in) {
    using detail::context_for;
    ReproductionReport rep;
    const auto& units = in.catalog->units;
    const auto compat = context_for(in, InitialCostMode::Table5Compat);
    const auto formula = context_for(in, InitialCostMode::SpecFormula);

    // Per-row check of the published table.
    for (const auto& u : units) {
        const auto it = in.catalog->expected_pcy_usd.find(u.id);
        if (it == in.catalog->expected_pcy_usd.end()) continue;
        try {
            const auto c = pcy(u, compat);
            const auto f = pcy(u, formula);
            const double printed = it->second;
            const bool ok = matches_printed_cents(c.total_usd_per_year, printed);
            // Each printed 10-year cell is rounded to +-0.005; two of them enter the annual sum / 10.
            const double bound = 0.001 * c.normalization_multiplier + 0.005;
            std::string note = "spec-formula " + format_usd(f.total_usd_per_year) + " (delta +" +
                               format_usd(f.total_usd_per_year - c.total_usd_per_year) + ")";
            if (!ok) {
                const double d = round_cents(c.total_usd_per_year) - printed;
                note += std::abs(d) <= bound ? "; within printed-cell rounding bound ±" + fixed(bound, 3)
                                             : "; exceeds printed-cell rounding bound ±" + fixed(bound, 3);
            }
            rep.lines.push_back({"table5-row", u.display_name(),
                                 ok ? ReproStatus::Reproduced : ReproStatus::Discrepancy,
                                 format_usd(c.total_usd_per_year), format_usd(printed), note});
        } catch (const std::exception& e) {
            rep.lines.push_back({"table5-row", u.display_name(), ReproStatus::Discrepancy, "error",
                                 format_usd(it->second), e.what()});
        }
    }

    const auto compat_rank = rank_by_pcy(units, compat);
    const auto formula_rank = rank_by_pcy(units, formula);
    const auto compat_stats = summarize(totals(compat_rank.ranked));
    const auto formula_stats = summarize(totals(formula_rank.ranked));

    const std::string count_note = "n=" + std::to_string(compat_stats.n) +
                                   " units; the source cites 54 units in prose, 52 in the table title and prints 53 rows";
    rep.lines.push_back({"median", "table5-compat median PCY",
                         within(compat_stats.median, published::kMedianPcy, tolerance::kMedianUsd),
                         format_usd(compat_stats.median), format_usd(published::kMedianPcy),
                         count_note + "; tolerance ±$25"});
    rep.lines.push_back({"median", "spec-formula median PCY", ReproStatus::Info, format_usd(formula_stats.median),
                         format_usd(published::kMedianPcy), "initial cost included"});

    // Initial-cost share.
    {
        std::vector<double> shares;
        double sum_initial = 0.0, sum_all = 0.0;
        for (const auto& r : formula_rank.ranked) {
            const auto s = pcy_breakdown(r.result, r.spec, formula);
            shares.push_back(s.initial);
            const double initial = r.spec.initial_cost_usd / formula.params.lifetime_years;
            sum_initial += initial;
            sum_all += initial + r.result.maintenance_usd_per_year + r.result.electricity_usd_per_year;
        }
        const auto s = summarize(shares);
        rep.lines.push_back({"initial-share", "mean of per-unit initial shares",
                             within(s.mean, published::kInitialShare, tolerance::kInitialShare),
                             fixed(100.0 * s.mean, 2) + "%", "13.80%", "tolerance ±0.5 pp"});
        rep.lines.push_back({"initial-share", "aggregate initial share (sum of initial / sum of all)",
                             ReproStatus::Info, fixed(100.0 * sum_initial / sum_all, 2) + "%", "13.80%",
                             "alternative reading of the published average"});
    }

    // Coefficients of variation.
    {
        std::vector<double> initial, maintenance;
        for (const auto& r : formula_rank.ranked) {
            initial.push_back(r.spec.initial_cost_usd);
            maintenance.push_back(r.result.maintenance_usd_per_year);
        }
        rep.lines.push_back(detail::cv_line("C_initial", summarize(initial), published::kCvInitial, ReproStatus::Reproduced));
        rep.lines.push_back(detail::cv_line("maintenance per year", summarize(maintenance), published::kCvMaintenance,
                                            ReproStatus::Reproduced));
        rep.lines.push_back(detail::cv_line("PCY (spec-formula)", formula_stats, published::kCvPcy, ReproStatus::Reproduced));
        rep.lines.push_back(detail::cv_line("PCY (table5-compat)", compat_stats, published::kCvPcy, ReproStatus::Info));
    }

    // Trendline between coverage and price, both orientations.
    for (auto o : {FitOrientation::CoverageExplainsPrice, FitOrientation::PriceExplainsCoverage})
        rep.lines.push_back(detail::fit_line(coverage_price_fit(units, o, in.params)));

    // Range across states.
    {
        const auto sweep = state_sweep(units, *in.rates, compat);
        rep.lines.push_back({"state-range", "range of per-region median PCY",
                             within(sweep.median_range, published::kStateRange, tolerance::kStateRangeUsd),
                             format_usd(sweep.median_range), format_usd(published::kStateRange),
                             sweep.highest_median_region + " - " + sweep.lowest_median_region + "; tolerance ±$10"});
        if (sweep.per_unit_range) {
            rep.lines.push_back({"state-range", "mean per-unit range (highest - lowest rate)",
                                 within(sweep.per_unit_range->mean, published::kStateRange,
                                                tolerance::kStateRangeUsd),
                                 format_usd(sweep.per_unit_range->mean), format_usd(published::kStateRange),
                                 sweep.highest_rate_region + " - " + sweep.lowest_rate_region +
                                     "; median per-unit range " + format_usd(sweep.per_unit_range->median)});
        }
    }

    // Los Angeles: operating days implied by the median and by the mean must agree.
    {
        const double from_median = implied_operating_days(published::kLosAngelesMedian, published::kMedianPcy);
        const double from_mean = implied_operating_days(published::kLosAngelesMean, compat_stats.mean);
        rep.lines.push_back({"aqi-consistency", "Los Angeles implied operating days",
                             within(from_mean, from_median, tolerance::kImpliedDays),
                             "median ratio " + fixed(from_median, 1) + " d, mean ratio " + fixed(from_mean, 1) + " d",
                             "agreement within ±5 days",
                             "mean ratio uses recomputed continuous mean " + format_usd(compat_stats.mean)});
        rep.lines.push_back({"aqi-consistency", "county medians (pooled $506.09, Kings mean $694.01)", ReproStatus::Info,
                             "n/a", "506.09 / 694.01", "per-county orange-day counts are not published"});
    }

    // Medical-cost threshold at continuous operation.
    {
        const auto tr = threshold_report(std::span<const RankedUnit>(compat_rank.ranked), in.params.medical_cost_threshold_usd);
        std::size_t printed_above = 0;
        for (const auto& [id, v] : in.catalog->expected_pcy_usd)
            if (v > in.params.medical_cost_threshold_usd) ++printed_above;
        rep.lines.push_back({"threshold", "units at or above $" + fixed(in.params.medical_cost_threshold_usd, 0) +
                                              " (continuous, table5-compat)",
                             tr.n_above == printed_above ? ReproStatus::Reproduced : ReproStatus::Discrepancy,
                             std::to_string(tr.n_above) + " of " + std::to_string(tr.n_below + tr.n_above),
                             std::to_string(printed_above) + " printed values above", ""});
        rep.lines.push_back({"threshold", "47 of 52 below threshold in polluted counties", ReproStatus::Info,
                             std::to_string(tr.n_below) + " below at continuous operation", "47 of 52",
                             "county scenario unspecified; supply calendars with --aqi for the parameterized count"});
    }

    if (in.calendars && !in.calendars->empty()) {
        const auto cs = county_scenario(units, *in.calendars, compat);
        for (const auto& c : cs.counties) {
            if (!c.stats) continue;
            rep.lines.push_back({"county", c.region, ReproStatus::Info,
                                 "days " + std::to_string(c.operating_days) + ", median " + format_usd(c.stats->median) +
                                     ", mean " + format_usd(c.stats->mean),
                                 "", std::to_string(c.threshold.n_below) + " of " +
                                         std::to_string(c.threshold.n_below + c.threshold.n_above) + " below threshold"});
        }
        if (cs.pooled) {
            rep.lines.push_back({"county", "pooled median", ReproStatus::Info, format_usd(cs.pooled->median),
                                 format_usd(published::kCountyPooledMedian),
                                 std::to_string(cs.pooled_threshold.n_below) + " of " +
                                     std::to_string(cs.pooled->n) + " (county, unit) pairs below threshold"});
        }
    }

    // Best performers: ranking follows the numbers.
    {
        std::string computed, expected;
        bool same = compat_rank.ranked.size() >= 5;
        for (std::size_t i = 0; i < 5 && i < compat_rank.ranked.size(); ++i) {
            if (i) computed += ", ";
            computed += compat_rank.ranked[i].spec.display_name();
            if (compat_rank.ranked[i].spec.display_name() != published::kBestPerformers[i]) same = false;
        }
        for (std::size_t i = 0; i < 5; ++i) {
            if (i) expected += ", ";
            expected += published::kBestPerformers[i];
        }
        rep.lines.push_back({"ranking", "five lowest PCY (table5-compat)",
                             same ? ReproStatus::Reproduced : ReproStatus::Discrepancy, computed, expected,
                             "ordering follows recomputed PCY"});
    }
    return rep;
}

}  // namespace pcy
