#pragma once

// Command-line front end. `run_cli` is the whole program; tools/pcy_cli.cpp
// only forwards argv to it.
//
// Exit codes: 0 success, 1 fatal error, 2 partial result (unknown unit ids,
// rejected input rows).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcy/analytics.hpp"
#include "pcy/catalog.hpp"
#include "pcy/cost_engine.hpp"
#include "pcy/ingest.hpp"
#include "pcy/json_io.hpp"
#include "pcy/render.hpp"
#include "pcy/reproduce.hpp"
#include "pcy/service.hpp"

namespace pcy {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2;

class CliFatal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace cli_detail {

[[nodiscard]] inline std::string default_data_dir() {
    if (const char* env = std::getenv("PCY_DATA_DIR"); env && *env) return env;
    return "data";
}

struct Options {
    std::string data_dir = default_data_dir();
    std::string catalog_path;
    std::string rates_path;
    std::string aqi_path;
    std::string county;
    std::string region = "CA";
    double rate = 0.0;
    double days = kDaysPerYear;
    std::string mode = "spec";
    double home_sqft = 2500.0;
    double threshold = 1990.0;
    std::string format = "human";
    std::size_t top = 0;
    std::vector<std::string> units;
    int port = 8080;
    std::string host = "127.0.0.1";

    CLI::Option* rate_opt = nullptr;
    CLI::Option* days_opt = nullptr;
};

struct Session {
    std::ostream& out;
    std::ostream& err;
    int status = kExitOk;

    void partial() {
        if (status == kExitOk) status = kExitPartial;
    }
};

inline void report_rejections(Session& s, const std::string& path, const ParseReport& report) {
    for (const auto& r : report.rejected) {
        s.err << "warning: " << path << ":" << r.row_number << ": ";
        if (!r.column.empty()) s.err << r.column << ": ";
        s.err << r.message << " (row skipped)\n";
    }
    if (!report.rejected.empty()) s.partial();
}

inline std::string read_or_fatal(const std::string& path) {
    try {
        return read_text_file(path);
    } catch (const std::exception& e) {
        throw CliFatal(e.what());
    }
}

inline Catalog load_catalog(Session& s, const Options& o) {
    const auto path = o.catalog_path.empty() ? o.data_dir + "/table5_catalog.csv" : o.catalog_path;
    auto parsed = parse_catalog(read_or_fatal(path));
    if (parsed.report.fatal) throw CliFatal(path + ": " + *parsed.report.fatal);
    report_rejections(s, path, parsed.report);
    if (parsed.catalog.units.empty()) throw CliFatal(path + ": no valid units");
    return std::move(parsed.catalog);
}

inline RateTable load_rates(Session& s, const Options& o) {
    const auto path = o.rates_path.empty() ? o.data_dir + "/rates.csv" : o.rates_path;
    auto parsed = parse_rates(read_or_fatal(path));
    if (parsed.report.fatal) throw CliFatal(path + ": " + *parsed.report.fatal);
    report_rejections(s, path, parsed.report);
    return std::move(parsed.rates);
}

inline std::vector<AqiCalendar> load_calendars(Session& s, const std::string& path) {
    auto parsed = parse_aqi(read_or_fatal(path));
    if (parsed.report.fatal) throw CliFatal(path + ": " + *parsed.report.fatal);
    report_rejections(s, path, parsed.report);
    return std::move(parsed.calendars);
}

inline OutputFormat format_of(const Options& o) {
    const auto f = parse_format(o.format);
    if (!f) throw CliFatal("unknown --format '" + o.format + "' (human, csv, json)");
    return *f;
}

// Scenario from flags: rate from --rate or --region, days from --days or
// from the --county calendar in --aqi.
inline CostContext context_of(Session& s, const Options& o, const RateTable& rates) {
    CostContext ctx;
    const auto mode = parse_mode(o.mode);
    if (!mode) throw CliFatal("unknown --mode '" + o.mode + "' (spec, table5)");
    ctx.params.initial_cost_mode = *mode;
    ctx.params.reference_area_sqft = o.home_sqft;
    ctx.params.medical_cost_threshold_usd = o.threshold;

    if (o.rate_opt && o.rate_opt->count() > 0) {
        ctx.rate_usd_per_kwh = o.rate;
    } else {
        if (!rates.contains(o.region)) throw CliFatal("unknown region '" + o.region + "'");
        ctx.rate_usd_per_kwh = rates.rate(o.region);
    }

    ctx.t_operate_days = o.days;
    if (!o.aqi_path.empty() && !o.county.empty()) {
        if (o.days_opt && o.days_opt->count() > 0) throw CliFatal("give either --days or --aqi/--county, not both");
        const auto calendars = load_calendars(s, o.aqi_path);
        const AqiCalendar* cal = nullptr;
        for (const auto& c : calendars)
            if (c.region == o.county) cal = &c;
        if (!cal) throw CliFatal("county '" + o.county + "' not found in " + o.aqi_path);
        ctx.t_operate_days = std::min(operating_days(*cal, ctx.params.aqi_orange_threshold), 365);
    }
    try {
        validate(ctx);
    } catch (const DomainError& e) {
        throw CliFatal(e.what());
    }
    return ctx;
}

inline json money(double v) { return format_usd(v); }

inline json share(double v) { return std::round(v * 1e6) / 1e6; }

inline void add_scenario_summary(Document& doc, const CostContext& ctx, const Options& o) {
    doc.summary.emplace_back("mode", std::string(to_string(ctx.params.initial_cost_mode)));
    doc.summary.emplace_back("region", (o.rate_opt && o.rate_opt->count() > 0) ? json(nullptr) : json(o.region));
    doc.summary.emplace_back("rate_usd_per_kwh", ctx.rate_usd_per_kwh);
    doc.summary.emplace_back("t_operate_days", ctx.t_operate_days);
    doc.summary.emplace_back("home_area_sqft", ctx.params.reference_area_sqft);
}

// Resolves ids; unknown ids are reported and mark the run partial.
inline std::vector<PurifierSpec> select_units(Session& s, const Catalog& catalog, const std::vector<std::string>& keys) {
    if (keys.empty()) return catalog.units;
    std::vector<PurifierSpec> out;
    for (const auto& k : keys) {
        if (const auto* u = catalog.find(k)) {
            out.push_back(*u);
        } else {
            s.err << "error: unknown unit '" << k << "'\n";
            s.partial();
        }
    }
    return out;
}

inline Document cmd_pcy(Session& s, const Options& o) {
    const auto catalog = load_catalog(s, o);
    const auto rates = load_rates(s, o);
    const auto ctx = context_of(s, o, rates);
    Document doc;
    OutputTable t{"units",
                  {"id", "name", "pcy_usd_per_year", "initial_component_usd", "maintenance_usd_per_year",
                   "electricity_usd_per_year", "optimal_coverage_sqft", "normalization_multiplier"},
                  {}};
    for (const auto& u : select_units(s, catalog, o.units)) {
        try {
            const auto r = pcy(u, ctx);
            t.rows.push_back({u.id, u.display_name(), money(r.total_usd_per_year), money(r.initial_component_usd),
                              money(r.maintenance_usd_per_year), money(r.electricity_usd_per_year),
                              r.optimal_coverage_sqft, share(r.normalization_multiplier)});
        } catch (const std::exception& e) {
            s.err << "error: " << u.id << ": " << e.what() << '\n';
            s.partial();
        }
    }
    doc.tables.push_back(std::move(t));
    add_scenario_summary(doc, ctx, o);
    return doc;
}

inline Document ranking_document(Session& s, const Options& o, bool with_detail) {
    const auto catalog = load_catalog(s, o);
    const auto rates = load_rates(s, o);
    const auto ctx = context_of(s, o, rates);
    const auto units = select_units(s, catalog, o.units);
    if (units.empty()) throw CliFatal("no units selected");
    const auto ranked = rank_by_pcy(units, ctx);
    for (const auto& e : ranked.errors) {
        s.err << "error: " << e.id << ": " << e.message << '\n';
        s.partial();
    }

    Document doc;
    OutputTable t{"ranking", {"rank", "id", "name", "pcy_usd_per_year"}, {}};
    if (with_detail) {
        t.columns.insert(t.columns.end(), {"normalization_multiplier", "initial_share", "maintenance_share",
                                           "electricity_share"});
    }
    t.columns.push_back("below_medical_threshold");
    std::size_t n = 0;
    for (const auto& r : ranked.ranked) {
        if (o.top > 0 && n >= o.top) break;
        ++n;
        std::vector<json> row{static_cast<int>(n), r.spec.id, r.spec.display_name(), money(r.result.total_usd_per_year)};
        if (with_detail) {
            row.push_back(share(r.result.normalization_multiplier));
            try {
                const auto sh = pcy_breakdown(r.result, r.spec, ctx);
                row.insert(row.end(), {share(sh.initial), share(sh.maintenance), share(sh.electricity)});
            } catch (const DomainError&) {
                row.insert(row.end(), {nullptr, nullptr, nullptr});
            }
        }
        row.push_back(r.result.total_usd_per_year < ctx.params.medical_cost_threshold_usd);
        t.rows.push_back(std::move(row));
    }
    doc.tables.push_back(std::move(t));
    add_scenario_summary(doc, ctx, o);
    const auto tr = threshold_report(std::span<const RankedUnit>(ranked.ranked), ctx.params.medical_cost_threshold_usd);
    doc.summary.emplace_back("threshold_usd", money(tr.threshold_usd));
    doc.summary.emplace_back("n_below_threshold", tr.n_below);
    doc.summary.emplace_back("n_at_or_above_threshold", tr.n_above);
    return doc;
}

inline Document cmd_breakdown(Session& s, const Options& o) {
    const auto catalog = load_catalog(s, o);
    const auto rates = load_rates(s, o);
    const auto ctx = context_of(s, o, rates);
    Document doc;
    OutputTable t{"breakdown",
                  {"id", "name", "initial_per_year_usd", "maintenance_usd_per_year", "electricity_usd_per_year",
                   "initial_share", "maintenance_share", "electricity_share"},
                  {}};
    for (const auto& u : select_units(s, catalog, o.units)) {
        try {
            const auto r = pcy(u, ctx);
            const auto sh = pcy_breakdown(r, u, ctx);
            t.rows.push_back({u.id, u.display_name(), money(u.initial_cost_usd / ctx.params.lifetime_years),
                              money(r.maintenance_usd_per_year), money(r.electricity_usd_per_year), share(sh.initial),
                              share(sh.maintenance), share(sh.electricity)});
        } catch (const std::exception& e) {
            s.err << "error: " << u.id << ": " << e.what() << '\n';
            s.partial();
        }
    }
    doc.tables.push_back(std::move(t));
    add_scenario_summary(doc, ctx, o);
    return doc;
}

inline Document cmd_sweep(Session& s, const Options& o) {
    const auto catalog = load_catalog(s, o);
    const auto rates = load_rates(s, o);
    Options scenario = o;
    scenario.rate_opt = nullptr;
    if (!rates.contains(scenario.region)) scenario.region = rates.usd_per_kwh.begin()->first;
    const auto ctx = context_of(s, scenario, rates);
    const auto sweep = state_sweep(catalog.units, rates, ctx);
    for (const auto& e : sweep.errors) {
        s.err << "error: " << e.region << "/" << e.id << ": " << e.message << '\n';
        s.partial();
    }

    Document doc;
    OutputTable t{"regions", {"region", "name", "usd_per_kwh", "n", "median_pcy", "mean_pcy", "min_pcy", "max_pcy"}, {}};
    for (const auto& [region, st] : sweep.per_region) {
        const auto it = rates.names.find(region);
        t.rows.push_back({region, it != rates.names.end() ? it->second : region, rates.rate(region), st.n,
                          money(st.median), money(st.mean), money(st.min), money(st.max)});
    }
    doc.tables.push_back(std::move(t));
    doc.summary.emplace_back("mode", std::string(to_string(ctx.params.initial_cost_mode)));
    doc.summary.emplace_back("t_operate_days", ctx.t_operate_days);
    doc.summary.emplace_back("median_range_usd", money(sweep.median_range));
    doc.summary.emplace_back("median_range_regions", sweep.highest_median_region + " - " + sweep.lowest_median_region);
    if (sweep.per_unit_range) {
        doc.summary.emplace_back("per_unit_range_mean_usd", money(sweep.per_unit_range->mean));
        doc.summary.emplace_back("per_unit_range_median_usd", money(sweep.per_unit_range->median));
        doc.summary.emplace_back("per_unit_range_regions", sweep.highest_rate_region + " - " + sweep.lowest_rate_region);
    }
    return doc;
}

inline Document cmd_county(Session& s, const Options& o) {
    if (o.aqi_path.empty()) throw CliFatal("county needs --aqi FILE");
    const auto catalog = load_catalog(s, o);
    const auto rates = load_rates(s, o);
    Options scenario = o;
    scenario.county.clear();
    const auto ctx = context_of(s, scenario, rates);
    const auto calendars = load_calendars(s, o.aqi_path);
    if (calendars.empty()) throw CliFatal(o.aqi_path + ": no calendars");
    const auto cs = county_scenario(catalog.units, calendars, ctx);

    Document doc;
    OutputTable t{"counties", {"county", "operating_days", "median_pcy", "mean_pcy", "n_below_threshold",
                               "n_at_or_above_threshold"}, {}};
    for (const auto& c : cs.counties) {
        if (!c.stats) continue;
        t.rows.push_back({c.region, c.operating_days, money(c.stats->median), money(c.stats->mean), c.threshold.n_below,
                          c.threshold.n_above});
    }
    doc.tables.push_back(std::move(t));
    doc.summary.emplace_back("mode", std::string(to_string(ctx.params.initial_cost_mode)));
    doc.summary.emplace_back("rate_usd_per_kwh", ctx.rate_usd_per_kwh);
    doc.summary.emplace_back("threshold_usd", money(ctx.params.medical_cost_threshold_usd));
    if (cs.pooled) {
        doc.summary.emplace_back("pooled_median_usd", money(cs.pooled->median));
        doc.summary.emplace_back("pooled_mean_usd", money(cs.pooled->mean));
        doc.summary.emplace_back("pooled_pairs", cs.pooled->n);
        doc.summary.emplace_back("pooled_n_below_threshold", cs.pooled_threshold.n_below);
    }
    return doc;
}

inline Document cmd_reproduce(Session& s, const Options& o) {
    const auto catalog = load_catalog(s, o);
    const auto rates = load_rates(s, o);
    std::vector<AqiCalendar> calendars;
    if (!o.aqi_path.empty()) calendars = load_calendars(s, o.aqi_path);

    ReproductionInputs in;
    in.catalog = &catalog;
    in.rates = &rates;
    in.calendars = &calendars;
    in.params.medical_cost_threshold_usd = o.threshold;
    const auto rep = reproduce(in);

    Document doc;
    OutputTable t{"checks", {"section", "check", "status", "computed", "published", "note"}, {}};
    for (const auto& l : rep.lines)
        t.rows.push_back({l.section, l.label, std::string(to_string(l.status)), l.computed, l.expected, l.note});
    doc.tables.push_back(std::move(t));
    doc.summary.emplace_back("reproduced", rep.count(ReproStatus::Reproduced));
    doc.summary.emplace_back("discrepancies", rep.count(ReproStatus::Discrepancy));
    doc.summary.emplace_back("table5_rows_reproduced", rep.count(ReproStatus::Reproduced, "table5-row"));
    doc.summary.emplace_back("table5_rows_discrepant", rep.count(ReproStatus::Discrepancy, "table5-row"));
    return doc;
}

inline int cmd_serve(Session& s, const Options& o) {
    auto catalog = load_catalog(s, o);
    auto rates = load_rates(s, o);
    std::vector<AqiCalendar> calendars;
    if (!o.aqi_path.empty()) calendars = load_calendars(s, o.aqi_path);
    const Service service(std::move(catalog), std::move(rates), std::move(calendars));
    httplib::Server server;
    mount(server, service);
    s.err << "listening on http://" << o.host << ":" << o.port << '\n';
    if (!server.listen(o.host, o.port)) throw CliFatal("cannot listen on " + o.host + ":" + std::to_string(o.port));
    return kExitOk;
}

inline void add_data_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--data-dir", o.data_dir, "Directory holding table5_catalog.csv and rates.csv (env PCY_DATA_DIR)");
    cmd->add_option("--catalog", o.catalog_path, "Catalog CSV (default <data-dir>/table5_catalog.csv)");
    cmd->add_option("--rates", o.rates_path, "Rate table CSV (default <data-dir>/rates.csv)");
    cmd->add_option("--format", o.format, "Output format: human, csv, json")->check(CLI::IsMember({"human", "csv", "json"}));
}

inline void add_scenario_options(CLI::App* cmd, Options& o) {
    add_data_options(cmd, o);
    auto* region = cmd->add_option("--region", o.region, "Region code from the rate table");
    o.rate_opt = cmd->add_option("--rate", o.rate, "Explicit electricity price, USD/kWh");
    o.rate_opt->excludes(region);
    o.days_opt = cmd->add_option("--days", o.days, "Operating days per year (0-365)");
    cmd->add_option("--aqi", o.aqi_path, "AQI calendar CSV");
    cmd->add_option("--county", o.county, "Calendar region in --aqi that sets the operating days");
    cmd->add_option("--mode", o.mode, "spec (includes purchase price) or table5")
        ->check(CLI::IsMember({"spec", "table5"}));
    cmd->add_option("--home-sqft", o.home_sqft, "Home area the cost is normalized to");
    cmd->add_option("--threshold", o.threshold, "Medical-cost reference, USD/yr");
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace cli_detail;
    CLI::App app{"Purification cost per year (PCY) calculator for air purifiers"};
    app.require_subcommand(1);
    Options o;

    auto* c_pcy = app.add_subcommand("pcy", "PCY and its components for selected units");
    add_scenario_options(c_pcy, o);
    c_pcy->add_option("units", o.units, "Unit ids, \"Brand Model\" names or 1-based positions (default: all)");

    auto* c_rank = app.add_subcommand("rank", "Units ordered by PCY");
    add_scenario_options(c_rank, o);
    c_rank->add_option("--top", o.top, "Show only the first N units");
    c_rank->add_option("units", o.units, "Restrict to these units");

    auto* c_breakdown = app.add_subcommand("breakdown", "Share of purchase, filter and electricity cost");
    add_scenario_options(c_breakdown, o);
    c_breakdown->add_option("units", o.units, "Unit ids or names (default: all)");

    auto* c_sweep = app.add_subcommand("sweep", "Per-region PCY statistics over a rate table");
    add_scenario_options(c_sweep, o);

    auto* c_whatif = app.add_subcommand("whatif", "Ranking for a custom home size, region and schedule");
    add_scenario_options(c_whatif, o);
    c_whatif->add_option("--top", o.top, "Show only the first N units");
    c_whatif->add_option("units", o.units, "Restrict to these units");

    auto* c_county = app.add_subcommand("county", "Orange-day-only operation for each calendar in --aqi");
    add_scenario_options(c_county, o);

    auto* c_repro = app.add_subcommand("reproduce", "Check the published figures against the shipped data");
    add_data_options(c_repro, o);
    c_repro->add_option("--aqi", o.aqi_path, "Optional county calendars for the threshold count");
    c_repro->add_option("--threshold", o.threshold, "Medical-cost reference, USD/yr");

    auto* c_serve = app.add_subcommand("serve", "Run the HTTP API");
    add_data_options(c_serve, o);
    if (const char* env = std::getenv("PCY_PORT"); env && *env) o.port = std::atoi(env);
    c_serve->add_option("--port", o.port, "Port (env PCY_PORT)");
    c_serve->add_option("--host", o.host, "Bind address");
    c_serve->add_option("--aqi", o.aqi_path, "Calendars that requests may reference by name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitFatal;
    }

    Session s{out, err};
    try {
        Document doc;
        if (*c_pcy) doc = cmd_pcy(s, o);
        else if (*c_rank) doc = ranking_document(s, o, false);
        else if (*c_whatif) doc = ranking_document(s, o, true);
        else if (*c_breakdown) doc = cmd_breakdown(s, o);
        else if (*c_sweep) doc = cmd_sweep(s, o);
        else if (*c_county) doc = cmd_county(s, o);
        else if (*c_repro) doc = cmd_reproduce(s, o);
        else if (*c_serve) return cmd_serve(s, o);
        render(doc, format_of(o), out);
    } catch (const CliFatal& e) {
        err << "error: " << e.what() << '\n';
        return kExitFatal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFatal;
    }
    return s.status;
}

}  // namespace pcy
