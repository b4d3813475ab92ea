#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "pcy/ingest.hpp"
#include "support/generators.hpp"
#include "support/printed_table5.hpp"

#ifndef PCY_TEST_DATA_DIR
#error "PCY_TEST_DATA_DIR must point at the shipped data directory"
#endif

namespace pcy {
namespace {

const std::string kDataDir = PCY_TEST_DATA_DIR;

const std::string kHeader =
    "id,brand,model,initial_cost_usd,cadr_cfm,rated_watts,filter_price_usd,filter_interval_days,"
    "annual_filter_cost_usd,model_year,expected_pcy_usd\n";

TEST(ParseCatalog, ShippedFileAccepted) {
    const auto p = parse_catalog(read_text_file(kDataDir + "/table5_catalog.csv"));
    EXPECT_FALSE(p.report.fatal);
    EXPECT_EQ(p.report.accepted, 53u);
    EXPECT_TRUE(p.report.rejected.empty());
    EXPECT_EQ(p.catalog.units.size(), 53u);
    EXPECT_EQ(p.catalog.expected_pcy_usd.size(), 53u);
}

// Shipped rows encode the printed cells: same price, coverage = 1.5 * CADR,
// 10 * annual filter = printed filter total, electricity reproduces the
// printed total at 0.251 USD/kWh.
TEST(ParseCatalog, ShippedRowsMatchPrintedTable) {
    const auto p = parse_catalog(read_text_file(kDataDir + "/table5_catalog.csv"));
    ASSERT_EQ(p.catalog.units.size(), testing::kPrintedTable5.size());
    for (std::size_t i = 0; i < testing::kPrintedTable5.size(); ++i) {
        const auto& row = testing::kPrintedTable5[i];
        const auto& u = p.catalog.units[i];
        SCOPED_TRACE(std::string(row.name));
        EXPECT_EQ(u.display_name(), row.name);
        EXPECT_DOUBLE_EQ(u.initial_cost_usd, row.initial_cost);
        EXPECT_DOUBLE_EQ(u.cadr_cfm * 1.5, row.a_optimal);
        ASSERT_TRUE(std::holds_alternative<AnnualizedFilter>(u.filter_plan));
        EXPECT_NEAR(std::get<AnnualizedFilter>(u.filter_plan).usd_per_365_days * 10, row.lifetime_filter, 1e-9);
        EXPECT_NEAR(u.rated_watts * 87600 * 0.251 / 1000, row.lifetime_elec, 0.0005);
        EXPECT_DOUBLE_EQ(p.catalog.expected_pcy_usd.at(u.id), row.pcy);
    }
}

TEST(ParseCatalog, AmbiguousFilterPlanRejected) {
    const auto p = parse_catalog(kHeader + "a,B,M,10,100,50,20,90,30,,\n");
    EXPECT_EQ(p.report.accepted, 0u);
    ASSERT_EQ(p.report.rejected.size(), 1u);
    EXPECT_EQ(p.report.rejected[0].row_number, 2u);
    EXPECT_NE(p.report.rejected[0].message.find("ambiguous"), std::string::npos);
}

TEST(ParseCatalog, ZeroCadrRejected) {
    const auto p = parse_catalog(kHeader + "a,B,M,10,0,50,,,30,,\nb,B,N,10,10,50,,,30,,\n");
    EXPECT_EQ(p.report.accepted, 1u);
    ASSERT_EQ(p.report.rejected.size(), 1u);
    EXPECT_EQ(p.report.rejected[0].column, "cadr_cfm");
}

TEST(ParseCatalog, PeriodicPlanAndOptionalFields) {
    const auto p = parse_catalog(kHeader + "a,\"Acme, Inc\",M,10,100,50,20,90,,2021,\n");
    ASSERT_EQ(p.report.accepted, 1u);
    const auto& u = p.catalog.units[0];
    EXPECT_EQ(u.brand, "Acme, Inc");
    EXPECT_EQ(u.model_year, 2021);
    EXPECT_EQ(std::get<PeriodicFilter>(u.filter_plan), (PeriodicFilter{20, 90}));
}

TEST(ParseCatalog, RowErrors) {
    const auto p = parse_catalog(kHeader +
                                 "a,B,M,1e3,100,50,,,30,,\n"      // exponent
                                 "b,B,M,10,100,50,20,,,,\n"       // half a periodic plan
                                 "c,B,M,10,100,50,,,,,\n"         // no plan
                                 "d,B,M,10,100,50,,,30,\n"        // short row
                                 "e,B,M,10,100,50,,,30,,\n"
                                 "e,B,M,10,100,50,,,30,,\n");     // duplicate id
    EXPECT_EQ(p.report.accepted, 1u);
    ASSERT_EQ(p.report.rejected.size(), 5u);
    EXPECT_EQ(p.report.rejected[0].column, "initial_cost_usd");
    EXPECT_EQ(p.report.rejected[1].column, "filter_interval_days");
    EXPECT_EQ(p.report.rejected[4].row_number, 7u);
    EXPECT_EQ(p.report.rejected[4].column, "id");
}

TEST(ParseCatalog, MissingHeaderIsFatal) {
    EXPECT_TRUE(parse_catalog("").report.fatal);
    EXPECT_TRUE(parse_catalog("a,B,M,10,100,50,,,30,,\n").report.fatal);
}

TEST(ParseCatalog, LoadIsIdempotent) {
    const auto text = read_text_file(kDataDir + "/table5_catalog.csv");
    EXPECT_EQ(parse_catalog(text).catalog, parse_catalog(text).catalog);
}

TEST(ParseCatalog, RoundTripShipped) {
    const auto first = parse_catalog(read_text_file(kDataDir + "/table5_catalog.csv"));
    const auto second = parse_catalog(serialize_catalog(first.catalog));
    EXPECT_TRUE(second.report.ok());
    EXPECT_EQ(first.catalog, second.catalog);
}

TEST(ParseCatalog, RoundTripRandom) {
    testing::Gen g(211);
    for (int trial = 0; trial < 200; ++trial) {
        Catalog c;
        const int n = g.integer(0, 12);
        for (int i = 0; i < n; ++i) {
            auto s = g.spec(i);
            if (g.coin()) s.brand = "Brand, \"quoted\"";
            if (g.coin()) s.model_year = g.integer(1990, 2030);
            if (g.coin()) c.expected_pcy_usd[s.id] = g.uniform(0, 10000);
            c.units.push_back(std::move(s));
        }
        const auto back = parse_catalog(serialize_catalog(c));
        ASSERT_TRUE(back.report.ok());
        ASSERT_EQ(back.catalog, c);
    }
}

TEST(ParseRates, Shipped) {
    const auto p = parse_rates(read_text_file(kDataDir + "/rates.csv"));
    EXPECT_TRUE(p.report.ok());
    EXPECT_EQ(p.rates.size(), 12u);
    EXPECT_DOUBLE_EQ(p.rates.rate("CA"), 0.251);
    EXPECT_DOUBLE_EQ(p.rates.rate("HI"), 0.304);
    EXPECT_DOUBLE_EQ(p.rates.rate("LA"), 0.101);
    EXPECT_DOUBLE_EQ(p.rates.rate("US"), 0.145);
}

TEST(ParseRates, RowsAndErrors) {
    const auto p = parse_rates("region,usd_per_kwh\nHawaii,0.304\nX,-1\nY,12\nHawaii,0.2\nZ,abc\n");
    EXPECT_EQ(p.report.accepted, 1u);
    EXPECT_DOUBLE_EQ(p.rates.rate("Hawaii"), 0.304);
    ASSERT_EQ(p.report.rejected.size(), 4u);
    EXPECT_EQ(p.report.rejected[0].row_number, 3u);
    EXPECT_EQ(p.report.rejected[2].column, "region");
    EXPECT_TRUE(parse_rates("state,price\nA,0.1\n").report.fatal);
}

TEST(ParseRates, RoundTrip) {
    const auto p = parse_rates(read_text_file(kDataDir + "/rates.csv"));
    EXPECT_EQ(parse_rates(serialize_rates(p.rates)).rates, p.rates);
}

std::string long_form(int days, int aqi) {
    std::string s = "region,date,aqi\n";
    for (int d = 0; d < days; ++d) {
        const int month = d / 28 + 1, day = d % 28 + 1;
        char buf[32];
        std::snprintf(buf, sizeof buf, "2021-%02d-%02d", month, day);
        s += std::string("Los Angeles,") + buf + "," + std::to_string(aqi) + "\n";
    }
    return s;
}

TEST(ParseAqi, LongForm) {
    const auto p = parse_aqi(long_form(336, 120) + "Los Angeles,2021-12-31,80\n");
    ASSERT_TRUE(p.report.ok()) << (p.report.fatal ? *p.report.fatal : p.report.rejected[0].message);
    ASSERT_EQ(p.calendars.size(), 1u);
    const auto& s = std::get<DailySeries>(p.calendars[0].data);
    EXPECT_EQ(s.values.size(), 337u);
    EXPECT_EQ(p.calendars[0].region, "Los Angeles");
}

TEST(ParseAqi, FullYear) {
    std::string s = "region,date,aqi\n";
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int n = 0;
    for (int m = 1; m <= 12; ++m)
        for (int d = 1; d <= kDays[m - 1]; ++d) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "Fresno,2021-%02d-%02d,%d\n", m, d, (n++ % 3) * 60);
            s += buf;
        }
    const auto p = parse_aqi(s);
    ASSERT_TRUE(p.report.ok());
    ASSERT_EQ(p.calendars.size(), 1u);
    EXPECT_EQ(std::get<DailySeries>(p.calendars[0].data).values.size(), 365u);
}

TEST(ParseAqi, WideForm) {
    const auto p = parse_aqi("region,days_over_100\nKings,120\nMarin,3\nBad,400\n");
    ASSERT_EQ(p.calendars.size(), 2u);
    EXPECT_EQ(std::get<ExceedanceCount>(p.calendars[0].data).days_over_threshold, 120);
    ASSERT_EQ(p.report.rejected.size(), 1u);
}

TEST(ParseAqi, DuplicateDateRejected) {
    const auto p = parse_aqi("region,date,aqi\nA,2021-01-01,50\nA,2021-01-01,150\nB,2021-01-01,150\n");
    EXPECT_EQ(p.report.accepted, 2u);
    ASSERT_EQ(p.report.rejected.size(), 1u);
    EXPECT_EQ(p.report.rejected[0].row_number, 3u);
}

TEST(ParseAqi, InvalidDatesAndHeaders) {
    const auto p = parse_aqi("region,date,aqi\nA,2021-02-29,50\nA,2020-02-29,50\nA,2021-13-01,50\nA,21-1-1,5\n");
    EXPECT_EQ(p.report.accepted, 1u);
    EXPECT_EQ(p.report.rejected.size(), 3u);
    EXPECT_TRUE(parse_aqi("region,date,aqi,days_over_100\n").report.fatal);
    EXPECT_TRUE(parse_aqi("region,value\n").report.fatal);
}

TEST(ParseAqi, RoundTrip) {
    const auto a = parse_aqi(long_form(40, 101));
    EXPECT_EQ(parse_aqi(serialize_aqi(a.calendars)).calendars, a.calendars);
    const auto b = parse_aqi("region,days_over_100\nKings,120\n\"Marin, North\",3\n");
    EXPECT_EQ(parse_aqi(serialize_aqi(b.calendars)).calendars, b.calendars);

    auto mixed = a.calendars;
    mixed.push_back(b.calendars.front());
    EXPECT_THROW((void)serialize_aqi(mixed), DomainError);
}

TEST(Parsers, FuzzNeverThrows) {
    testing::Gen g(223);
    const std::string prefixes[] = {"", kHeader, "region,usd_per_kwh\n", "region,date,aqi\n", "region,days_over_100\n"};
    for (int i = 0; i < 3000; ++i) {
        std::string text = prefixes[i % 5] + g.bytes(200);
        // Bias towards structure: sprinkle separators and quotes.
        for (int k = 0; k < 10 && !text.empty(); ++k)
            text[static_cast<std::size_t>(g.integer(0, static_cast<int>(text.size()) - 1))] = ",\"\n0.-"[g.integer(0, 5)];
        EXPECT_NO_THROW({
            const auto c = parse_catalog(text);
            const auto r = parse_rates(text);
            const auto a = parse_aqi(text);
            (void)c;
            (void)r;
            (void)a;
        });
    }
}

TEST(Csv, QuotingAndLineEndings) {
    const auto recs = csv::read("\xEF\xBB\xBF" "a,\"b,c\",\"d\"\"e\"\r\n\r\n1,2,3");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].fields, (std::vector<std::string>{"a", "b,c", "d\"e"}));
    EXPECT_EQ(recs[1].line, 3u);
    EXPECT_TRUE(csv::read("a,\"unterminated\n")[0].malformed);
}

TEST(Csv, Decimals) {
    EXPECT_EQ(csv::parse_decimal("1341.24"), 1341.24);
    EXPECT_EQ(csv::parse_decimal(" 7 "), 7.0);
    EXPECT_FALSE(csv::parse_decimal("1,341.24"));
    EXPECT_FALSE(csv::parse_decimal("1e3"));
    EXPECT_FALSE(csv::parse_decimal("nan"));
    EXPECT_FALSE(csv::parse_decimal(""));
}

}  // namespace
}  // namespace pcy
