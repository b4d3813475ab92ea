#include <gtest/gtest.h>

#include <string>

#include "pcy/ingest.hpp"
#include "pcy/reproduce.hpp"

namespace pcy {
namespace {

const std::string kDataDir = PCY_TEST_DATA_DIR;

struct Shipped {
    Catalog catalog = parse_catalog(read_text_file(kDataDir + "/table5_catalog.csv")).catalog;
    RateTable rates = parse_rates(read_text_file(kDataDir + "/rates.csv")).rates;

    ReproductionReport run(const std::vector<AqiCalendar>* cals = nullptr) const {
        ReproductionInputs in;
        in.catalog = &catalog;
        in.rates = &rates;
        in.calendars = cals;
        return reproduce(in);
    }
};

TEST(Reproduce, PerRowChecks) {
    const Shipped s;
    const auto rep = s.run();
    EXPECT_EQ(rep.count(ReproStatus::Reproduced, "table5-row") + rep.count(ReproStatus::Discrepancy, "table5-row"), 53u);
    const auto* coway = rep.find("table5-row", "Coway Airmega 250");
    ASSERT_NE(coway, nullptr);
    EXPECT_EQ(coway->status, ReproStatus::Reproduced);
    EXPECT_EQ(coway->computed, "1155.77");
    // Spec-formula delta = C_initial/10 * 2500/372 = 195.48.
    EXPECT_NE(coway->note.find("spec-formula 1351.25"), std::string::npos);
    EXPECT_NE(coway->note.find("+195.48"), std::string::npos);

    // Rows whose tiny coverage amplifies the cent rounding of the printed cells.
    for (const char* name : {"IQAir Atem Desk", "IQAir Atem Car", "Medify MA-CAR", "PureZone Halo"}) {
        const auto* l = rep.find("table5-row", name);
        ASSERT_NE(l, nullptr) << name;
        EXPECT_EQ(l->status, ReproStatus::Discrepancy) << name;
        EXPECT_NE(l->note.find("within printed-cell rounding bound"), std::string::npos) << name;
    }
    EXPECT_EQ(rep.count(ReproStatus::Discrepancy, "table5-row"), 4u);
}

TEST(Reproduce, PerturbedRowIsFlagged) {
    Shipped s;
    s.catalog.expected_pcy_usd.at("coway-airmega-250") += 1.0;
    const auto rep = s.run();
    const auto* l = rep.find("table5-row", "Coway Airmega 250");
    ASSERT_NE(l, nullptr);
    EXPECT_EQ(l->status, ReproStatus::Discrepancy);
    EXPECT_EQ(l->expected, "1156.77");
}

TEST(Reproduce, AggregateLinesPresent) {
    const Shipped s;
    const auto rep = s.run();
    for (const char* section : {"median", "initial-share", "cv", "ols", "state-range", "aqi-consistency", "threshold",
                                "ranking"})
        EXPECT_GT(rep.count(ReproStatus::Reproduced, section) + rep.count(ReproStatus::Discrepancy, section) +
                      rep.count(ReproStatus::Info, section),
                  0u)
            << section;
    const auto* fit = rep.find("ols", "coverage->price");
    ASSERT_NE(fit, nullptr);
    EXPECT_EQ(fit->status, ReproStatus::Reproduced);
    // The published top five differs from the recomputed order.
    EXPECT_EQ(rep.find("ranking", "five lowest PCY (table5-compat)")->status, ReproStatus::Discrepancy);
}

TEST(Reproduce, CountyLinesWithCalendars) {
    const Shipped s;
    const std::vector<AqiCalendar> cals{{"Kings", ExceedanceCount{120}}, {"Marin", ExceedanceCount{3}}};
    const auto rep = s.run(&cals);
    EXPECT_NE(rep.find("county", "Kings"), nullptr);
    EXPECT_NE(rep.find("county", "pooled median"), nullptr);
}

}  // namespace
}  // namespace pcy
