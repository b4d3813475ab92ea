#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "pcy/ingest.hpp"
#include "pcy/service.hpp"

namespace pcy {
namespace {

const std::string kDataDir = PCY_TEST_DATA_DIR;

Service make_service() {
    auto catalog = parse_catalog(read_text_file(kDataDir + "/table5_catalog.csv")).catalog;
    auto rates = parse_rates(read_text_file(kDataDir + "/rates.csv")).rates;
    std::vector<AqiCalendar> calendars{{"Smoky", ExceedanceCount{40}}};
    return Service(std::move(catalog), std::move(rates), std::move(calendars));
}

const Service& service() {
    static const Service s = make_service();
    return s;
}

json coway_spec() {
    return {{"brand", "Coway"},
            {"model", "Airmega 250"},
            {"initial_cost_usd", 290.88},
            {"cadr_cfm", 248},
            {"rated_watts", 60.999836},
            {"filter_plan", {{"kind", "annualized"}, {"usd_per_365_days", 37.854}}}};
}

std::vector<std::string> error_fields(const HttpResult& r) {
    std::vector<std::string> out;
    for (const auto& e : r.body["errors"]) out.push_back(e["field"].get<std::string>());
    return out;
}

// Printed PCY for the top unit is 661.00; the derived inputs land one cent
// below, inside the per-row tolerance.
long long cents(const json& money) { return std::llround(std::stod(money.get<std::string>()) * 100.0); }

bool has_field(const HttpResult& r, const std::string& f) {
    const auto v = error_fields(r);
    return std::find(v.begin(), v.end(), f) != v.end();
}

TEST(Service, RankCaliforniaYearRound) {
    const auto r = service().post_rank(R"({"region":"CA","t_operate_days":365,"mode":"table5"})");
    ASSERT_EQ(r.status, 200) << r.body.dump();
    EXPECT_EQ(r.body["mode"], "table5");
    EXPECT_EQ(r.body["params"]["region"], "CA");
    EXPECT_EQ(r.body["params"]["rate_usd_per_kwh"], 0.251);
    ASSERT_EQ(r.body["results"].size(), 53u);
    EXPECT_EQ(r.body["results"][0]["id"], "medify-ma-112");
    EXPECT_LE(std::llabs(cents(r.body["results"][0]["pcy"]["total_usd_per_year"]) - 66100), 1);
    EXPECT_EQ(r.body["results"][0]["below_medical_threshold"], true);
    // Ordering is non-decreasing.
    double prev = 0;
    for (const auto& u : r.body["results"]) {
        const double v = std::stod(u["pcy"]["total_usd_per_year"].get<std::string>());
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Service, ZeroDaysTable5IsZero) {
    const auto r = service().post_rank(R"({"rate_usd_per_kwh":0.251,"t_operate_days":0,"mode":"table5"})");
    ASSERT_EQ(r.status, 200);
    EXPECT_TRUE(r.body["params"]["region"].is_null());
    for (const auto& u : r.body["results"]) EXPECT_EQ(u["pcy"]["total_usd_per_year"], "0.00");
}

TEST(Service, RegionAndRateTogetherRejected) {
    const auto r = service().post_rank(R"({"region":"CA","rate_usd_per_kwh":0.2,"t_operate_days":10})");
    EXPECT_EQ(r.status, 400);
    EXPECT_TRUE(has_field(r, "region"));
}

TEST(Service, MissingScenarioFields) {
    const auto r = service().post_rank("{}");
    EXPECT_EQ(r.status, 400);
    EXPECT_TRUE(has_field(r, "region"));
    EXPECT_TRUE(has_field(r, "t_operate_days"));
    EXPECT_EQ(service().post_rank("not json").status, 400);
    EXPECT_EQ(service().post_rank(R"({"region":"CA","t_operate_days":366})").status, 400);
    EXPECT_EQ(service().post_rank(R"({"region":"CA","t_operate_days":10,"mode":"x"})").status, 400);
    EXPECT_EQ(service().post_rank(R"({"region":"CA","t_operate_days":10,"home_area_sqft":0})").status, 400);
}

TEST(Service, UnknownReferencesAre404) {
    EXPECT_EQ(service().post_rank(R"({"region":"ZZ","t_operate_days":10})").status, 404);
    EXPECT_EQ(service().post_rank(R"({"region":"CA","t_operate_days":10,"units":["nope"]})").status, 404);
    EXPECT_EQ(service().post_rank(R"({"region":"CA","calendar":"Nowhere"})").status, 404);
    EXPECT_EQ(service().post_pcy(R"({"region":"CA","t_operate_days":10,"unit":"nope"})").status, 404);
    EXPECT_EQ(service().get_reference("nope").status, 404);
}

TEST(Service, InlineSpecMatchesPrintedRow) {
    json req{{"region", "CA"}, {"t_operate_days", 365}, {"mode", "table5"}, {"spec", coway_spec()}};
    const auto r = service().post_pcy(req.dump());
    ASSERT_EQ(r.status, 200) << r.body.dump();
    EXPECT_EQ(r.body["result"]["pcy"]["total_usd_per_year"], "1155.77");
    EXPECT_EQ(r.body["result"]["id"], "inline");
}

TEST(Service, DoubledCadrHalvesPcy) {
    json req{{"region", "TX"}, {"t_operate_days", 200}, {"spec", coway_spec()}};
    const auto base = service().post_pcy(req.dump());
    req["spec"]["cadr_cfm"] = 496;
    const auto doubled = service().post_pcy(req.dump());
    ASSERT_EQ(base.status, 200);
    ASSERT_EQ(doubled.status, 200);
    const double a = std::stod(base.body["result"]["pcy"]["total_usd_per_year"].get<std::string>());
    const double b = std::stod(doubled.body["result"]["pcy"]["total_usd_per_year"].get<std::string>());
    EXPECT_NEAR(b, a / 2.0, 0.01);
}

TEST(Service, InvalidSpecFieldsNamed) {
    json req{{"region", "CA"}, {"t_operate_days", 10}, {"spec", coway_spec()}};
    req["spec"]["rated_watts"] = 0;
    req["spec"]["cadr_cfm"] = -5;
    const auto r = service().post_pcy(req.dump());
    EXPECT_EQ(r.status, 400);
    EXPECT_TRUE(has_field(r, "spec.rated_watts"));
    EXPECT_TRUE(has_field(r, "spec.cadr_cfm"));

    json both{{"region", "CA"}, {"t_operate_days", 10}, {"spec", coway_spec()}, {"unit", "coway-airmega-250"}};
    EXPECT_EQ(service().post_pcy(both.dump()).status, 400);
}

TEST(Service, UnitByIdAndCalendars) {
    const auto named = service().post_pcy(R"({"region":"CA","calendar":"Smoky","unit":"coway-airmega-250"})");
    ASSERT_EQ(named.status, 200) << named.body.dump();
    EXPECT_EQ(named.body["params"]["t_operate_days"], 40);
    EXPECT_EQ(named.body["params"]["calendar"], "Smoky");

    const auto inline_count =
        service().post_pcy(R"({"region":"CA","calendar":{"days_over_threshold":40},"unit":"coway-airmega-250"})");
    ASSERT_EQ(inline_count.status, 200);
    EXPECT_EQ(inline_count.body["result"]["pcy"], named.body["result"]["pcy"]);

    const auto daily = service().post_pcy(
        R"({"region":"CA","calendar":{"daily":[{"date":"2021-01-01","aqi":150},{"date":"2021-01-02","aqi":100}]},"unit":"coway-airmega-250"})");
    ASSERT_EQ(daily.status, 200);
    EXPECT_EQ(daily.body["params"]["t_operate_days"], 1);
}

TEST(Service, SharesSumToOne) {
    const auto r = service().post_rank(R"({"region":"NY","t_operate_days":120})");
    ASSERT_EQ(r.status, 200);
    for (const auto& u : r.body["results"]) {
        const auto& s = u["shares"];
        EXPECT_NEAR(s["initial"].get<double>() + s["maintenance"].get<double>() + s["electricity"].get<double>(), 1.0,
                    1e-9);
    }
}

TEST(Service, ReferenceTables) {
    EXPECT_EQ(service().get_reference("hepa").body["hepa"].size(), kHepaClasses.size());
    EXPECT_EQ(service().get_reference("merv").body["merv"].size(), 20u);
    EXPECT_EQ(service().get_reference("particles").body["particles"].size(), kPollutants.size());
    EXPECT_EQ(service().get_catalog().body["units"].size(), 53u);
    EXPECT_EQ(service().get_rates().body["rates"].size(), 12u);
}

TEST(Service, CatalogEchoRoundTrips) {
    const auto units = service().get_catalog().body["units"];
    for (const auto& u : units) {
        json req{{"region", "CA"}, {"t_operate_days", 365}, {"mode", "table5"}, {"spec", u}};
        const auto inline_r = service().post_pcy(req.dump());
        json by_id{{"region", "CA"}, {"t_operate_days", 365}, {"mode", "table5"}, {"unit", u["id"]}};
        const auto id_r = service().post_pcy(by_id.dump());
        ASSERT_EQ(inline_r.status, 200) << u.dump();
        EXPECT_EQ(inline_r.body["result"]["pcy"], id_r.body["result"]["pcy"]);
    }
}

TEST(Service, LiveServer) {
    httplib::Server server;
    mount(server, service());
    const int port = server.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    const auto rank = client.Post("/api/rank", R"({"region":"CA","t_operate_days":365,"mode":"table5"})",
                                  "application/json");
    ASSERT_TRUE(rank);
    EXPECT_EQ(rank->status, 200);
    const auto top = json::parse(rank->body)["results"][0];
    EXPECT_EQ(top["id"], "medify-ma-112");
    EXPECT_LE(std::llabs(cents(top["pcy"]["total_usd_per_year"]) - 66100), 1);

    const auto bad = client.Post("/api/pcy", R"({"region":"CA"})", "application/json");
    ASSERT_TRUE(bad);
    EXPECT_EQ(bad->status, 400);

    const auto hepa = client.Get("/api/reference/hepa");
    ASSERT_TRUE(hepa);
    EXPECT_EQ(hepa->status, 200);
    EXPECT_EQ(client.Get("/api/catalog")->status, 200);

    server.stop();
    t.join();
}

}  // namespace
}  // namespace pcy
