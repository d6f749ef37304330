#include <xaikg/decision.hpp>
#include <xaikg/explanation.hpp>
#include <xaikg/feedback.hpp>
#include <xaikg/ingestion.hpp>
#include <xaikg/synthetic.hpp>

#include <server_harness.hpp>
#include <test_support.hpp>

#include <gtest/gtest.h>

#include <json.hpp>

#include <atomic>
#include <vector>

namespace xaikg {
namespace {

using nlohmann::json;
using testing::RunningService;

json body_of(const httplib::Result& r) { return json::parse(r->body); }

void expect_api_error(const httplib::Result& r, int status, const std::string& code) {
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, status);
    auto body = body_of(r);
    EXPECT_EQ(body["status"], status);
    EXPECT_EQ(body["code"], code);
    EXPECT_TRUE(body["message"].is_string());
    EXPECT_FALSE(body["message"].get<std::string>().empty());
}

class ServiceFixture : public ::testing::Test {
protected:
    void ingest_all() {
        auto& c = server.client();
        ASSERT_EQ(c.Post("/ingest/shipments", data.shipments_csv, "text/csv")->status, 200);
        ASSERT_EQ(c.Post("/ingest/forecasts", data.forecasts_json, "application/json")->status, 200);
        ASSERT_EQ(c.Post("/ingest/relevance", data.relevance_jsonl, "application/x-ndjson")->status, 200);
    }

    SyntheticDataset data = make_synthetic_dataset();
    RunningService server;
};

TEST_F(ServiceFixture, IngestReportsCounts) {
    auto r = server.client().Post("/ingest/forecasts", data.forecasts_json, "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(body_of(r), (json{{"nodes_added", 13}, {"edges_added", 19}}));
    expect_api_error(server.client().Post("/ingest/forecasts", data.forecasts_json, "application/json"), 409,
                     "conflict");
}

TEST_F(ServiceFixture, MalformedInputIs400) {
    expect_api_error(server.client().Post("/ingest/shipments", "date,material\n", "text/csv"), 400, "parse_error");
    expect_api_error(server.client().Post("/feedback", "{not json", "application/json"), 400, "parse_error");
}

TEST_F(ServiceFixture, ReadYourWrites) {
    ingest_all();
    auto& c = server.client();
    ASSERT_EQ(c.Post("/pipeline/explanations", "{}", "application/json")->status, 200);
    auto rows = body_of(c.Get("/forecasts?material=M1&client=C1"));
    ASSERT_EQ(rows.size(), 1u);
    const std::string node = rows[0]["node_id"];

    for (int rating : {4, 5}) {
        json fb{{"user", "ana"}, {"target_id", node}, {"rating", rating}, {"created_at", "2020-02-01"}};
        auto r = c.Post("/feedback", fb.dump(), "application/json");
        ASSERT_EQ(r->status, 201);
        EXPECT_TRUE(body_of(r)["feedback_id"].get<std::string>().starts_with("n"));
    }
    auto detail = body_of(c.Get("/forecasts/" + node));
    EXPECT_EQ(detail["feedback"]["count"], 2);
    EXPECT_EQ(detail["feedback"]["mean_rating"], 4.5);
    EXPECT_EQ(detail["feedback"]["histogram"], (json{0, 0, 0, 1, 1}));
    EXPECT_EQ(detail["explanation"]["features"].size(), 3u);
    EXPECT_EQ(detail["material"], "M1");
    expect_api_error(c.Get("/forecasts/F001"), 404, "unknown_id");
}

TEST_F(ServiceFixture, ValidationErrors) {
    ingest_all();
    auto& c = server.client();
    const std::string node = body_of(c.Get("/forecasts"))[0]["node_id"];
    const auto nodes_before = body_of(c.Get("/metrics"))["node_count"];

    expect_api_error(c.Post("/feedback", json{{"user", "ana"}, {"target_id", node}, {"rating", 9}}.dump(),
                            "application/json"),
                     422, "invalid_argument");
    expect_api_error(c.Post("/feedback", json{{"user", "ana"}, {"target_id", "n999999"}, {"rating", 3}}.dump(),
                            "application/json"),
                     404, "unknown_id");
    expect_api_error(c.Post("/feedback", json{{"user", "ana"}, {"target_id", "n1"}, {"rating", 3}}.dump(),
                            "application/json"),
                     422, "schema_violation");
    expect_api_error(c.Post("/actions", json{{"user", "ana"}, {"option_id", node}, {"kind", "accepted"}}.dump(),
                            "application/json"),
                     404, "unknown_id");
    expect_api_error(c.Get("/forecasts/n999999"), 404, "unknown_id");
    expect_api_error(c.Get("/forecasts?from=2020-13-01"), 422, "invalid_argument");
    expect_api_error(c.Get("/metrics?sample=1.5"), 422, "invalid_argument");
    expect_api_error(c.Get("/nowhere"), 404, "unknown_id");
    EXPECT_EQ(body_of(c.Get("/metrics"))["node_count"], nodes_before);
}

TEST_F(ServiceFixture, ForecastListFilters) {
    ingest_all();
    auto& c = server.client();
    EXPECT_EQ(body_of(c.Get("/forecasts")).size(), 6u);
    EXPECT_EQ(body_of(c.Get("/forecasts?client=C2")).size(), 3u);
    EXPECT_EQ(body_of(c.Get("/forecasts?limit=2&offset=1")).size(), 2u);
    EXPECT_EQ(body_of(c.Get("/forecasts?from=2020-02-01")).size(), 0u);
    EXPECT_EQ(body_of(c.Get("/forecasts?to=2020-01-31")).size(), 6u);
}

TEST(ServiceMetrics, Path3) {
    RunningService server(testing::path3());
    auto m = body_of(server.client().Get("/metrics"));
    EXPECT_EQ(m["tpl"], 8);
    EXPECT_EQ(m["mpl"], 2);
    EXPECT_NEAR(m["apl"].get<double>(), 8.0 / 6.0, 1e-12);
    EXPECT_FALSE(m.contains("seed"));
    auto s = body_of(server.client().Get("/metrics?sample=1&seed=3"));
    EXPECT_EQ(s["tpl"], 8);
    EXPECT_EQ(s["seed"], 3);
    EXPECT_EQ(s["sampled"], true);
}

TEST(ServiceSchema, ServesDescriptor) {
    RunningService server;
    auto r = server.client().Get("/schema");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->body, dump_schema(builtin_xaikg_schema()));
}

TEST_F(ServiceFixture, MatchesDirectLibraryCalls) {
    ingest_all();
    auto& c = server.client();
    ASSERT_EQ(body_of(c.Post("/pipeline/explanations", R"({"k":2})", "application/json"))["created"], 6);
    ASSERT_EQ(c.Post("/pipeline/options", "", "application/json")->status, 200);
    ASSERT_EQ(c.Post("/pipeline/synth-feedback", R"({"seed":7})", "application/json")->status, 200);
    const std::string second = body_of(c.Get("/forecasts"))[1]["node_id"];
    json fb{{"user", "ana"}, {"target_id", second}, {"rating", 2}, {"comment", "low"}, {"created_at", "2020-02-03"}};
    ASSERT_EQ(c.Post("/feedback", fb.dump(), "application/json")->status, 201);

    auto schema = builtin_xaikg_schema();
    Graph g;
    ingest_shipments(g, schema, parse_shipments_csv(data.shipments_csv));
    ingest_forecasts(g, schema, parse_forecasts_json(data.forecasts_json));
    ingest_relevance(g, schema, parse_relevance_jsonl(data.relevance_jsonl));
    explain_all(g, schema, 2);
    suggest_all(g, schema, default_rules());
    SynthConfig cfg;
    cfg.seed = 7;
    synthesize_feedback(g, schema, cfg);
    record_feedback(g, schema, "ana", find_forecast(g, "F002").value(), 2, "low", *Date::parse("2020-02-03"));

    auto exported = c.Get("/graph/export");
    ASSERT_TRUE(exported);
    EXPECT_EQ(exported->body, export_jsonl(g));
}

TEST_F(ServiceFixture, ConcurrentWritesAreSerialized) {
    ingest_all();
    const std::string node = body_of(server.client().Get("/forecasts"))[0]["node_id"];
    std::atomic<int> created{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            httplib::Client c(server.client().host(), server.client().port());
            for (int i = 0; i < 10; ++i) {
                json fb{{"user", "u" + std::to_string(t)}, {"target_id", node}, {"rating", 1 + i % 5},
                        {"created_at", "2020-02-01"}};
                auto r = c.Post("/feedback", fb.dump(), "application/json");
                if (r && r->status == 201) ++created;
            }
        });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(created.load(), 40);
    EXPECT_EQ(body_of(server.client().Get("/forecasts/" + node))["feedback"]["count"], 40);
}

}  // namespace
}  // namespace xaikg
