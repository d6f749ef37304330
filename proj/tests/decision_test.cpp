#include <xaikg/decision.hpp>
#include <xaikg/error.hpp>
#include <xaikg/ingestion.hpp>

#include <test_support.hpp>

#include <gtest/gtest.h>

#include <random>

namespace xaikg {
namespace {

Date day(const char* text) { return *Date::parse(text); }

class DecisionFixture : public ::testing::Test {
protected:
    void add_shipment(const char* date, double qty, const char* client = "C1") {
        std::vector<ShipmentRecord> s{{day(date), "M1", client, qty}};
        ingest_shipments(graph, schema, s);
    }
    NodeId add_forecast(const char* id, const char* target, double qty) {
        std::vector<ForecastRecord> f{{id, "m", "u", "M1", "C1", day(target), day("2020-01-31"), qty}};
        ingest_forecasts(graph, schema, f);
        return *find_forecast(graph, id);
    }
    NodeId material() { return *graph.find_by_text("Material", "code", "M1"); }
    NodeId client() { return *graph.find_by_text("Client", "code", "C1"); }

    std::vector<std::string> actions(const std::vector<NodeId>& options) {
        std::vector<std::string> out;
        for (NodeId o : options) out.push_back(*get_text(graph.node(o).props, "action"));
        return out;
    }

    Graph graph;
    SchemaSpec schema = builtin_xaikg_schema();
};

TEST_F(DecisionFixture, BaselineOverWindow) {
    add_shipment("2020-01-10", 10);
    add_shipment("2020-01-20", 20);
    add_shipment("2020-02-01", 100);  // target day itself: excluded
    add_shipment("2020-01-03", 100);  // 29 days before: excluded
    add_shipment("2020-01-15", 50, "C2");  // other client
    Baseline b = compute_baseline(graph, material(), client(), day("2020-02-01"), 28);
    EXPECT_DOUBLE_EQ(b.value, 30.0 / 28.0);
    EXPECT_NEAR(b.value, 1.0714, 1e-4);
    EXPECT_EQ(b.covered_records, 2);
    EXPECT_EQ(b.window_days, 28);
}

TEST_F(DecisionFixture, BaselineEdgeCases) {
    add_shipment("2020-01-31", 7);
    EXPECT_DOUBLE_EQ(compute_baseline(graph, material(), client(), day("2020-02-01"), 1).value, 7.0);
    Baseline empty = compute_baseline(graph, material(), client(), day("2021-02-01"), 28);
    EXPECT_EQ(empty.value, 0.0);
    EXPECT_EQ(empty.covered_records, 0);
    EXPECT_THROW(compute_baseline(graph, client(), client(), day("2020-02-01"), 28), Error);
    EXPECT_THROW(compute_baseline(graph, material(), client(), day("2020-02-01"), 0), Error);
}

TEST_F(DecisionFixture, SurgeProducesTwoRankedOptions) {
    add_shipment("2020-01-31", 10);
    NodeId f = add_forecast("f1", "2020-02-01", 15);
    RulesConfig rules = default_rules();
    rules.window_days = 1;
    auto options = generate_options(graph, schema, f, rules);
    EXPECT_EQ(actions(options), (std::vector<std::string>{"increase production capacity", "arrange additional transport"}));
    EXPECT_EQ(get_integer(graph.node(options[0]).props, "rank"), 1);
    EXPECT_EQ(get_integer(graph.node(options[1]).props, "rank"), 2);
    EXPECT_DOUBLE_EQ(*get_decimal(graph.node(options[0]).props, "deviation"), 0.5);
    EXPECT_EQ(graph.targets(f, "SUGGESTS"), options);

    try {
        generate_options(graph, schema, f, rules);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::conflict);
    }
}

TEST_F(DecisionFixture, SteadyAndNewDemand) {
    add_shipment("2020-01-31", 10);
    RulesConfig rules = default_rules();
    rules.window_days = 1;
    NodeId steady = add_forecast("f1", "2020-02-01", 10);
    EXPECT_EQ(actions(generate_options(graph, schema, steady, rules)), std::vector<std::string>{"no action required"});

    NodeId fresh = add_forecast("f2", "2020-03-01", 5);
    auto options = generate_options(graph, schema, fresh, rules);
    EXPECT_EQ(actions(options), std::vector<std::string>{"review new demand source"});
    EXPECT_EQ(get_decimal(graph.node(options[0]).props, "deviation"), 0.0);
}

TEST_F(DecisionFixture, SuggestAllCountsOptions) {
    add_shipment("2020-01-31", 10);
    RulesConfig rules = default_rules();
    rules.window_days = 1;
    add_forecast("f1", "2020-02-01", 15);  // surge: 2 options
    add_forecast("f2", "2020-02-01", 5);   // drop: 1 option
    EXPECT_EQ(suggest_all(graph, schema, rules), 3u);
    EXPECT_EQ(suggest_all(graph, schema, rules), 0u);
}

TEST(Classify, BoundariesAreInclusive) {
    EXPECT_EQ(classify(10, 12, 0.2, -0.2).guard, Guard::surge);
    EXPECT_EQ(classify(10, 8, 0.2, -0.2).guard, Guard::drop);
    EXPECT_EQ(classify(10, 11.9, 0.2, -0.2).guard, Guard::steady);
    EXPECT_EQ(classify(0, 0, 0.2, -0.2).guard, Guard::steady);
    EXPECT_FALSE(classify(0, 0, 0.2, -0.2).deviation);
    EXPECT_EQ(classify(0, 1, 0.2, -0.2).guard, Guard::new_demand);
}

TEST(ClassifyProperty, ExactlyOneGuardFires) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const double upper = 0.01 + unit(rng);
        const double lower = -(0.01 + unit(rng) * 0.99);
        const double baseline = (i % 7 == 0) ? 0.0 : unit(rng) * 50;
        double q = unit(rng) * 100;
        if (i % 5 == 0) q = baseline * (1 + upper);
        if (i % 5 == 1) q = baseline * (1 + lower);
        if (i % 11 == 0) q = 0;
        auto outcome = classify(baseline, q, upper, lower);
        // Independent statement of the guard table.
        int fired = 0;
        const bool zero = baseline == 0;
        const double r = zero ? 0 : (q - baseline) / baseline;
        fired += zero && q > 0;
        fired += !zero && r >= upper;
        fired += !zero && r <= lower;
        fired += zero ? q == 0 : (r < upper && r > lower);
        ASSERT_EQ(fired, 1);
        Guard expected = zero ? (q > 0 ? Guard::new_demand : Guard::steady)
                              : (r >= upper ? Guard::surge : (r <= lower ? Guard::drop : Guard::steady));
        ASSERT_EQ(outcome.guard, expected) << baseline << " " << q;
        ASSERT_EQ(outcome.deviation.has_value(), !zero);
    }
}

TEST(RulesConfigTest, DefaultsAndBundledFile) {
    RulesConfig d = default_rules();
    EXPECT_EQ(d.window_days, 28);
    EXPECT_EQ(d.upper, 0.2);
    EXPECT_EQ(d.lower, -0.2);
    EXPECT_EQ(load_rules(testing::read_text(testing::data_path("default_rules.json"))), d);
    EXPECT_EQ(dump_rules(d), testing::read_text(testing::data_path("default_rules.json")));
    EXPECT_EQ(load_rules(dump_rules(d)), d);
}

TEST(RulesConfigTest, Validation) {
    EXPECT_THROW(load_rules(R"({"upper":-0.1})"), Error);
    EXPECT_THROW(load_rules(R"({"lower":0.1})"), Error);
    EXPECT_THROW(load_rules(R"({"window_days":0})"), Error);
    EXPECT_THROW(load_rules(R"({"actions":{"BOOM":["x"]}})"), Error);
    EXPECT_THROW(load_rules(R"({"actions":{"DROP":[]}})"), Error);
    EXPECT_THROW(load_rules("[1]"), Error);
    RulesConfig custom = load_rules(R"({"upper":0.5,"actions":{"STEADY":["hold"]}})");
    EXPECT_EQ(custom.upper, 0.5);
    EXPECT_EQ(custom.actions_for(Guard::steady), std::vector<std::string>{"hold"});
    EXPECT_EQ(custom.actions_for(Guard::drop), default_rules().actions_for(Guard::drop));
}

}  // namespace
}  // namespace xaikg
