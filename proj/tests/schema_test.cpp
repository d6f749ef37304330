#include <xaikg/error.hpp>
#include <xaikg/schema.hpp>

#include <test_support.hpp>

#include <gtest/gtest.h>

#include <set>
#include <tuple>

namespace xaikg {
namespace {

using testing::kAllowed;

TEST(SchemaTest, BuiltinHasThirteenNodeAndEdgeKinds) {
    auto s = builtin_xaikg_schema();
    EXPECT_EQ(s.node_kinds().size(), 13u);
    EXPECT_EQ(s.edge_kinds().size(), 13u);
}

TEST(SchemaTest, AboutHasFourTargets) {
    auto s = builtin_xaikg_schema();
    ASSERT_NE(s.find_edge_kind("ABOUT"), nullptr);
    EXPECT_EQ(s.find_edge_kind("ABOUT")->endpoints.size(), 4u);
}

TEST(SchemaTest, FeatureRelevanceIsANodeKind) {
    auto s = builtin_xaikg_schema();
    ASSERT_NE(s.find_node_kind("FeatureRelevance"), nullptr);
    EXPECT_EQ(s.find_edge_kind("FeatureRelevance"), nullptr);
}

TEST(SchemaTest, BuiltinRequiredProps) {
    auto s = builtin_xaikg_schema();
    const auto* forecast = s.find_node_kind("Forecast");
    ASSERT_NE(forecast, nullptr);
    EXPECT_EQ(forecast->required_props,
              (RequiredProps{{"target_date", ValueType::date}, {"created_at", ValueType::date},
                             {"quantity", ValueType::decimal}}));
    EXPECT_EQ(s.find_node_kind("Feedback")->required_props,
              (RequiredProps{{"rating", ValueType::integer}, {"comment", ValueType::text},
                             {"created_at", ValueType::date}}));
}

TEST(SchemaTest, ValidateNode) {
    auto s = builtin_xaikg_schema();
    EXPECT_TRUE(validate_node(s, "Material", {{"code", std::string("M1")}}).empty());
    EXPECT_TRUE(validate_node(s, "Material", {{"code", std::string("M1")}, {"extra", true}}).empty());

    auto missing = validate_node(s, "Material", {});
    ASSERT_EQ(missing.size(), 1u);
    EXPECT_EQ(missing[0].property, "code");

    auto unknown = validate_node(s, "Widget", {{"code", std::string("x")}});
    ASSERT_EQ(unknown.size(), 1u);
    EXPECT_NE(unknown[0].message.find("unknown"), std::string::npos);

    auto mistyped = validate_node(s, "Shipment", {{"date", std::string("2020-01-01")}, {"quantity", std::int64_t{3}}});
    ASSERT_EQ(mistyped.size(), 2u);
    EXPECT_EQ(mistyped[0].property, "date");
    EXPECT_EQ(mistyped[1].property, "quantity");
}

TEST(SchemaTest, ValidateEdgeDirectionMatters) {
    auto s = builtin_xaikg_schema();
    EXPECT_TRUE(validate_edge(s, "FOR_MATERIAL", "Forecast", "Material", {}).empty());
    EXPECT_FALSE(validate_edge(s, "FOR_MATERIAL", "Material", "Forecast", {}).empty());
    EXPECT_FALSE(validate_edge(s, "ABOUT", "Feedback", "User", {}).empty());
    EXPECT_FALSE(validate_edge(s, "NOPE", "Feedback", "User", {}).empty());
}

TEST(SchemaTest, KindMatrixAcceptsExactlyTheEnumeratedPairs) {
    auto s = builtin_xaikg_schema();
    std::size_t accepted = 0;
    for (const auto& ek : s.edge_kinds()) {
        for (const auto& src : s.node_kinds()) {
            for (const auto& dst : s.node_kinds()) {
                bool ok = validate_edge(s, ek.name, src.name, dst.name, {}).empty();
                EXPECT_EQ(ok, kAllowed.contains({ek.name, src.name, dst.name}))
                    << ek.name << " " << src.name << " -> " << dst.name;
                accepted += ok;
            }
        }
    }
    EXPECT_EQ(accepted, kAllowed.size());
}

TEST(SchemaTest, ValidationIsDeterministic) {
    auto s = builtin_xaikg_schema();
    PropertyMap props{{"rating", std::string("x")}, {"created_at", 1.0}};
    EXPECT_EQ(validate_node(s, "Feedback", props), validate_node(s, "Feedback", props));
}

TEST(SchemaTest, DumpLoadRoundTrip) {
    auto s = builtin_xaikg_schema();
    EXPECT_EQ(load_schema(dump_schema(s)), s);
}

TEST(SchemaTest, BundledDescriptorMatchesBuiltin) {
    EXPECT_EQ(load_schema(testing::read_text(testing::data_path("xaikg_schema.json"))), builtin_xaikg_schema());
    EXPECT_EQ(testing::read_text(testing::data_path("xaikg_schema.json")), dump_schema(builtin_xaikg_schema()));
}

TEST(SchemaTest, DanglingReferenceRejected) {
    const char* text = R"({"node_kinds":[{"name":"A","required_props":{}}],
                           "edge_kinds":[{"name":"E","endpoints":[["A","Ghost"]]}]})";
    try {
        load_schema(text);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::schema_violation);
        EXPECT_NE(std::string(e.what()).find("Ghost"), std::string::npos);
    }
}

TEST(SchemaTest, EmptyDescriptorIsEmptySchema) {
    SchemaSpec s = load_schema("{}");
    EXPECT_TRUE(s.node_kinds().empty());
    EXPECT_TRUE(s.edge_kinds().empty());
    EXPECT_FALSE(validate_node(s, "Material", {}).empty());
}

TEST(SchemaTest, ParseErrorsCarryLocation) {
    try {
        load_schema(R"({"node_kinds":[{"name":"A","required_props":{"x":"float"}}]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::parse_error);
        EXPECT_NE(std::string(e.what()).find("/node_kinds/0/required_props/x"), std::string::npos);
    }
    EXPECT_THROW(load_schema("{"), Error);
    EXPECT_THROW(load_schema(R"({"node_kinds":[{"name":"A"},{"name":"A"}]})"), Error);
}

}  // namespace
}  // namespace xaikg
