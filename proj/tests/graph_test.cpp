#include <xaikg/error.hpp>
#include <xaikg/graph.hpp>

#include <test_support.hpp>

#include <gtest/gtest.h>

#include <random>

namespace xaikg {
namespace {

TEST(GraphTest, NodeIdsAreSequential) {
    Graph g;
    EXPECT_EQ(g.add_node("Material", {{"code", std::string("M1")}}).str(), "n1");
    EXPECT_EQ(g.add_node("Material", {{"code", std::string("M2")}}).str(), "n2");
    NodeId empty = g.add_node("Client");
    EXPECT_TRUE(g.node(empty).props.empty());
    EXPECT_EQ(g.node_count(), 3u);
}

TEST(GraphTest, EmptyKindRejected) {
    Graph g;
    EXPECT_THROW(g.add_node(""), Error);
}

TEST(GraphTest, AddEdgeAssignsIdsAndAllowsParallelEdges) {
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_node("X");
    EXPECT_EQ(g.add_edge("FOR_MATERIAL", NodeId{3}, NodeId{1}).str(), "e1");
    EXPECT_EQ(g.add_edge("FOR_MATERIAL", NodeId{3}, NodeId{1}).str(), "e2");
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.outgoing(NodeId{3}).size(), 2u);
    EXPECT_EQ(g.incoming(NodeId{1}).size(), 2u);
}

TEST(GraphTest, AddEdgeToMissingNodeNamesIt) {
    Graph g;
    g.add_node("X");
    try {
        g.add_edge("E", NodeId{1}, NodeId{999});
        FAIL() << "expected unknown endpoint";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unknown_id);
        EXPECT_NE(std::string(e.what()).find("n999"), std::string::npos);
    }
    EXPECT_EQ(g.edge_count(), 0u);
}

TEST(GraphTest, Counts) {
    Graph g;
    EXPECT_EQ(g.node_count(), 0u);
    EXPECT_EQ(g.edge_count(), 0u);
    for (int i = 0; i < 3; ++i) g.add_node("X");
    g.add_edge("E", NodeId{1}, NodeId{2});
    g.add_edge("E", NodeId{2}, NodeId{3});
    EXPECT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
}

TEST(GraphTest, NeighborsUndirected) {
    Graph g = testing::path3();
    EXPECT_EQ(g.neighbors_undirected(NodeId{2}), (std::vector<NodeId>{NodeId{1}, NodeId{3}}));

    Graph iso;
    iso.add_node("X");
    EXPECT_TRUE(iso.neighbors_undirected(NodeId{1}).empty());

    Graph both;
    both.add_node("X");
    both.add_node("X");
    both.add_edge("E", NodeId{1}, NodeId{2});
    both.add_edge("E", NodeId{2}, NodeId{1});
    EXPECT_EQ(both.neighbors_undirected(NodeId{1}), std::vector<NodeId>{NodeId{2}});

    both.add_edge("SELF", NodeId{1}, NodeId{1});
    EXPECT_EQ(both.neighbors_undirected(NodeId{1}), (std::vector<NodeId>{NodeId{1}, NodeId{2}}));
    EXPECT_THROW(both.neighbors_undirected(NodeId{7}), Error);
}

TEST(GraphTest, IdParsing) {
    EXPECT_EQ(NodeId::parse("n12"), NodeId{12});
    EXPECT_FALSE(NodeId::parse("n0"));
    EXPECT_FALSE(NodeId::parse("n012"));
    EXPECT_FALSE(NodeId::parse("e1"));
    EXPECT_FALSE(NodeId::parse("n"));
    EXPECT_FALSE(NodeId::parse("n1x"));
    EXPECT_EQ(EdgeId::parse("e3"), EdgeId{3});
}

TEST(SnapshotTest, EmptyGraphExportsNothing) {
    EXPECT_EQ(export_jsonl(Graph{}), "");
}

TEST(SnapshotTest, NodesFirstThenEdgesWithCanonicalValues) {
    Graph g;
    g.add_node("Shipment", {{"quantity", 15.0}, {"date", *Date::parse("2020-01-02")}});
    g.add_node("Material", {{"code", std::string("M\"1")}, {"flag", true}, {"n", std::int64_t{-4}}});
    g.add_edge("FOR_MATERIAL", NodeId{1}, NodeId{2});
    const std::string expected =
        R"({"t":"node","id":"n1","kind":"Shipment","props":{"date":"2020-01-02","quantity":15.0}})"
        "\n"
        R"({"t":"node","id":"n2","kind":"Material","props":{"code":"M\"1","flag":true,"n":-4}})"
        "\n"
        R"({"t":"edge","id":"e1","kind":"FOR_MATERIAL","src":"n1","dst":"n2","props":{}})"
        "\n";
    EXPECT_EQ(export_jsonl(g), expected);
}

TEST(SnapshotTest, DecimalFormatting) {
    EXPECT_EQ(format_decimal_json(0.5), "0.5");
    EXPECT_EQ(format_decimal_json(15.0), "15.0");
    EXPECT_EQ(format_decimal_json(1e-7), "0.0000001");
    EXPECT_EQ(format_decimal_json(-0.0), "0.0");
    EXPECT_EQ(format_decimal_json(1e21), "1000000000000000000000.0");
    EXPECT_EQ(format_decimal(15.0), "15");
    EXPECT_EQ(format_decimal(11.4), "11.4");
}

TEST(SnapshotTest, ImportRejectsMalformedLinesWithLineNumber) {
    const std::string good = R"({"t":"node","id":"n1","kind":"X","props":{}})";
    try {
        import_jsonl(good + "\n{not json}\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::parse_error);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    // Edge before its endpoint.
    EXPECT_THROW(import_jsonl(good + "\n" + R"({"t":"edge","id":"e1","kind":"E","src":"n1","dst":"n2","props":{}})"),
                 Error);
    // Out-of-sequence id.
    EXPECT_THROW(import_jsonl(R"({"t":"node","id":"n2","kind":"X","props":{}})"), Error);
}

TEST(SnapshotTest, ImportPreservesValueTypes) {
    Graph g;
    g.add_node("X", {{"d", 2.0}, {"i", std::int64_t{2}}, {"day", *Date::parse("2021-03-04")}, {"s", std::string("x")}});
    Graph back = import_jsonl(export_jsonl(g));
    const auto& props = back.node(NodeId{1}).props;
    EXPECT_EQ(type_of(props.at("d")), ValueType::decimal);
    EXPECT_EQ(type_of(props.at("i")), ValueType::integer);
    EXPECT_EQ(type_of(props.at("day")), ValueType::date);
    EXPECT_EQ(type_of(props.at("s")), ValueType::text);
}

TEST(DateTest, StrictParsing) {
    EXPECT_TRUE(Date::parse("2020-02-29"));
    EXPECT_FALSE(Date::parse("2021-02-29"));
    EXPECT_FALSE(Date::parse("2020-1-02"));
    EXPECT_FALSE(Date::parse("2020-01-02T00:00"));
    EXPECT_EQ((*Date::parse("2020-03-01") - 1).to_string(), "2020-02-29");
}

/// Random add sequences with mixed property types.
Graph random_typed_graph(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Graph g;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
        PropertyMap props;
        const int k = static_cast<int>(rng() % 4);
        for (int j = 0; j < k; ++j) {
            std::string key = "p" + std::to_string(rng() % 6);
            switch (rng() % 5) {
            case 0: props[key] = std::string("t\xC3\xA9xt \"q\" ") + std::to_string(rng() % 100); break;
            case 1: props[key] = static_cast<double>(static_cast<std::int64_t>(rng() % 200001) - 100000) / 997.0; break;
            case 2: props[key] = static_cast<std::int64_t>(rng() % 1000) - 500; break;
            case 3: props[key] = (rng() % 2) == 0; break;
            default: props[key] = Date::from_ymd(1990, 1, 1) + static_cast<std::int64_t>(rng() % 20000); break;
            }
        }
        g.add_node("K" + std::to_string(rng() % 3), std::move(props));
    }
    const int m = static_cast<int>(rng() % 80);
    for (int i = 0; i < m; ++i) {
        NodeId s{1 + rng() % static_cast<std::uint64_t>(n)};
        NodeId d{1 + rng() % static_cast<std::uint64_t>(n)};
        PropertyMap props;
        if (rng() % 4 == 0) props["w"] = static_cast<double>(rng() % 1000) / 8.0;
        g.add_edge("E" + std::to_string(rng() % 3), s, d, std::move(props));
    }
    return g;
}

TEST(SnapshotProperty, ExportImportExportIsByteIdentical) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Graph g = random_typed_graph(seed);
        const std::string first = export_jsonl(g);
        EXPECT_EQ(export_jsonl(import_jsonl(first)), first) << "seed " << seed;
    }
}

TEST(GraphProperty, AdjacencySoundnessAndDeterminism) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = random_typed_graph(seed);
        Graph again = random_typed_graph(seed);
        EXPECT_EQ(export_jsonl(g), export_jsonl(again));

        std::size_t entries = 0;
        for (const Node& n : g.nodes()) entries += g.outgoing(n.id).size() + g.incoming(n.id).size();
        EXPECT_EQ(entries, 2 * g.edge_count());
        for (const Edge& e : g.edges()) {
            auto out = g.outgoing(e.src);
            auto in = g.incoming(e.dst);
            EXPECT_EQ(std::count(out.begin(), out.end(), e.id), 1);
            EXPECT_EQ(std::count(in.begin(), in.end(), e.id), 1);
        }
    }
}

TEST(SnapshotTest, SaveAndLoadFile) {
    auto path = std::filesystem::temp_directory_path() / "xaikg_graph_test.jsonl";
    std::filesystem::remove(path);
    EXPECT_EQ(load_snapshot(path).node_count(), 0u);
    Graph g = testing::triangle();
    save_snapshot(g, path);
    EXPECT_EQ(export_jsonl(load_snapshot(path)), export_jsonl(g));
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace xaikg
