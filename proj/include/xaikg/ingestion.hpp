#pragma once

#include <xaikg/batch.hpp>
#include <xaikg/graph.hpp>
#include <xaikg/schema.hpp>
#include <xaikg/value.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xaikg {

struct ShipmentRecord {
    Date date;
    std::string material_id;
    std::string client_id;
    double quantity = 0;  // product units, >= 0

    friend bool operator==(const ShipmentRecord&, const ShipmentRecord&) = default;
};

struct ForecastRecord {
    std::string forecast_id;
    std::string model_id;
    std::string use_case;
    std::string material_id;
    std::string client_id;
    Date target_date;
    Date created_at;
    double quantity = 0;

    friend bool operator==(const ForecastRecord&, const ForecastRecord&) = default;
};

struct RelevanceRecord {
    std::string forecast_id;
    std::string feature;
    double weight = 0;  // signed attribution score

    friend bool operator==(const RelevanceRecord&, const RelevanceRecord&) = default;
};

// Parsers throw Error{parse_error} with the offending row, line or element index.

/// CSV with the exact header `date,material_id,client_id,quantity`. Rows are numbered from
/// the header (row 1), so the first data row is row 2.
std::vector<ShipmentRecord> parse_shipments_csv(std::string_view text);
/// JSON array of objects carrying exactly the ForecastRecord field names.
std::vector<ForecastRecord> parse_forecasts_json(std::string_view text);
/// JSON Lines of {"forecast_id":..,"feature":..,"weight":..}. Blank lines are ignored.
std::vector<RelevanceRecord> parse_relevance_jsonl(std::string_view text);

// The ingesters are batch-atomic: the whole batch is staged and validated before anything
// is written. Material, Client, UseCase, AIModel and Feature nodes are shared across the
// whole graph by their identifying property.

WriteCounts ingest_shipments(Graph& graph, const SchemaSpec& schema, std::span<const ShipmentRecord> records);

/// Forecast nodes carry the external forecast_id as `source_id`. A forecast_id already present
/// in the graph is a conflict.
WriteCounts ingest_forecasts(Graph& graph, const SchemaSpec& schema, std::span<const ForecastRecord> records);

/// Ranks are assigned per forecast by descending |weight|, ties by ascending feature name.
/// Every forecast_id must resolve to a Forecast node that has no relevance yet.
WriteCounts ingest_relevance(Graph& graph, const SchemaSpec& schema, std::span<const RelevanceRecord> records);

/// Forecast node carrying `source_id`, if any.
std::optional<NodeId> find_forecast(const Graph& graph, std::string_view forecast_id);

/// Material and client a forecast (or shipment) is attached to.
struct DemandKey {
    NodeId material;
    NodeId client;
    std::string material_code;
    std::string client_code;
};
DemandKey demand_key(const Graph& graph, NodeId forecast_or_shipment);

}  // namespace xaikg
