#include <xaikg/ingestion.hpp>

#include <xaikg/error.hpp>
#include <xaikg/explanation.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace xaikg {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::optional<double> parse_number(std::string_view text) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::parse_error, where + ": " + what);
}

nlohmann::json parse_json(std::string_view text, const std::string& where) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(where, e.what());
    }
}

std::string json_text(const nlohmann::json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) fail(where, std::string("field '") + key + "' must be a string");
    auto value = it->get<std::string>();
    if (value.empty()) fail(where, std::string("field '") + key + "' must not be empty");
    return value;
}

Date json_date(const nlohmann::json& obj, const char* key, const std::string& where) {
    auto text = json_text(obj, key, where);
    auto date = Date::parse(text);
    if (!date) fail(where, std::string("field '") + key + "' is not a YYYY-MM-DD date: '" + text + "'");
    return *date;
}

double json_number(const nlohmann::json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) fail(where, std::string("field '") + key + "' must be a number");
    double value = it->get<double>();
    if (!std::isfinite(value)) fail(where, std::string("field '") + key + "' must be finite");
    return value;
}

void require_exact_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> keys,
                        const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(where, "unexpected field '" + key + "'");
    }
}

/// Existing nodes of `kind` keyed by their identifying text property.
std::unordered_map<std::string, NodeId> index_by(const Graph& graph, std::string_view kind, std::string_view key) {
    std::unordered_map<std::string, NodeId> index;
    for (NodeId id : graph.nodes_of_kind(kind)) {
        if (auto value = get_text(graph.node(id).props, key)) index.emplace(*value, id);
    }
    return index;
}

/// Returns the node for `value`, staging a new one on first sight.
NodeId shared_node(WriteBatch& batch, std::unordered_map<std::string, NodeId>& index, const std::string& kind,
                   const std::string& key, const std::string& value) {
    auto it = index.find(value);
    if (it != index.end()) return it->second;
    NodeId id = batch.add_node(kind, {{key, value}});
    index.emplace(value, id);
    return id;
}

}  // namespace

std::vector<ShipmentRecord> parse_shipments_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty() || lines.front() != "date,material_id,client_id,quantity") {
        fail("shipments row 1", "expected header 'date,material_id,client_id,quantity'");
    }
    std::vector<ShipmentRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "shipments row " + std::to_string(i + 1);
        auto fields = split_fields(lines[i]);
        if (fields.size() != 4) fail(where, "expected 4 fields, got " + std::to_string(fields.size()));
        auto date = Date::parse(fields[0]);
        if (!date) fail(where, "invalid date '" + std::string(fields[0]) + "'");
        if (fields[1].empty()) fail(where, "empty material_id");
        if (fields[2].empty()) fail(where, "empty client_id");
        auto quantity = parse_number(fields[3]);
        if (!quantity) fail(where, "invalid quantity '" + std::string(fields[3]) + "'");
        if (*quantity < 0) fail(where, "negative quantity " + std::string(fields[3]));
        records.push_back({*date, std::string(fields[1]), std::string(fields[2]), *quantity});
    }
    return records;
}

std::vector<ForecastRecord> parse_forecasts_json(std::string_view text) {
    auto doc = parse_json(text, "forecasts");
    if (!doc.is_array()) fail("forecasts", "expected a JSON array");
    std::vector<ForecastRecord> records;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string where = "forecasts element " + std::to_string(i);
        const auto& obj = doc[i];
        if (!obj.is_object()) fail(where, "expected an object");
        require_exact_keys(obj,
                           {"forecast_id", "model_id", "use_case", "material_id", "client_id", "target_date",
                            "created_at", "quantity"},
                           where);
        ForecastRecord r{json_text(obj, "forecast_id", where),
                         json_text(obj, "model_id", where),
                         json_text(obj, "use_case", where),
                         json_text(obj, "material_id", where),
                         json_text(obj, "client_id", where),
                         json_date(obj, "target_date", where),
                         json_date(obj, "created_at", where),
                         json_number(obj, "quantity", where)};
        if (r.quantity < 0) fail(where, "negative quantity");
        if (!seen.insert(r.forecast_id).second) fail(where, "duplicate forecast_id '" + r.forecast_id + "'");
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<RelevanceRecord> parse_relevance_jsonl(std::string_view text) {
    auto lines = split_lines(text);
    std::vector<RelevanceRecord> records;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].find_first_not_of(" \t") == std::string_view::npos) continue;
        const std::string where = "relevance line " + std::to_string(i + 1);
        auto obj = parse_json(lines[i], where);
        if (!obj.is_object()) fail(where, "expected an object");
        require_exact_keys(obj, {"forecast_id", "feature", "weight"}, where);
        RelevanceRecord r{json_text(obj, "forecast_id", where), json_text(obj, "feature", where),
                          json_number(obj, "weight", where)};
        if (!seen.emplace(r.forecast_id, r.feature).second) {
            fail(where, "duplicate (forecast_id, feature) ('" + r.forecast_id + "', '" + r.feature + "')");
        }
        records.push_back(std::move(r));
    }
    return records;
}

WriteCounts ingest_shipments(Graph& graph, const SchemaSpec& schema, std::span<const ShipmentRecord> records) {
    WriteBatch batch(graph, schema);
    auto materials = index_by(graph, "Material", "code");
    auto clients = index_by(graph, "Client", "code");
    for (const auto& r : records) {
        if (!(r.quantity >= 0)) throw Error(ErrorCode::invalid_argument, "negative shipment quantity");
        NodeId material = shared_node(batch, materials, "Material", "code", r.material_id);
        NodeId client = shared_node(batch, clients, "Client", "code", r.client_id);
        NodeId shipment = batch.add_node("Shipment", {{"date", r.date}, {"quantity", r.quantity}});
        batch.add_edge("FOR_MATERIAL", shipment, material);
        batch.add_edge("FOR_CLIENT", shipment, client);
    }
    return batch.commit(graph);
}

WriteCounts ingest_forecasts(Graph& graph, const SchemaSpec& schema, std::span<const ForecastRecord> records) {
    WriteBatch batch(graph, schema);
    auto use_cases = index_by(graph, "UseCase", "name");
    auto models = index_by(graph, "AIModel", "name");
    auto materials = index_by(graph, "Material", "code");
    auto clients = index_by(graph, "Client", "code");
    auto forecasts = index_by(graph, "Forecast", "source_id");

    std::set<std::pair<NodeId, NodeId>> serves;
    for (const Edge& e : graph.edges()) {
        if (e.kind == "SERVES") serves.emplace(e.src, e.dst);
    }

    for (const auto& r : records) {
        if (!(r.quantity >= 0)) throw Error(ErrorCode::invalid_argument, "negative forecast quantity");
        if (forecasts.contains(r.forecast_id)) {
            throw Error(ErrorCode::conflict, "forecast '" + r.forecast_id + "' already ingested");
        }
        NodeId use_case = shared_node(batch, use_cases, "UseCase", "name", r.use_case);
        NodeId model = shared_node(batch, models, "AIModel", "name", r.model_id);
        if (serves.emplace(model, use_case).second) batch.add_edge("SERVES", model, use_case);
        NodeId material = shared_node(batch, materials, "Material", "code", r.material_id);
        NodeId client = shared_node(batch, clients, "Client", "code", r.client_id);
        NodeId forecast = batch.add_node("Forecast", {{"created_at", r.created_at},
                                                      {"quantity", r.quantity},
                                                      {"source_id", r.forecast_id},
                                                      {"target_date", r.target_date}});
        forecasts.emplace(r.forecast_id, forecast);
        batch.add_edge("PRODUCED", model, forecast);
        batch.add_edge("FOR_MATERIAL", forecast, material);
        batch.add_edge("FOR_CLIENT", forecast, client);
    }
    return batch.commit(graph);
}

WriteCounts ingest_relevance(Graph& graph, const SchemaSpec& schema, std::span<const RelevanceRecord> records) {
    auto forecasts = index_by(graph, "Forecast", "source_id");

    // Rank within each forecast over the batch's records.
    std::map<std::string, std::vector<std::pair<std::string, double>>> per_forecast;
    for (const auto& r : records) {
        auto it = forecasts.find(r.forecast_id);
        if (it == forecasts.end()) throw Error(ErrorCode::unknown_id, "unknown forecast '" + r.forecast_id + "'");
        if (!graph.targets(it->second, "HAS_RELEVANCE").empty()) {
            throw Error(ErrorCode::conflict, "forecast '" + r.forecast_id + "' already has feature relevance");
        }
        per_forecast[r.forecast_id].emplace_back(r.feature, r.weight);
    }
    std::map<std::pair<std::string, std::string>, std::int64_t> ranks;
    for (const auto& [forecast_id, relevances] : per_forecast) {
        for (const auto& ranked : rank_features(relevances)) ranks[{forecast_id, ranked.name}] = ranked.rank;
    }

    WriteBatch batch(graph, schema);
    auto features = index_by(graph, "Feature", "name");
    for (const auto& r : records) {
        NodeId forecast = forecasts.at(r.forecast_id);
        NodeId feature = shared_node(batch, features, "Feature", "name", r.feature);
        NodeId relevance = batch.add_node(
            "FeatureRelevance", {{"rank", ranks.at({r.forecast_id, r.feature})}, {"weight", r.weight}});
        batch.add_edge("HAS_RELEVANCE", forecast, relevance);
        batch.add_edge("OF_FEATURE", relevance, feature);
    }
    return batch.commit(graph);
}

std::optional<NodeId> find_forecast(const Graph& graph, std::string_view forecast_id) {
    return graph.find_by_text("Forecast", "source_id", forecast_id);
}

DemandKey demand_key(const Graph& graph, NodeId id) {
    auto materials = graph.targets(id, "FOR_MATERIAL");
    auto clients = graph.targets(id, "FOR_CLIENT");
    if (materials.empty() || clients.empty()) {
        throw Error(ErrorCode::unknown_id, id.str() + " is not linked to a material and a client");
    }
    return {materials.front(), clients.front(), get_text(graph.node(materials.front()).props, "code").value_or(""),
            get_text(graph.node(clients.front()).props, "code").value_or("")};
}

}  // namespace xaikg
