#include <xaikg/decision.hpp>

#include <xaikg/batch.hpp>
#include <xaikg/error.hpp>
#include <xaikg/ingestion.hpp>

#include <algorithm>
#include <cmath>

namespace xaikg {

std::string_view to_string(Guard guard) noexcept {
    switch (guard) {
    case Guard::new_demand: return "NEW_DEMAND";
    case Guard::surge: return "SURGE";
    case Guard::drop: return "DROP";
    case Guard::steady: return "STEADY";
    }
    return "STEADY";
}

std::optional<Guard> parse_guard(std::string_view name) noexcept {
    for (Guard g : kAllGuards) {
        if (to_string(g) == name) return g;
    }
    return std::nullopt;
}

void RulesConfig::validate() const {
    if (window_days < 1) throw Error(ErrorCode::invalid_argument, "window_days must be at least 1");
    if (!std::isfinite(upper) || !std::isfinite(lower) || !(upper > 0) || !(lower < 0)) {
        throw Error(ErrorCode::invalid_argument, "thresholds must satisfy upper > 0 > lower");
    }
    for (Guard g : kAllGuards) {
        if (actions_for(g).empty()) {
            throw Error(ErrorCode::invalid_argument, "no actions configured for " + std::string(to_string(g)));
        }
        for (const auto& a : actions_for(g)) {
            if (a.empty()) throw Error(ErrorCode::invalid_argument, "empty action text");
        }
    }
}

RulesConfig default_rules() {
    RulesConfig rules;
    rules.actions_for(Guard::surge) = {"increase production capacity", "arrange additional transport"};
    rules.actions_for(Guard::drop) = {"reduce raw material orders"};
    rules.actions_for(Guard::new_demand) = {"review new demand source"};
    rules.actions_for(Guard::steady) = {"no action required"};
    return rules;
}

RulesConfig load_rules(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse_error, std::string("rules config: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::parse_error, "rules config: expected an object");
    RulesConfig rules = default_rules();
    try {
        if (doc.contains("window_days")) rules.window_days = doc.at("window_days").get<std::int64_t>();
        if (doc.contains("upper")) rules.upper = doc.at("upper").get<double>();
        if (doc.contains("lower")) rules.lower = doc.at("lower").get<double>();
        if (doc.contains("actions")) {
            const auto& actions = doc.at("actions");
            if (!actions.is_object()) throw Error(ErrorCode::parse_error, "rules config: 'actions' must be an object");
            for (const auto& [name, list] : actions.items()) {
                auto guard = parse_guard(name);
                if (!guard) throw Error(ErrorCode::parse_error, "rules config: unknown guard '" + name + "'");
                rules.actions_for(*guard) = list.get<std::vector<std::string>>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("rules config: ") + e.what());
    }
    rules.validate();
    return rules;
}

std::string dump_rules(const RulesConfig& rules) {
    nlohmann::ordered_json doc;
    doc["window_days"] = rules.window_days;
    doc["upper"] = rules.upper;
    doc["lower"] = rules.lower;
    doc["actions"] = nlohmann::ordered_json::object();
    for (Guard g : kAllGuards) doc["actions"][std::string(to_string(g))] = rules.actions_for(g);
    return doc.dump(2) + "\n";
}

GuardOutcome classify(double baseline, double forecast, double upper, double lower) {
    if (baseline == 0) return {forecast > 0 ? Guard::new_demand : Guard::steady, std::nullopt};
    double r = (forecast - baseline) / baseline;
    if (r >= upper) return {Guard::surge, r};
    if (r <= lower) return {Guard::drop, r};
    return {Guard::steady, r};
}

Baseline compute_baseline(const Graph& graph, NodeId material, NodeId client, Date target_date,
                          std::int64_t window_days) {
    if (window_days < 1) throw Error(ErrorCode::invalid_argument, "window_days must be at least 1");
    const Node* m = graph.find_node(material);
    if (!m || m->kind != "Material") throw Error(ErrorCode::unknown_id, "unknown material " + material.str());
    const Node* c = graph.find_node(client);
    if (!c || c->kind != "Client") throw Error(ErrorCode::unknown_id, "unknown client " + client.str());

    const Date first = target_date - window_days;
    const Date last = target_date - 1;
    double total = 0;
    std::int64_t covered = 0;
    for (NodeId s : graph.sources(material, "FOR_MATERIAL")) {
        const Node& shipment = graph.node(s);
        if (shipment.kind != "Shipment") continue;
        auto clients = graph.targets(s, "FOR_CLIENT");
        if (std::find(clients.begin(), clients.end(), client) == clients.end()) continue;
        auto date = get_date(shipment.props, "date");
        if (!date || *date < first || *date > last) continue;
        total += get_decimal(shipment.props, "quantity").value_or(0.0);
        ++covered;
    }
    return {total / static_cast<double>(window_days), window_days, covered};
}

std::vector<NodeId> generate_options(Graph& graph, const SchemaSpec& schema, NodeId forecast,
                                     const RulesConfig& rules) {
    rules.validate();
    const Node* node = graph.find_node(forecast);
    if (!node || node->kind != "Forecast") throw Error(ErrorCode::unknown_id, "unknown forecast " + forecast.str());
    if (!graph.targets(forecast, "SUGGESTS").empty()) {
        throw Error(ErrorCode::conflict, "forecast " + forecast.str() + " already has decision options");
    }
    DemandKey key = demand_key(graph, forecast);
    auto target = get_date(node->props, "target_date");
    if (!target) throw Error(ErrorCode::schema_violation, "forecast " + forecast.str() + " has no target_date");
    Baseline baseline = compute_baseline(graph, key.material, key.client, *target, rules.window_days);
    double quantity = get_decimal(node->props, "quantity").value_or(0.0);
    GuardOutcome outcome = classify(baseline.value, quantity, rules.upper, rules.lower);

    WriteBatch batch(graph, schema);
    std::vector<NodeId> options;
    const auto& actions = rules.actions_for(outcome.guard);
    for (std::size_t i = 0; i < actions.size(); ++i) {
        NodeId option = batch.add_node("DecisionOption", {{"action", actions[i]},
                                                          {"deviation", outcome.deviation.value_or(0.0)},
                                                          {"rank", static_cast<std::int64_t>(i + 1)}});
        batch.add_edge("SUGGESTS", forecast, option);
        options.push_back(option);
    }
    batch.commit(graph);
    return options;
}

std::size_t suggest_all(Graph& graph, const SchemaSpec& schema, const RulesConfig& rules) {
    rules.validate();
    std::vector<NodeId> pending;
    for (NodeId id : graph.nodes_of_kind("Forecast")) {
        if (graph.targets(id, "SUGGESTS").empty()) pending.push_back(id);
    }
    std::size_t created = 0;
    for (NodeId id : pending) created += generate_options(graph, schema, id, rules).size();
    return created;
}

}  // namespace xaikg
