#include <xaikg/explanation.hpp>

#include <xaikg/batch.hpp>
#include <xaikg/error.hpp>
#include <xaikg/ingestion.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace xaikg {

std::vector<RankedFeature> rank_features(std::span<const std::pair<std::string, double>> relevances) {
    std::vector<RankedFeature> out;
    out.reserve(relevances.size());
    std::set<std::string_view> names;
    for (const auto& [name, weight] : relevances) {
        if (!names.insert(name).second) throw Error(ErrorCode::invalid_argument, "duplicate feature '" + name + "'");
        if (!std::isfinite(weight)) throw Error(ErrorCode::invalid_argument, "non-finite weight for '" + name + "'");
        out.push_back({name, weight, 0});
    }
    std::sort(out.begin(), out.end(), [](const RankedFeature& a, const RankedFeature& b) {
        double ma = std::fabs(a.weight);
        double mb = std::fabs(b.weight);
        if (ma != mb) return ma > mb;
        return a.name < b.name;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<std::int64_t>(i + 1);
    return out;
}

std::vector<RelevanceEntry> ranked_relevances(const Graph& graph, NodeId forecast) {
    std::vector<RelevanceEntry> out;
    for (NodeId rel : graph.targets(forecast, "HAS_RELEVANCE")) {
        const auto& props = graph.node(rel).props;
        std::string name;
        if (auto features = graph.targets(rel, "OF_FEATURE"); !features.empty()) {
            name = get_text(graph.node(features.front()).props, "name").value_or("");
        }
        out.push_back({rel, {std::move(name), get_decimal(props, "weight").value_or(0.0),
                             get_integer(props, "rank").value_or(0)}});
    }
    std::sort(out.begin(), out.end(), [](const RelevanceEntry& a, const RelevanceEntry& b) {
        return a.feature.rank != b.feature.rank ? a.feature.rank < b.feature.rank : a.node < b.node;
    });
    return out;
}

std::string format_weight(double weight) {
    std::string digits = format_decimal(std::fabs(weight));
    std::size_t dot = digits.find('.');
    std::string whole = dot == std::string::npos ? digits : digits.substr(0, dot);
    std::string frac = dot == std::string::npos ? std::string() : digits.substr(dot + 1);
    frac.resize(std::max<std::size_t>(frac.size(), 4), '0');
    bool round_up = frac[3] >= '5';
    std::string kept = whole + frac.substr(0, 3);  // fixed-point digits, scaled by 1000
    if (round_up) {
        std::size_t i = kept.size();
        while (i > 0) {
            --i;
            if (kept[i] == '9') {
                kept[i] = '0';
            } else {
                ++kept[i];
                break;
            }
            if (i == 0) kept.insert(kept.begin(), '1');
        }
    }
    std::string out(1, weight >= 0 ? '+' : '-');
    out += kept.substr(0, kept.size() - 3);
    out += '.';
    out += kept.substr(kept.size() - 3);
    return out;
}

std::string render_text(const PropertyMap& forecast_props, std::string_view material_code,
                        std::string_view client_code, std::span<const RankedFeature> top) {
    auto date = get_date(forecast_props, "target_date");
    auto quantity = get_decimal(forecast_props, "quantity");
    std::string text = "Forecast for material ";
    text += material_code;
    text += ", client ";
    text += client_code;
    text += " on ";
    text += date ? date->to_string() : std::string("?");
    text += ": ";
    text += quantity ? format_decimal(*quantity) : std::string("?");
    text += " units. Top influences: ";
    if (top.empty()) return text + "none.";
    for (std::size_t i = 0; i < top.size(); ++i) {
        if (i > 0) text += "; ";
        text += top[i].name;
        text += " (";
        text += format_weight(top[i].weight);
        text += top[i].weight >= 0 ? ", supporting higher demand)" : ", supporting lower demand)";
    }
    return text + ".";
}

NodeId generate_explanation(Graph& graph, const SchemaSpec& schema, NodeId forecast, std::int64_t k) {
    if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
    const Node* node = graph.find_node(forecast);
    if (!node || node->kind != "Forecast") throw Error(ErrorCode::unknown_id, "unknown forecast " + forecast.str());
    if (!graph.targets(forecast, "EXPLAINED_BY").empty()) {
        throw Error(ErrorCode::conflict, "forecast " + forecast.str() + " is already explained");
    }
    auto relevances = ranked_relevances(graph, forecast);
    if (relevances.size() > static_cast<std::size_t>(k)) relevances.resize(static_cast<std::size_t>(k));

    std::vector<RankedFeature> top;
    for (const auto& r : relevances) top.push_back(r.feature);
    DemandKey key = demand_key(graph, forecast);
    std::string text = render_text(node->props, key.material_code, key.client_code, top);

    WriteBatch batch(graph, schema);
    NodeId explanation = batch.add_node("ForecastExplanation", {{"k", k}, {"text", std::move(text)}});
    batch.add_edge("EXPLAINED_BY", forecast, explanation);
    for (const auto& r : relevances) batch.add_edge("BASED_ON", explanation, r.node);
    batch.commit(graph);
    return explanation;
}

std::size_t explain_all(Graph& graph, const SchemaSpec& schema, std::int64_t k) {
    if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
    std::vector<NodeId> pending;
    for (NodeId id : graph.nodes_of_kind("Forecast")) {
        if (graph.targets(id, "EXPLAINED_BY").empty()) pending.push_back(id);
    }
    for (NodeId id : pending) generate_explanation(graph, schema, id, k);
    return pending.size();
}

}  // namespace xaikg
