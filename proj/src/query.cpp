#include <xaikg/query.hpp>

#include <xaikg/error.hpp>
#include <xaikg/ingestion.hpp>

#include <algorithm>

namespace xaikg {

std::vector<ForecastRow> list_forecasts(const Graph& graph, const ForecastFilter& filter) {
    std::vector<ForecastRow> rows;
    std::size_t skipped = 0;
    for (NodeId id : graph.nodes_of_kind("Forecast")) {
        if (filter.limit && rows.size() >= *filter.limit) break;
        const auto& props = graph.node(id).props;
        DemandKey key = demand_key(graph, id);
        Date target = get_date(props, "target_date").value_or(Date{});
        if (filter.material && key.material_code != *filter.material) continue;
        if (filter.client && key.client_code != *filter.client) continue;
        if (filter.from && target < *filter.from) continue;
        if (filter.to && target > *filter.to) continue;
        if (skipped < filter.offset) {
            ++skipped;
            continue;
        }
        rows.push_back({get_text(props, "source_id").value_or(""), id, target,
                        get_decimal(props, "quantity").value_or(0.0), key.material_code, key.client_code});
    }
    return rows;
}

ForecastDetail forecast_detail(const Graph& graph, NodeId forecast) {
    const Node* node = graph.find_node(forecast);
    if (!node || node->kind != "Forecast") throw Error(ErrorCode::unknown_id, "unknown forecast " + forecast.str());
    DemandKey key = demand_key(graph, forecast);
    ForecastDetail detail{forecast, node->props, key.material_code, key.client_code, std::nullopt, {},
                          summarize_feedback(graph, forecast)};

    if (auto explanations = graph.targets(forecast, "EXPLAINED_BY"); !explanations.empty()) {
        const Node& ex = graph.node(explanations.front());
        ExplanationView view{ex.id, get_integer(ex.props, "k").value_or(0), get_text(ex.props, "text").value_or(""),
                             {}, summarize_feedback(graph, ex.id)};
        for (const auto& entry : ranked_relevances(graph, forecast)) {
            auto based = graph.targets(ex.id, "BASED_ON");
            if (std::find(based.begin(), based.end(), entry.node) != based.end()) view.features.push_back(entry.feature);
        }
        detail.explanation = std::move(view);
    }

    for (NodeId opt : graph.targets(forecast, "SUGGESTS")) {
        const auto& props = graph.node(opt).props;
        detail.options.push_back({opt, get_text(props, "action").value_or(""), get_integer(props, "rank").value_or(0),
                                  get_decimal(props, "deviation").value_or(0.0), summarize_feedback(graph, opt)});
    }
    std::stable_sort(detail.options.begin(), detail.options.end(),
                     [](const OptionView& a, const OptionView& b) { return a.rank < b.rank; });
    return detail;
}

nlohmann::json to_json(const FeedbackSummary& summary) {
    return {{"target", summary.target.str()},
            {"count", summary.count},
            {"mean_rating", summary.mean_rating},
            {"histogram", summary.histogram}};
}

nlohmann::json to_json(const ForecastRow& row) {
    return {{"forecast_id", row.forecast_id}, {"node_id", row.node_id.str()},
            {"target_date", row.target_date.to_string()}, {"quantity", row.quantity},
            {"material", row.material}, {"client", row.client}};
}

nlohmann::json to_json(const ForecastDetail& detail) {
    nlohmann::json out{{"node_id", detail.node_id.str()},
                       {"props", to_json(detail.props)},
                       {"material", detail.material},
                       {"client", detail.client},
                       {"feedback", to_json(detail.feedback)},
                       {"explanation", nullptr},
                       {"options", nlohmann::json::array()}};
    if (detail.explanation) {
        const auto& ex = *detail.explanation;
        nlohmann::json features = nlohmann::json::array();
        for (const auto& f : ex.features) features.push_back({{"name", f.name}, {"weight", f.weight}, {"rank", f.rank}});
        out["explanation"] = {{"node_id", ex.node_id.str()}, {"k", ex.k}, {"text", ex.text},
                              {"features", std::move(features)}, {"feedback", to_json(ex.feedback)}};
    }
    for (const auto& o : detail.options) {
        out["options"].push_back({{"node_id", o.node_id.str()}, {"action", o.action}, {"rank", o.rank},
                                  {"deviation", o.deviation}, {"feedback", to_json(o.feedback)}});
    }
    return out;
}

}  // namespace xaikg
