#pragma once

#include <xaikg/explanation.hpp>
#include <xaikg/feedback.hpp>
#include <xaikg/graph.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace xaikg {

struct ForecastFilter {
    std::optional<std::string> material;  // material code
    std::optional<std::string> client;    // client code
    std::optional<Date> from;             // inclusive bounds on target_date
    std::optional<Date> to;
    std::size_t offset = 0;
    std::optional<std::size_t> limit;
};

struct ForecastRow {
    std::string forecast_id;
    NodeId node_id;
    Date target_date;
    double quantity = 0;
    std::string material;
    std::string client;
};

/// Forecasts matching the filter, ascending by node id.
std::vector<ForecastRow> list_forecasts(const Graph& graph, const ForecastFilter& filter);

struct ExplanationView {
    NodeId node_id;
    std::int64_t k = 0;
    std::string text;
    std::vector<RankedFeature> features;  // the BASED_ON relevances in rank order
    FeedbackSummary feedback;
};

struct OptionView {
    NodeId node_id;
    std::string action;
    std::int64_t rank = 0;
    double deviation = 0;
    FeedbackSummary feedback;
};

struct ForecastDetail {
    NodeId node_id;
    PropertyMap props;
    std::string material;
    std::string client;
    std::optional<ExplanationView> explanation;
    std::vector<OptionView> options;  // rank order
    FeedbackSummary feedback;
};

/// Throws Error{unknown_id} unless `forecast` is a Forecast node.
ForecastDetail forecast_detail(const Graph& graph, NodeId forecast);

nlohmann::json to_json(const FeedbackSummary& summary);
nlohmann::json to_json(const ForecastRow& row);
nlohmann::json to_json(const ForecastDetail& detail);

}  // namespace xaikg
