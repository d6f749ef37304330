#pragma once

#include <xaikg/graph.hpp>
#include <xaikg/schema.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xaikg {

struct RankedFeature {
    std::string name;
    double weight = 0;
    std::int64_t rank = 0;

    friend bool operator==(const RankedFeature&, const RankedFeature&) = default;
};

/// Orders by |weight| descending, ties by name ascending, and numbers the result from 1.
/// Throws Error{invalid_argument} on duplicate names or non-finite weights.
std::vector<RankedFeature> rank_features(std::span<const std::pair<std::string, double>> relevances);

/// A FeatureRelevance node attached to a forecast, resolved to its feature name.
struct RelevanceEntry {
    NodeId node;
    RankedFeature feature;
};

/// Relevances of a forecast ordered by their stored rank.
std::vector<RelevanceEntry> ranked_relevances(const Graph& graph, NodeId forecast);

/// Sign-prefixed weight with exactly three decimals, rounded half away from zero on the
/// value's shortest decimal form: 0.5 -> "+0.500", -0.7 -> "-0.700", 0.0005 -> "+0.001".
std::string format_weight(double weight);

/// Deterministic explanation sentence, e.g.
/// "Forecast for material M1, client C1 on 2020-02-01: 15 units. Top influences: promo
/// (-0.700, supporting lower demand); price (+0.500, supporting higher demand)."
std::string render_text(const PropertyMap& forecast_props, std::string_view material_code,
                        std::string_view client_code, std::span<const RankedFeature> top);

inline constexpr std::int64_t kDefaultExplanationK = 3;

/// Creates a ForecastExplanation for `forecast` linked by EXPLAINED_BY and BASED_ON edges to its
/// min(k, n) top-ranked relevances. Errors: unknown_id (no such forecast), conflict (already
/// explained), invalid_argument (k < 1).
NodeId generate_explanation(Graph& graph, const SchemaSpec& schema, NodeId forecast, std::int64_t k);

/// Explains every not-yet-explained forecast in ascending id order. Returns how many were created.
std::size_t explain_all(Graph& graph, const SchemaSpec& schema, std::int64_t k);

}  // namespace xaikg
