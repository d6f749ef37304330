#pragma once

#include <xaikg/graph.hpp>

#include <cstdint>
#include <optional>

#include <json.hpp>

namespace xaikg {

/// Size and path-length statistics of a graph. Path lengths are shortest-path hop counts over
/// the undirected view (every edge walkable both ways), taken over ordered pairs (u, v), u != v.
/// Unreachable pairs are excluded from tpl/mpl/apl and counted separately.
struct GraphMetrics {
    std::uint64_t node_count = 0;
    std::uint64_t path_count = 0;  // relationship (edge) count
    std::uint64_t tpl = 0;         // total path length
    std::uint64_t mpl = 0;         // maximum shortest-path length
    double apl = 0;                // average shortest-path length
    std::uint64_t reachable_pair_count = 0;
    std::uint64_t unreachable_pair_count = 0;
    bool sampled = false;
    double sample_fraction = 1.0;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const GraphMetrics&, const GraphMetrics&) = default;
};

/// Breadth-first search from every node.
GraphMetrics exact_metrics(const Graph& graph);

/// Number of sources sampled_metrics draws: max(1, ceil(fraction * node_count)).
std::uint64_t sample_size(double fraction, std::uint64_t node_count);

/// Breadth-first search from a uniform sample of sources drawn without replacement with
/// SplitMix64(seed): each draw takes index (u mod remaining) of the ascending id list and removes
/// it. apl and mpl come from the sampled traversals; tpl = round(apl * n * (n - 1)).
/// reachable/unreachable counts are the pairs actually observed, i.e. they sum to
/// sources * (n - 1). Throws Error{invalid_argument} for fraction outside (0, 1] or an empty graph.
GraphMetrics sampled_metrics(const Graph& graph, double fraction, std::uint64_t seed);

nlohmann::json to_json(const GraphMetrics& metrics);

}  // namespace xaikg
