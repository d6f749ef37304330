#pragma once

#include <xaikg/graph.hpp>
#include <xaikg/schema.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xaikg {

/// Heuristic guards over the forecast-vs-baseline deviation. Exactly one fires per forecast.
enum class Guard { new_demand, surge, drop, steady };

inline constexpr std::array<Guard, 4> kAllGuards{Guard::surge, Guard::drop, Guard::new_demand, Guard::steady};

std::string_view to_string(Guard guard) noexcept;  // "SURGE", "DROP", "NEW_DEMAND", "STEADY"
std::optional<Guard> parse_guard(std::string_view name) noexcept;

struct Baseline {
    double value = 0;  // product units per day
    std::int64_t window_days = 0;
    std::int64_t covered_records = 0;
};

struct RulesConfig {
    std::int64_t window_days = 28;
    double upper = 0.2;
    double lower = -0.2;
    std::array<std::vector<std::string>, 4> actions;  // indexed by Guard

    const std::vector<std::string>& actions_for(Guard g) const { return actions[static_cast<std::size_t>(g)]; }
    std::vector<std::string>& actions_for(Guard g) { return actions[static_cast<std::size_t>(g)]; }

    /// Throws Error{invalid_argument} unless window_days >= 1, upper > 0 > lower and every guard
    /// has at least one action.
    void validate() const;

    friend bool operator==(const RulesConfig&, const RulesConfig&) = default;
};

RulesConfig default_rules();
/// JSON {"window_days":28,"upper":0.2,"lower":-0.2,"actions":{"SURGE":[...],...}}. Missing keys
/// take the default value. Throws Error{parse_error} or Error{invalid_argument}.
RulesConfig load_rules(std::string_view text);
std::string dump_rules(const RulesConfig& rules);

struct GuardOutcome {
    Guard guard;
    std::optional<double> deviation;  // (forecast - baseline) / baseline, undefined when baseline is 0
};

/// Thresholds are inclusive: deviation == upper is a surge, deviation == lower is a drop.
GuardOutcome classify(double baseline, double forecast, double upper, double lower);

/// Mean daily shipped quantity for (material, client) over [target - window, target - 1];
/// days without shipments count as zero.
Baseline compute_baseline(const Graph& graph, NodeId material, NodeId client, Date target_date,
                          std::int64_t window_days);

/// Creates one DecisionOption per action of the firing rule, ranked by position, each linked
/// from the forecast by SUGGESTS. Errors: unknown_id, conflict (options already present).
std::vector<NodeId> generate_options(Graph& graph, const SchemaSpec& schema, NodeId forecast,
                                     const RulesConfig& rules);

/// Runs generate_options for every forecast without options, in ascending id order.
/// Returns the number of DecisionOption nodes created.
std::size_t suggest_all(Graph& graph, const SchemaSpec& schema, const RulesConfig& rules);

}  // namespace xaikg
