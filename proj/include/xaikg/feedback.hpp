#pragma once

#include <xaikg/graph.hpp>
#include <xaikg/schema.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace xaikg {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then two xor-shift-multiply rounds and a final
/// xor-shift. Bit-exact across platforms; seed 0 yields 0xE220A8397B1DCDAF first.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

inline constexpr std::array<std::string_view, 4> kFeedbackTargetKinds{"Forecast", "ForecastExplanation",
                                                                      "DecisionOption", "FeatureRelevance"};
inline constexpr std::array<std::string_view, 3> kActionKinds{"accepted", "rejected", "modified"};

/// User node with this name, created if missing.
NodeId ensure_user(Graph& graph, const SchemaSpec& schema, std::string_view name);

/// Feedback node plus ABOUT (to target) and GAVE (from user) edges.
/// Errors: invalid_argument (rating outside 1..5), unknown_id, schema_violation (target kind
/// cannot receive feedback, or `user` is not a User).
NodeId record_feedback(Graph& graph, const SchemaSpec& schema, NodeId user, NodeId target, std::int64_t rating,
                       std::string comment, Date created_at);
/// Same, identifying the user by name; a missing User node is created in the same batch.
NodeId record_feedback(Graph& graph, const SchemaSpec& schema, std::string_view user_name, NodeId target,
                       std::int64_t rating, std::string comment, Date created_at);

/// Action node plus TOOK (from user) and SELECTED (to option) edges. `kind` is one of
/// accepted, rejected, modified.
NodeId record_action(Graph& graph, const SchemaSpec& schema, NodeId user, NodeId option, std::string_view kind,
                     Date created_at);
NodeId record_action(Graph& graph, const SchemaSpec& schema, std::string_view user_name, NodeId option,
                     std::string_view kind, Date created_at);

struct FeedbackSummary {
    NodeId target;
    std::int64_t count = 0;
    double mean_rating = 0;  // 0 when count is 0
    std::array<std::int64_t, 5> histogram{};  // counts for ratings 1..5

    friend bool operator==(const FeedbackSummary&, const FeedbackSummary&) = default;
};

FeedbackSummary summarize_feedback(const Graph& graph, NodeId target);

struct SynthConfig {
    std::uint64_t seed = 0;
    double coverage_forecast = 0.5;
    double coverage_option = 0.5;
    double coverage_relevance = 0.5;
    double coverage_explanation = 0.0;
    std::string annotator = "synthetic-annotator";
};

/// Deterministic simulated feedback. Eligible targets are Forecast, DecisionOption and
/// FeatureRelevance nodes (plus ForecastExplanation when its coverage is positive), visited in
/// ascending id order. Each draws one generator output u; feedback is created iff
/// (u mod 1000)/1000 < coverage, with rating 1 + ((u >> 32) mod 5), an empty comment and date
/// 1970-01-01, attributed to the annotator user. Returns the number created.
std::size_t synthesize_feedback(Graph& graph, const SchemaSpec& schema, const SynthConfig& config);

}  // namespace xaikg
