#include <xaikg/feedback.hpp>

#include <xaikg/batch.hpp>
#include <xaikg/error.hpp>

#include <algorithm>
#include <optional>

namespace xaikg {

namespace {

bool is_feedback_target(std::string_view kind) {
    return std::find(kFeedbackTargetKinds.begin(), kFeedbackTargetKinds.end(), kind) != kFeedbackTargetKinds.end();
}

void check_rating(std::int64_t rating) {
    if (rating < 1 || rating > 5) {
        throw Error(ErrorCode::invalid_argument, "rating must be in 1..5, got " + std::to_string(rating));
    }
}

void check_target(const Graph& graph, NodeId target) {
    const Node* node = graph.find_node(target);
    if (!node) throw Error(ErrorCode::unknown_id, "unknown feedback target " + target.str());
    if (!is_feedback_target(node->kind)) {
        throw Error(ErrorCode::schema_violation, node->kind + " " + target.str() + " cannot receive feedback");
    }
}

void check_user(const Graph& graph, NodeId user) {
    const Node* node = graph.find_node(user);
    if (!node) throw Error(ErrorCode::unknown_id, "unknown user " + user.str());
    if (node->kind != "User") throw Error(ErrorCode::schema_violation, user.str() + " is not a User");
}

void check_action(const Graph& graph, NodeId option, std::string_view kind) {
    const Node* node = graph.find_node(option);
    if (!node || node->kind != "DecisionOption") throw Error(ErrorCode::unknown_id, "unknown option " + option.str());
    if (std::find(kActionKinds.begin(), kActionKinds.end(), kind) == kActionKinds.end()) {
        throw Error(ErrorCode::invalid_argument, "unknown action kind '" + std::string(kind) + "'");
    }
}

NodeId stage_user(WriteBatch& batch, const Graph& graph, std::string_view name) {
    if (name.empty()) throw Error(ErrorCode::invalid_argument, "user name must not be empty");
    if (auto existing = graph.find_by_text("User", "name", name)) return *existing;
    return batch.add_node("User", {{"name", std::string(name)}});
}

NodeId stage_feedback(WriteBatch& batch, NodeId user, NodeId target, std::int64_t rating, std::string comment,
                      Date created_at) {
    NodeId feedback = batch.add_node(
        "Feedback", {{"comment", std::move(comment)}, {"created_at", created_at}, {"rating", rating}});
    batch.add_edge("ABOUT", feedback, target);
    batch.add_edge("GAVE", user, feedback);
    return feedback;
}

NodeId stage_action(WriteBatch& batch, NodeId user, NodeId option, std::string_view kind, Date created_at) {
    NodeId action = batch.add_node("Action", {{"created_at", created_at}, {"kind", std::string(kind)}});
    batch.add_edge("TOOK", user, action);
    batch.add_edge("SELECTED", action, option);
    return action;
}

}  // namespace

NodeId ensure_user(Graph& graph, const SchemaSpec& schema, std::string_view name) {
    WriteBatch batch(graph, schema);
    NodeId user = stage_user(batch, graph, name);
    batch.commit(graph);
    return user;
}

NodeId record_feedback(Graph& graph, const SchemaSpec& schema, NodeId user, NodeId target, std::int64_t rating,
                       std::string comment, Date created_at) {
    check_rating(rating);
    check_target(graph, target);
    check_user(graph, user);
    WriteBatch batch(graph, schema);
    NodeId feedback = stage_feedback(batch, user, target, rating, std::move(comment), created_at);
    batch.commit(graph);
    return feedback;
}

NodeId record_feedback(Graph& graph, const SchemaSpec& schema, std::string_view user_name, NodeId target,
                       std::int64_t rating, std::string comment, Date created_at) {
    check_rating(rating);
    check_target(graph, target);
    WriteBatch batch(graph, schema);
    NodeId user = stage_user(batch, graph, user_name);
    NodeId feedback = stage_feedback(batch, user, target, rating, std::move(comment), created_at);
    batch.commit(graph);
    return feedback;
}

NodeId record_action(Graph& graph, const SchemaSpec& schema, NodeId user, NodeId option, std::string_view kind,
                     Date created_at) {
    check_action(graph, option, kind);
    check_user(graph, user);
    WriteBatch batch(graph, schema);
    NodeId action = stage_action(batch, user, option, kind, created_at);
    batch.commit(graph);
    return action;
}

NodeId record_action(Graph& graph, const SchemaSpec& schema, std::string_view user_name, NodeId option,
                     std::string_view kind, Date created_at) {
    check_action(graph, option, kind);
    WriteBatch batch(graph, schema);
    NodeId user = stage_user(batch, graph, user_name);
    NodeId action = stage_action(batch, user, option, kind, created_at);
    batch.commit(graph);
    return action;
}

FeedbackSummary summarize_feedback(const Graph& graph, NodeId target) {
    if (!graph.contains(target)) throw Error(ErrorCode::unknown_id, "unknown node " + target.str());
    FeedbackSummary summary{target, 0, 0.0, {}};
    std::int64_t total = 0;
    for (NodeId f : graph.sources(target, "ABOUT")) {
        const Node& node = graph.node(f);
        if (node.kind != "Feedback") continue;
        auto rating = get_integer(node.props, "rating");
        if (!rating || *rating < 1 || *rating > 5) continue;
        ++summary.histogram[static_cast<std::size_t>(*rating - 1)];
        ++summary.count;
        total += *rating;
    }
    if (summary.count > 0) summary.mean_rating = static_cast<double>(total) / static_cast<double>(summary.count);
    return summary;
}

std::size_t synthesize_feedback(Graph& graph, const SchemaSpec& schema, const SynthConfig& config) {
    for (double c : {config.coverage_forecast, config.coverage_option, config.coverage_relevance,
                     config.coverage_explanation}) {
        if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::invalid_argument, "coverage must be within [0, 1]");
    }
    auto coverage_of = [&](std::string_view kind) -> std::optional<double> {
        if (kind == "Forecast") return config.coverage_forecast;
        if (kind == "DecisionOption") return config.coverage_option;
        if (kind == "FeatureRelevance") return config.coverage_relevance;
        if (kind == "ForecastExplanation" && config.coverage_explanation > 0) return config.coverage_explanation;
        return std::nullopt;
    };

    SplitMix64 rng(config.seed);
    const Date epoch = Date::from_ymd(1970, 1, 1);
    WriteBatch batch(graph, schema);
    const NodeId user = stage_user(batch, graph, config.annotator);
    std::size_t created = 0;
    for (const Node& node : graph.nodes()) {
        auto coverage = coverage_of(node.kind);
        if (!coverage) continue;
        const std::uint64_t u = rng.next();
        if (static_cast<double>(u % 1000) / 1000.0 >= *coverage) continue;
        auto rating = static_cast<std::int64_t>(1 + ((u >> 32) % 5));
        stage_feedback(batch, user, node.id, rating, "", epoch);
        ++created;
    }
    batch.commit(graph);
    return created;
}

}  // namespace xaikg
