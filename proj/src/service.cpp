#include <xaikg/service.hpp>

#include <xaikg/explanation.hpp>
#include <xaikg/feedback.hpp>
#include <xaikg/ingestion.hpp>
#include <xaikg/metrics.hpp>
#include <xaikg/query.hpp>

#include <chrono>
#include <functional>

#include <httplib.h>
#include <json.hpp>

namespace xaikg {

int http_status(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::parse_error: return 400;
    case ErrorCode::unknown_id: return 404;
    case ErrorCode::conflict: return 409;
    case ErrorCode::schema_violation:
    case ErrorCode::invalid_argument: return 422;
    }
    return 422;
}

namespace {

using json = nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
    send_json(res, http_status(code), {{"status", http_status(code)}, {"code", to_string(code)}, {"message", message}});
}

/// Runs a handler body, turning library errors into ApiError responses.
httplib::Server::Handler guarded(std::function<void(const httplib::Request&, httplib::Response&)> body) {
    return [body = std::move(body)](const httplib::Request& req, httplib::Response& res) {
        try {
            body(req, res);
        } catch (const Error& e) {
            send_error(res, e.code(), e.what());
        } catch (const std::exception& e) {
            send_error(res, ErrorCode::invalid_argument, e.what());
        }
    };
}

json parse_body(const httplib::Request& req, bool allow_empty) {
    if (req.body.empty() && allow_empty) return json::object();
    json body;
    try {
        body = json::parse(req.body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse_error, std::string("request body: ") + e.what());
    }
    if (!body.is_object()) throw Error(ErrorCode::parse_error, "request body must be a JSON object");
    return body;
}

std::string required_text(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) {
        throw Error(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a string");
    }
    return it->get<std::string>();
}

std::int64_t required_integer(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_number_integer()) {
        throw Error(ErrorCode::invalid_argument, std::string("field '") + key + "' must be an integer");
    }
    return it->get<std::int64_t>();
}

template <typename T>
T optional_field(const json& body, const char* key, T fallback) {
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::invalid_argument, std::string("field '") + key + "' has the wrong type");
    }
}

NodeId node_ref(const std::string& text) {
    auto id = NodeId::parse(text);
    if (!id) throw Error(ErrorCode::unknown_id, "unknown node '" + text + "'");
    return *id;
}

Date today() {
    return Date(std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now()));
}

Date created_at_field(const json& body) {
    auto it = body.find("created_at");
    if (it == body.end() || it->is_null()) return today();
    if (!it->is_string()) throw Error(ErrorCode::invalid_argument, "field 'created_at' must be a date string");
    auto date = Date::parse(it->get<std::string>());
    if (!date) throw Error(ErrorCode::invalid_argument, "field 'created_at' is not a YYYY-MM-DD date");
    return *date;
}

json counts_json(const WriteCounts& counts) {
    return {{"nodes_added", counts.nodes_added}, {"edges_added", counts.edges_added}};
}

std::optional<std::string> query_param(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) return std::nullopt;
    return req.get_param_value(key);
}

std::optional<Date> query_date(const httplib::Request& req, const char* key) {
    auto text = query_param(req, key);
    if (!text || text->empty()) return std::nullopt;
    auto date = Date::parse(*text);
    if (!date) throw Error(ErrorCode::invalid_argument, std::string("query '") + key + "' is not a YYYY-MM-DD date");
    return date;
}

std::uint64_t query_unsigned(const httplib::Request& req, const char* key, std::uint64_t fallback) {
    auto text = query_param(req, key);
    if (!text || text->empty()) return fallback;
    try {
        std::size_t used = 0;
        auto value = std::stoull(*text, &used);
        if (used != text->size() || text->front() == '-') throw std::invalid_argument(*text);
        return value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument, std::string("query '") + key + "' must be a non-negative integer");
    }
}

double query_fraction(const std::string& text) {
    try {
        std::size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument, "query 'sample' must be a number");
    }
}

}  // namespace

Service::Service(Graph graph, SchemaSpec schema, ServiceConfig config)
    : graph_(std::move(graph)), schema_(std::move(schema)), config_(std::move(config)) {
    config_.rules.validate();
    if (config_.default_k < 1) throw Error(ErrorCode::invalid_argument, "default k must be at least 1");
}

std::string Service::export_snapshot() const {
    return read([](const Graph& g) { return export_jsonl(g); });
}

void Service::mount(httplib::Server& server) {
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return;
        ErrorCode code = res.status == 404   ? ErrorCode::unknown_id
                         : res.status == 400 ? ErrorCode::parse_error
                                             : ErrorCode::invalid_argument;
        int status = res.status;
        res.set_content(json{{"status", status}, {"code", to_string(code)}, {"message", "no such endpoint or bad request"}}.dump(),
                        "application/json");
    });
    server.Post("/ingest/shipments", guarded([this](const auto& req, auto& res) {
        auto records = parse_shipments_csv(req.body);
        auto counts = write([&](Graph& g) { return ingest_shipments(g, schema_, records); });
        send_json(res, 200, counts_json(counts));
    }));
    server.Post("/ingest/forecasts", guarded([this](const auto& req, auto& res) {
        auto records = parse_forecasts_json(req.body);
        auto counts = write([&](Graph& g) { return ingest_forecasts(g, schema_, records); });
        send_json(res, 200, counts_json(counts));
    }));
    server.Post("/ingest/relevance", guarded([this](const auto& req, auto& res) {
        auto records = parse_relevance_jsonl(req.body);
        auto counts = write([&](Graph& g) { return ingest_relevance(g, schema_, records); });
        send_json(res, 200, counts_json(counts));
    }));

    server.Post("/pipeline/explanations", guarded([this](const auto& req, auto& res) {
        auto body = parse_body(req, true);
        auto k = optional_field<std::int64_t>(body, "k", config_.default_k);
        auto created = write([&](Graph& g) { return explain_all(g, schema_, k); });
        send_json(res, 200, {{"created", created}});
    }));
    server.Post("/pipeline/options", guarded([this](const auto& req, auto& res) {
        auto body = parse_body(req, true);
        RulesConfig rules = config_.rules;
        if (auto it = body.find("config"); it != body.end() && !it->is_null()) rules = load_rules(it->dump());
        auto created = write([&](Graph& g) { return suggest_all(g, schema_, rules); });
        send_json(res, 200, {{"created", created}});
    }));
    server.Post("/pipeline/synth-feedback", guarded([this](const auto& req, auto& res) {
        auto body = parse_body(req, true);
        SynthConfig defaults;
        SynthConfig cfg{optional_field<std::uint64_t>(body, "seed", defaults.seed),
                        optional_field<double>(body, "coverage_forecast", defaults.coverage_forecast),
                        optional_field<double>(body, "coverage_option", defaults.coverage_option),
                        optional_field<double>(body, "coverage_relevance", defaults.coverage_relevance),
                        optional_field<double>(body, "coverage_explanation", defaults.coverage_explanation),
                        optional_field<std::string>(body, "annotator", defaults.annotator)};
        auto created = write([&](Graph& g) { return synthesize_feedback(g, schema_, cfg); });
        send_json(res, 200, {{"created", created}});
    }));

    server.Post("/feedback", guarded([this](const auto& req, auto& res) {
        auto body = parse_body(req, false);
        auto user = required_text(body, "user");
        auto target = node_ref(required_text(body, "target_id"));
        auto rating = required_integer(body, "rating");
        auto comment = optional_field<std::string>(body, "comment", "");
        auto date = created_at_field(body);
        auto id = write([&](Graph& g) { return record_feedback(g, schema_, user, target, rating, comment, date); });
        send_json(res, 201, {{"feedback_id", id.str()}});
    }));
    server.Post("/actions", guarded([this](const auto& req, auto& res) {
        auto body = parse_body(req, false);
        auto user = required_text(body, "user");
        auto option = node_ref(required_text(body, "option_id"));
        auto kind = required_text(body, "kind");
        auto date = created_at_field(body);
        auto id = write([&](Graph& g) { return record_action(g, schema_, user, option, kind, date); });
        send_json(res, 201, {{"action_id", id.str()}});
    }));

    server.Get("/forecasts", guarded([this](const auto& req, auto& res) {
        ForecastFilter filter;
        filter.material = query_param(req, "material");
        filter.client = query_param(req, "client");
        if (filter.material && filter.material->empty()) filter.material.reset();
        if (filter.client && filter.client->empty()) filter.client.reset();
        filter.from = query_date(req, "from");
        filter.to = query_date(req, "to");
        filter.offset = query_unsigned(req, "offset", 0);
        if (req.has_param("limit")) filter.limit = query_unsigned(req, "limit", 0);
        auto rows = read([&](const Graph& g) { return list_forecasts(g, filter); });
        json out = json::array();
        for (const auto& row : rows) out.push_back(to_json(row));
        send_json(res, 200, out);
    }));
    server.Get(R"(/forecasts/([^/]+))", guarded([this](const auto& req, auto& res) {
        NodeId id = node_ref(req.matches[1].str());
        auto detail = read([&](const Graph& g) { return forecast_detail(g, id); });
        send_json(res, 200, to_json(detail));
    }));

    server.Get("/metrics", guarded([this](const auto& req, auto& res) {
        auto sample = query_param(req, "sample");
        GraphMetrics metrics;
        if (sample && !sample->empty()) {
            double fraction = query_fraction(*sample);
            auto seed = query_unsigned(req, "seed", 0);
            metrics = read([&](const Graph& g) { return sampled_metrics(g, fraction, seed); });
        } else {
            metrics = read([](const Graph& g) { return exact_metrics(g); });
        }
        send_json(res, 200, to_json(metrics));
    }));

    server.Get("/graph/export", guarded([this](const auto&, auto& res) {
        res.status = 200;
        res.set_content(export_snapshot(), "application/x-ndjson");
    }));
    server.Get("/schema", guarded([this](const auto&, auto& res) {
        res.status = 200;
        res.set_content(dump_schema(schema_), "application/json");
    }));
}

void serve(Service& service, const std::string& host, int port) {
    httplib::Server server;
    service.mount(server);
    if (!server.bind_to_port(host, port)) {
        throw Error(ErrorCode::invalid_argument, "cannot bind " + host + ":" + std::to_string(port));
    }
    server.listen_after_bind();
}

}  // namespace xaikg
