#pragma once

#include <xaikg/decision.hpp>
#include <xaikg/error.hpp>
#include <xaikg/graph.hpp>
#include <xaikg/schema.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace httplib {
class Server;
}

namespace xaikg {

struct ServiceConfig {
    std::int64_t default_k = 3;
    RulesConfig rules = default_rules();
    /// When set, the graph is written back to this snapshot after every successful write.
    std::optional<std::filesystem::path> snapshot_path;
};

/// HTTP status for an error category: 400 parse, 404 unknown id, 409 conflict, 422 otherwise.
int http_status(ErrorCode code) noexcept;

/// JSON-over-HTTP front end for one graph. Requests are handled concurrently; writes hold the
/// exclusive side of a reader-writer lock and reads the shared side, so a GET started after a
/// POST's response sees that POST.
class Service {
public:
    Service(Graph graph, SchemaSpec schema, ServiceConfig config = {});

    /// Registers every endpoint on `server`.
    void mount(httplib::Server& server);

    std::string export_snapshot() const;

private:
    template <typename F>
    auto read(F&& f) const {
        std::shared_lock lock(mutex_);
        return f(graph_);
    }

    template <typename F>
    auto write(F&& f) {
        std::unique_lock lock(mutex_);
        auto result = f(graph_);
        if (config_.snapshot_path) save_snapshot(graph_, *config_.snapshot_path);
        return result;
    }

    mutable std::shared_mutex mutex_;
    Graph graph_;
    const SchemaSpec schema_;
    const ServiceConfig config_;
};

/// Binds host:port and serves until the process is stopped. Throws Error{invalid_argument} when
/// the port cannot be bound.
void serve(Service& service, const std::string& host, int port);

}  // namespace xaikg
