#pragma once

#include <xaikg/value.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xaikg {

namespace detail {

template <char Prefix, typename Tag>
struct SequenceId {
    std::uint64_t seq = 0;

    std::string str() const { return Prefix + std::to_string(seq); }

    /// Accepts only the canonical form: prefix followed by a decimal number >= 1 without leading zeros.
    static std::optional<SequenceId> parse(std::string_view text) {
        if (text.size() < 2 || text.front() != Prefix || text[1] == '0' || text.size() > 20) return std::nullopt;
        std::uint64_t value = 0;
        for (char c : text.substr(1)) {
            if (c < '0' || c > '9') return std::nullopt;
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return SequenceId{value};
    }

    friend auto operator<=>(const SequenceId&, const SequenceId&) = default;
};

}  // namespace detail

using NodeId = detail::SequenceId<'n', struct NodeTag>;
using EdgeId = detail::SequenceId<'e', struct EdgeTag>;

struct Node {
    NodeId id;
    std::string kind;
    PropertyMap props;
};

struct Edge {
    EdgeId id;
    std::string kind;
    NodeId src;
    NodeId dst;
    PropertyMap props;
};

/// Append-only typed property graph. Identifiers are assigned in creation order ("n1", "n2", ...
/// and "e1", "e2", ...) and never reused. Nothing is ever updated or removed.
///
/// Not internally synchronized: writes must be serialized by the caller, reads may run
/// concurrently with each other.
class Graph {
public:
    NodeId add_node(std::string kind, PropertyMap props = {});

    /// Throws Error{unknown_id} naming the missing endpoint. Parallel edges and self-loops are allowed.
    EdgeId add_edge(std::string kind, NodeId src, NodeId dst, PropertyMap props = {});

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    NodeId next_node_id() const noexcept { return NodeId{nodes_.size() + 1}; }
    EdgeId next_edge_id() const noexcept { return EdgeId{edges_.size() + 1}; }

    bool contains(NodeId id) const noexcept { return id.seq >= 1 && id.seq <= nodes_.size(); }
    const Node* find_node(NodeId id) const noexcept { return contains(id) ? &nodes_[id.seq - 1] : nullptr; }
    const Node& node(NodeId id) const;
    const Edge& edge(EdgeId id) const;

    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const EdgeId> outgoing(NodeId id) const;
    std::span<const EdgeId> incoming(NodeId id) const;

    /// Sorted, deduplicated set of nodes joined to `id` by an edge in either direction.
    /// Contains `id` itself only when a self-loop exists.
    std::vector<NodeId> neighbors_undirected(NodeId id) const;

    /// Nodes of one kind in ascending id order.
    std::span<const NodeId> nodes_of_kind(std::string_view kind) const;

    /// Destinations of outgoing edges of `edge_kind`, in edge order.
    std::vector<NodeId> targets(NodeId id, std::string_view edge_kind) const;
    /// Sources of incoming edges of `edge_kind`, in edge order.
    std::vector<NodeId> sources(NodeId id, std::string_view edge_kind) const;

    /// First node of `kind` whose text property `key` equals `value`.
    std::optional<NodeId> find_by_text(std::string_view kind, std::string_view key, std::string_view value) const;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    std::unordered_map<std::string, std::vector<NodeId>> by_kind_;
};

/// Writes every node in id order, then every edge in id order, one JSON object per line.
/// Returns the number of lines written.
std::size_t export_jsonl(const Graph& graph, std::ostream& sink);
std::string export_jsonl(const Graph& graph);

/// Rebuilds a graph from a snapshot. Throws Error{parse_error} naming the offending line for
/// malformed lines, out-of-sequence ids, and edges that precede one of their endpoints.
Graph import_jsonl(std::istream& source);
Graph import_jsonl(std::string_view text);

/// Reads a snapshot file; a missing file is an empty graph.
Graph load_snapshot(const std::filesystem::path& path);
/// Writes a snapshot next to `path` and renames it into place.
void save_snapshot(const Graph& graph, const std::filesystem::path& path);

}  // namespace xaikg
