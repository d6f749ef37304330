#pragma once

#include <xaikg/graph.hpp>
#include <xaikg/schema.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace xaikg {

struct WriteCounts {
    std::size_t nodes_added = 0;
    std::size_t edges_added = 0;

    friend bool operator==(const WriteCounts&, const WriteCounts&) = default;
};

/// Stages schema-checked additions against a graph and applies them all at once.
///
/// Staged nodes receive the ids they will have after commit, so later staged edges can refer
/// to them. Every staged entity is validated against the schema as it is staged; commit()
/// throws Error{schema_violation} and writes nothing if any violation was collected.
/// The graph must not be written between construction and commit.
class WriteBatch {
public:
    WriteBatch(const Graph& graph, const SchemaSpec& schema);

    NodeId add_node(std::string kind, PropertyMap props = {});
    /// Throws Error{unknown_id} when an endpoint is neither in the graph nor staged.
    EdgeId add_edge(std::string kind, NodeId src, NodeId dst, PropertyMap props = {});

    /// Kind of an existing or staged node; throws Error{unknown_id} otherwise.
    std::string_view kind_of(NodeId id) const;
    const PropertyMap& props_of(NodeId id) const;
    bool is_staged(NodeId id) const noexcept { return id.seq >= first_node_.seq; }

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    std::size_t staged_nodes() const noexcept { return nodes_.size(); }
    std::size_t staged_edges() const noexcept { return edges_.size(); }

    WriteCounts commit(Graph& graph);

private:
    const Graph& graph_;
    const SchemaSpec& schema_;
    NodeId first_node_;
    EdgeId first_edge_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<Violation> violations_;
};

}  // namespace xaikg
