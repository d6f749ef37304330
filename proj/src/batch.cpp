#include <xaikg/batch.hpp>

#include <xaikg/error.hpp>

namespace xaikg {

WriteBatch::WriteBatch(const Graph& graph, const SchemaSpec& schema)
    : graph_(graph), schema_(schema), first_node_(graph.next_node_id()), first_edge_(graph.next_edge_id()) {}

NodeId WriteBatch::add_node(std::string kind, PropertyMap props) {
    if (kind.empty()) throw Error(ErrorCode::invalid_argument, "node kind must not be empty");
    require_finite(props);
    auto found = validate_node(schema_, kind, props);
    violations_.insert(violations_.end(), found.begin(), found.end());
    NodeId id{first_node_.seq + nodes_.size()};
    nodes_.push_back(Node{id, std::move(kind), std::move(props)});
    return id;
}

EdgeId WriteBatch::add_edge(std::string kind, NodeId src, NodeId dst, PropertyMap props) {
    if (kind.empty()) throw Error(ErrorCode::invalid_argument, "edge kind must not be empty");
    require_finite(props);
    auto found = validate_edge(schema_, kind, kind_of(src), kind_of(dst), props);
    violations_.insert(violations_.end(), found.begin(), found.end());
    EdgeId id{first_edge_.seq + edges_.size()};
    edges_.push_back(Edge{id, std::move(kind), src, dst, std::move(props)});
    return id;
}

std::string_view WriteBatch::kind_of(NodeId id) const {
    if (graph_.contains(id)) return graph_.node(id).kind;
    if (is_staged(id) && id.seq - first_node_.seq < nodes_.size()) return nodes_[id.seq - first_node_.seq].kind;
    throw Error(ErrorCode::unknown_id, "unknown node " + id.str());
}

const PropertyMap& WriteBatch::props_of(NodeId id) const {
    if (graph_.contains(id)) return graph_.node(id).props;
    if (is_staged(id) && id.seq - first_node_.seq < nodes_.size()) return nodes_[id.seq - first_node_.seq].props;
    throw Error(ErrorCode::unknown_id, "unknown node " + id.str());
}

WriteCounts WriteBatch::commit(Graph& graph) {
    if (&graph != &graph_ || graph.next_node_id() != first_node_ || graph.next_edge_id() != first_edge_) {
        throw Error(ErrorCode::conflict, "graph changed while a write batch was staged");
    }
    if (!violations_.empty()) throw Error(ErrorCode::schema_violation, describe(violations_));
    for (auto& n : nodes_) graph.add_node(std::move(n.kind), std::move(n.props));
    for (auto& e : edges_) graph.add_edge(std::move(e.kind), e.src, e.dst, std::move(e.props));
    WriteCounts counts{nodes_.size(), edges_.size()};
    nodes_.clear();
    edges_.clear();
    return counts;
}

}  // namespace xaikg
