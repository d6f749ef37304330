#include <xaikg/graph.hpp>

#include <xaikg/error.hpp>

#include <algorithm>
#include <fstream>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace xaikg {

namespace {

std::string props_json(const PropertyMap& props) {
    std::string out = "{";
    bool first = true;
    for (const auto& [key, value] : props) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        out += to_json_text(value);
    }
    out += '}';
    return out;
}

}  // namespace

NodeId Graph::add_node(std::string kind, PropertyMap props) {
    if (kind.empty()) throw Error(ErrorCode::invalid_argument, "node kind must not be empty");
    require_finite(props);
    NodeId id = next_node_id();
    by_kind_[kind].push_back(id);
    nodes_.push_back(Node{id, std::move(kind), std::move(props)});
    out_.emplace_back();
    in_.emplace_back();
    return id;
}

EdgeId Graph::add_edge(std::string kind, NodeId src, NodeId dst, PropertyMap props) {
    if (kind.empty()) throw Error(ErrorCode::invalid_argument, "edge kind must not be empty");
    if (!contains(src)) throw Error(ErrorCode::unknown_id, "unknown edge endpoint " + src.str());
    if (!contains(dst)) throw Error(ErrorCode::unknown_id, "unknown edge endpoint " + dst.str());
    require_finite(props);
    EdgeId id = next_edge_id();
    edges_.push_back(Edge{id, std::move(kind), src, dst, std::move(props)});
    out_[src.seq - 1].push_back(id);
    in_[dst.seq - 1].push_back(id);
    return id;
}

const Node& Graph::node(NodeId id) const {
    if (!contains(id)) throw Error(ErrorCode::unknown_id, "unknown node " + id.str());
    return nodes_[id.seq - 1];
}

const Edge& Graph::edge(EdgeId id) const {
    if (id.seq < 1 || id.seq > edges_.size()) throw Error(ErrorCode::unknown_id, "unknown edge " + id.str());
    return edges_[id.seq - 1];
}

std::span<const EdgeId> Graph::outgoing(NodeId id) const {
    if (!contains(id)) throw Error(ErrorCode::unknown_id, "unknown node " + id.str());
    return out_[id.seq - 1];
}

std::span<const EdgeId> Graph::incoming(NodeId id) const {
    if (!contains(id)) throw Error(ErrorCode::unknown_id, "unknown node " + id.str());
    return in_[id.seq - 1];
}

std::vector<NodeId> Graph::neighbors_undirected(NodeId id) const {
    std::vector<NodeId> result;
    for (EdgeId e : outgoing(id)) result.push_back(edges_[e.seq - 1].dst);
    for (EdgeId e : incoming(id)) result.push_back(edges_[e.seq - 1].src);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

std::span<const NodeId> Graph::nodes_of_kind(std::string_view kind) const {
    auto it = by_kind_.find(std::string(kind));
    if (it == by_kind_.end()) return {};
    return it->second;
}

std::vector<NodeId> Graph::targets(NodeId id, std::string_view edge_kind) const {
    std::vector<NodeId> result;
    for (EdgeId e : outgoing(id)) {
        const Edge& edge = edges_[e.seq - 1];
        if (edge.kind == edge_kind) result.push_back(edge.dst);
    }
    return result;
}

std::vector<NodeId> Graph::sources(NodeId id, std::string_view edge_kind) const {
    std::vector<NodeId> result;
    for (EdgeId e : incoming(id)) {
        const Edge& edge = edges_[e.seq - 1];
        if (edge.kind == edge_kind) result.push_back(edge.src);
    }
    return result;
}

std::optional<NodeId> Graph::find_by_text(std::string_view kind, std::string_view key, std::string_view value) const {
    for (NodeId id : nodes_of_kind(kind)) {
        auto text = get_text(nodes_[id.seq - 1].props, key);
        if (text && *text == value) return id;
    }
    return std::nullopt;
}

std::size_t export_jsonl(const Graph& graph, std::ostream& sink) {
    std::size_t lines = 0;
    for (const Node& n : graph.nodes()) {
        sink << R"({"t":"node","id":")" << n.id.str() << R"(","kind":)" << nlohmann::json(n.kind).dump()
             << R"(,"props":)" << props_json(n.props) << "}\n";
        ++lines;
    }
    for (const Edge& e : graph.edges()) {
        sink << R"({"t":"edge","id":")" << e.id.str() << R"(","kind":)" << nlohmann::json(e.kind).dump()
             << R"(,"src":")" << e.src.str() << R"(","dst":")" << e.dst.str() << R"(","props":)"
             << props_json(e.props) << "}\n";
        ++lines;
    }
    return lines;
}

std::string export_jsonl(const Graph& graph) {
    std::ostringstream out;
    export_jsonl(graph, out);
    return out.str();
}

namespace {

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw Error(ErrorCode::parse_error, "snapshot line " + std::to_string(line_no) + ": " + what);
}

PropertyMap read_props(const nlohmann::json& obj, std::size_t line_no) {
    auto it = obj.find("props");
    if (it == obj.end() || !it->is_object()) fail_line(line_no, "missing props object");
    PropertyMap props;
    for (const auto& [key, value] : it->items()) {
        try {
            props.emplace(key, property_from_json(value));
        } catch (const Error& e) {
            fail_line(line_no, e.what());
        }
    }
    return props;
}

std::string read_string(const nlohmann::json& obj, const char* key, std::size_t line_no) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) fail_line(line_no, std::string("missing string field '") + key + "'");
    return it->get<std::string>();
}

}  // namespace

Graph import_jsonl(std::istream& source) {
    Graph graph;
    std::string line;
    std::size_t line_no = 0;
    bool seen_edge = false;
    while (std::getline(source, line)) {
        ++line_no;
        if (line.empty()) fail_line(line_no, "empty line");
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail_line(line_no, e.what());
        }
        if (!obj.is_object()) fail_line(line_no, "not a JSON object");
        const std::string type = read_string(obj, "t", line_no);
        const std::string kind = read_string(obj, "kind", line_no);
        if (kind.empty()) fail_line(line_no, "empty kind");
        const std::string id_text = read_string(obj, "id", line_no);
        if (type == "node") {
            if (seen_edge) fail_line(line_no, "node line after edge lines");
            auto id = NodeId::parse(id_text);
            if (!id || *id != graph.next_node_id()) {
                fail_line(line_no, "expected node id " + graph.next_node_id().str() + ", got '" + id_text + "'");
            }
            graph.add_node(kind, read_props(obj, line_no));
        } else if (type == "edge") {
            seen_edge = true;
            auto id = EdgeId::parse(id_text);
            if (!id || *id != graph.next_edge_id()) {
                fail_line(line_no, "expected edge id " + graph.next_edge_id().str() + ", got '" + id_text + "'");
            }
            auto src = NodeId::parse(read_string(obj, "src", line_no));
            auto dst = NodeId::parse(read_string(obj, "dst", line_no));
            if (!src || !dst) fail_line(line_no, "malformed endpoint id");
            if (!graph.contains(*src)) fail_line(line_no, "edge references " + src->str() + " before it is defined");
            if (!graph.contains(*dst)) fail_line(line_no, "edge references " + dst->str() + " before it is defined");
            graph.add_edge(kind, *src, *dst, read_props(obj, line_no));
        } else {
            fail_line(line_no, "unknown record type '" + type + "'");
        }
    }
    return graph;
}

Graph import_jsonl(std::string_view text) {
    std::istringstream in{std::string(text)};
    return import_jsonl(in);
}

Graph load_snapshot(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return Graph{};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse_error, "cannot read snapshot " + path.string());
    return import_jsonl(in);
}

void save_snapshot(const Graph& graph, const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::invalid_argument, "cannot write snapshot " + tmp.string());
        export_jsonl(graph, out);
        out.flush();
        if (!out) throw Error(ErrorCode::invalid_argument, "failed writing snapshot " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace xaikg
