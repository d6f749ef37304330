#pragma once

#include <xaikg/value.hpp>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xaikg {

using RequiredProps = std::map<std::string, ValueType, std::less<>>;

struct NodeKindSpec {
    std::string name;
    RequiredProps required_props;
    std::string doc;  // free-form note (upper-ontology alignment); not enforced

    friend bool operator==(const NodeKindSpec&, const NodeKindSpec&) = default;
};

struct EdgeKindSpec {
    std::string name;
    std::vector<std::pair<std::string, std::string>> endpoints;  // allowed (src kind, dst kind)
    RequiredProps required_props;
    std::string doc;

    friend bool operator==(const EdgeKindSpec&, const EdgeKindSpec&) = default;
};

/// A closed-world kind system. Construction checks that names are unique and that every
/// endpoint kind is a declared node kind; immutable afterwards.
class SchemaSpec {
public:
    SchemaSpec() = default;
    SchemaSpec(std::vector<NodeKindSpec> node_kinds, std::vector<EdgeKindSpec> edge_kinds);

    const std::vector<NodeKindSpec>& node_kinds() const noexcept { return node_kinds_; }
    const std::vector<EdgeKindSpec>& edge_kinds() const noexcept { return edge_kinds_; }

    const NodeKindSpec* find_node_kind(std::string_view name) const noexcept;
    const EdgeKindSpec* find_edge_kind(std::string_view name) const noexcept;

    friend bool operator==(const SchemaSpec&, const SchemaSpec&) = default;

private:
    std::vector<NodeKindSpec> node_kinds_;
    std::vector<EdgeKindSpec> edge_kinds_;
};

struct Violation {
    std::string kind;
    std::string property;  // empty for kind- or endpoint-level violations
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// The knowledge-graph ontology for forecasts, explanations, decision options and feedback:
/// 13 node kinds and 13 edge kinds.
SchemaSpec builtin_xaikg_schema();

// Both validators return violations sorted by property name, then kind name. Extra
// properties are accepted.
std::vector<Violation> validate_node(const SchemaSpec& schema, std::string_view kind, const PropertyMap& props);
std::vector<Violation> validate_edge(const SchemaSpec& schema, std::string_view kind, std::string_view src_kind,
                                     std::string_view dst_kind, const PropertyMap& props);

/// Joins violations into one human-readable line.
std::string describe(const std::vector<Violation>& violations);

/// Parses a JSON schema descriptor. Throws Error{parse_error} on malformed input (with a
/// JSON-pointer style location) and Error{schema_violation} on dangling endpoint kinds.
SchemaSpec load_schema(std::string_view text);
std::string dump_schema(const SchemaSpec& schema);

}  // namespace xaikg
