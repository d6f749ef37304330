#include <xaikg/schema.hpp>

#include <xaikg/error.hpp>

#include <algorithm>
#include <set>
#include <tuple>

namespace xaikg {

SchemaSpec::SchemaSpec(std::vector<NodeKindSpec> node_kinds, std::vector<EdgeKindSpec> edge_kinds)
    : node_kinds_(std::move(node_kinds)), edge_kinds_(std::move(edge_kinds)) {
    std::set<std::string_view> names;
    for (const auto& nk : node_kinds_) {
        if (nk.name.empty()) throw Error(ErrorCode::schema_violation, "node kind with empty name");
        if (!names.insert(nk.name).second) {
            throw Error(ErrorCode::schema_violation, "duplicate node kind '" + nk.name + "'");
        }
    }
    std::set<std::string_view> edge_names;
    for (const auto& ek : edge_kinds_) {
        if (ek.name.empty()) throw Error(ErrorCode::schema_violation, "edge kind with empty name");
        if (!edge_names.insert(ek.name).second) {
            throw Error(ErrorCode::schema_violation, "duplicate edge kind '" + ek.name + "'");
        }
        for (const auto& [src, dst] : ek.endpoints) {
            for (const std::string& end : {src, dst}) {
                if (!names.contains(end)) {
                    throw Error(ErrorCode::schema_violation,
                                "edge kind '" + ek.name + "' references undeclared node kind '" + end + "'");
                }
            }
        }
    }
}

const NodeKindSpec* SchemaSpec::find_node_kind(std::string_view name) const noexcept {
    auto it = std::find_if(node_kinds_.begin(), node_kinds_.end(), [&](const auto& k) { return k.name == name; });
    return it == node_kinds_.end() ? nullptr : &*it;
}

const EdgeKindSpec* SchemaSpec::find_edge_kind(std::string_view name) const noexcept {
    auto it = std::find_if(edge_kinds_.begin(), edge_kinds_.end(), [&](const auto& k) { return k.name == name; });
    return it == edge_kinds_.end() ? nullptr : &*it;
}

SchemaSpec builtin_xaikg_schema() {
    using VT = ValueType;
    std::vector<NodeKindSpec> nodes{
        {"UseCase", {{"name", VT::text}}, "IOF business process context a model serves"},
        {"AIModel", {{"name", VT::text}}, "BFO generically dependent continuant; the forecasting model"},
        {"Material", {{"code", VT::text}}, "IOF material product"},
        {"Client", {{"code", VT::text}}, "IOF organization (customer)"},
        {"Shipment", {{"date", VT::date}, {"quantity", VT::decimal}}, "BFO process; one daily shipment record"},
        {"Forecast",
         {{"created_at", VT::date}, {"quantity", VT::decimal}, {"target_date", VT::date}},
         "BFO information content entity; predicted demand"},
        {"Feature", {{"name", VT::text}}, "model input variable"},
        {"FeatureRelevance",
         {{"rank", VT::integer}, {"weight", VT::decimal}},
         "reified relation between a forecast and one feature"},
        {"ForecastExplanation", {{"k", VT::integer}, {"text", VT::text}}, "summary of the top-k feature relevances"},
        {"DecisionOption",
         {{"action", VT::text}, {"deviation", VT::decimal}, {"rank", VT::integer}},
         "heuristic decision-making option derived from a forecast"},
        {"Feedback",
         {{"comment", VT::text}, {"created_at", VT::date}, {"rating", VT::integer}},
         "immutable user judgement"},
        {"User", {{"name", VT::text}}, "IOF person"},
        {"Action", {{"created_at", VT::date}, {"kind", VT::text}}, "decision actually taken by a user"},
    };
    std::vector<EdgeKindSpec> edges{
        {"SERVES", {{"AIModel", "UseCase"}}, {}, ""},
        {"PRODUCED", {{"AIModel", "Forecast"}}, {}, ""},
        {"FOR_MATERIAL", {{"Forecast", "Material"}, {"Shipment", "Material"}}, {}, ""},
        {"FOR_CLIENT", {{"Forecast", "Client"}, {"Shipment", "Client"}}, {}, ""},
        {"HAS_RELEVANCE", {{"Forecast", "FeatureRelevance"}}, {}, ""},
        {"OF_FEATURE", {{"FeatureRelevance", "Feature"}}, {}, ""},
        {"EXPLAINED_BY", {{"Forecast", "ForecastExplanation"}}, {}, ""},
        {"BASED_ON", {{"ForecastExplanation", "FeatureRelevance"}}, {}, ""},
        {"SUGGESTS", {{"Forecast", "DecisionOption"}}, {}, ""},
        {"ABOUT",
         {{"Feedback", "Forecast"},
          {"Feedback", "ForecastExplanation"},
          {"Feedback", "DecisionOption"},
          {"Feedback", "FeatureRelevance"}},
         {},
         "feedback target"},
        {"GAVE", {{"User", "Feedback"}}, {}, ""},
        {"TOOK", {{"User", "Action"}}, {}, ""},
        {"SELECTED", {{"Action", "DecisionOption"}}, {}, ""},
    };
    return SchemaSpec(std::move(nodes), std::move(edges));
}

namespace {

void check_props(std::string_view kind, const RequiredProps& required, const PropertyMap& props,
                 std::vector<Violation>& out) {
    for (const auto& [name, type] : required) {
        auto it = props.find(name);
        if (it == props.end()) {
            out.push_back({std::string(kind), name, "missing required property '" + name + "'"});
        } else if (type_of(it->second) != type) {
            out.push_back({std::string(kind), name,
                           "property '" + name + "' must be " + std::string(to_string(type)) + ", got " +
                               std::string(to_string(type_of(it->second)))});
        }
    }
}

void sort_violations(std::vector<Violation>& v) {
    std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.property, a.kind, a.message) < std::tie(b.property, b.kind, b.message);
    });
}

}  // namespace

std::vector<Violation> validate_node(const SchemaSpec& schema, std::string_view kind, const PropertyMap& props) {
    std::vector<Violation> out;
    const NodeKindSpec* spec = schema.find_node_kind(kind);
    if (!spec) {
        out.push_back({std::string(kind), "", "unknown node kind '" + std::string(kind) + "'"});
        return out;
    }
    check_props(kind, spec->required_props, props, out);
    sort_violations(out);
    return out;
}

std::vector<Violation> validate_edge(const SchemaSpec& schema, std::string_view kind, std::string_view src_kind,
                                     std::string_view dst_kind, const PropertyMap& props) {
    std::vector<Violation> out;
    const EdgeKindSpec* spec = schema.find_edge_kind(kind);
    if (!spec) {
        out.push_back({std::string(kind), "", "unknown edge kind '" + std::string(kind) + "'"});
        return out;
    }
    bool allowed = std::any_of(spec->endpoints.begin(), spec->endpoints.end(),
                               [&](const auto& p) { return p.first == src_kind && p.second == dst_kind; });
    if (!allowed) {
        out.push_back({std::string(kind), "",
                       "endpoint pair (" + std::string(src_kind) + " -> " + std::string(dst_kind) +
                           ") not allowed for " + std::string(kind)});
    }
    check_props(kind, spec->required_props, props, out);
    sort_violations(out);
    return out;
}

std::string describe(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.kind + ": " + v.message;
    }
    return out;
}

namespace {

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::parse_error, "schema descriptor at " + where + ": " + what);
}

const nlohmann::json& member(const nlohmann::json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail_at(where, std::string("missing '") + key + "'");
    return *it;
}

RequiredProps read_required(const nlohmann::json& obj, const std::string& where) {
    RequiredProps out;
    auto it = obj.find("required_props");
    if (it == obj.end()) return out;
    if (!it->is_object()) fail_at(where + "/required_props", "expected object");
    for (const auto& [name, type] : it->items()) {
        if (!type.is_string()) fail_at(where + "/required_props/" + name, "expected type name");
        auto vt = parse_value_type(type.get<std::string>());
        if (!vt) fail_at(where + "/required_props/" + name, "unknown type '" + type.get<std::string>() + "'");
        out.emplace(name, *vt);
    }
    return out;
}

std::string read_doc(const nlohmann::json& obj, const std::string& where) {
    auto it = obj.find("doc");
    if (it == obj.end()) return {};
    if (!it->is_string()) fail_at(where + "/doc", "expected string");
    return it->get<std::string>();
}

std::string read_name(const nlohmann::json& obj, const std::string& where) {
    const auto& name = member(obj, "name", where);
    if (!name.is_string()) fail_at(where + "/name", "expected string");
    return name.get<std::string>();
}

nlohmann::ordered_json required_json(const RequiredProps& props) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [name, type] : props) out[name] = std::string(to_string(type));
    return out;
}

}  // namespace

SchemaSpec load_schema(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse_error, std::string("schema descriptor: ") + e.what());
    }
    if (!doc.is_object()) fail_at("/", "expected object");

    std::vector<NodeKindSpec> nodes;
    if (auto it = doc.find("node_kinds"); it != doc.end()) {
        if (!it->is_array()) fail_at("/node_kinds", "expected array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string where = "/node_kinds/" + std::to_string(i);
            const auto& obj = (*it)[i];
            if (!obj.is_object()) fail_at(where, "expected object");
            nodes.push_back({read_name(obj, where), read_required(obj, where), read_doc(obj, where)});
        }
    }
    std::vector<EdgeKindSpec> edges;
    if (auto it = doc.find("edge_kinds"); it != doc.end()) {
        if (!it->is_array()) fail_at("/edge_kinds", "expected array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string where = "/edge_kinds/" + std::to_string(i);
            const auto& obj = (*it)[i];
            if (!obj.is_object()) fail_at(where, "expected object");
            EdgeKindSpec ek{read_name(obj, where), {}, read_required(obj, where), read_doc(obj, where)};
            const auto& ends = member(obj, "endpoints", where);
            if (!ends.is_array()) fail_at(where + "/endpoints", "expected array");
            for (std::size_t j = 0; j < ends.size(); ++j) {
                const auto& pair = ends[j];
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
                    fail_at(where + "/endpoints/" + std::to_string(j), "expected [src, dst] pair of kind names");
                }
                ek.endpoints.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
            }
            edges.push_back(std::move(ek));
        }
    }
    return SchemaSpec(std::move(nodes), std::move(edges));
}

std::string dump_schema(const SchemaSpec& schema) {
    nlohmann::ordered_json doc;
    doc["node_kinds"] = nlohmann::ordered_json::array();
    for (const auto& nk : schema.node_kinds()) {
        nlohmann::ordered_json obj;
        obj["name"] = nk.name;
        if (!nk.doc.empty()) obj["doc"] = nk.doc;
        obj["required_props"] = required_json(nk.required_props);
        doc["node_kinds"].push_back(std::move(obj));
    }
    doc["edge_kinds"] = nlohmann::ordered_json::array();
    for (const auto& ek : schema.edge_kinds()) {
        nlohmann::ordered_json obj;
        obj["name"] = ek.name;
        if (!ek.doc.empty()) obj["doc"] = ek.doc;
        obj["endpoints"] = nlohmann::ordered_json::array();
        for (const auto& [src, dst] : ek.endpoints) obj["endpoints"].push_back({src, dst});
        obj["required_props"] = required_json(ek.required_props);
        doc["edge_kinds"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

}  // namespace xaikg
