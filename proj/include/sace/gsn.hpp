#pragma once

// GSN argument-graph model: node kinds, SupportedBy/InContextOf links,
// pattern extensions (multiplicity, optionality, choice), assurance claim
// points as edge annotations, structural well-formedness checking, DOT
// export and the interchange format.

#include "sace/core.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sace::gsn {

enum class NodeKind { Goal, Strategy, Solution, Context, Justification, Assumption };

inline std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Goal: return "Goal";
        case NodeKind::Strategy: return "Strategy";
        case NodeKind::Solution: return "Solution";
        case NodeKind::Context: return "Context";
        case NodeKind::Justification: return "Justification";
        case NodeKind::Assumption: return "Assumption";
    }
    return "Goal";
}

inline NodeKind parse_node_kind(const std::string& text) {
    if (text == "Goal") return NodeKind::Goal;
    if (text == "Strategy") return NodeKind::Strategy;
    if (text == "Solution") return NodeKind::Solution;
    if (text == "Context") return NodeKind::Context;
    if (text == "Justification") return NodeKind::Justification;
    if (text == "Assumption") return NodeKind::Assumption;
    fail("UnknownNodeKind", "no GSN node kind '" + text + "'");
}

enum class EdgeKind { SupportedBy, InContextOf };

struct GsnNode {
    std::string id;
    NodeKind kind = NodeKind::Goal;
    std::string statement;
    bool undeveloped = false;
    bool uninstantiated = false;
    bool optional = false;
    /// Evidence citation: artifact id text ("M", "TT", ...) for Solution and
    /// artifact-referencing Context nodes; empty otherwise.
    std::string artifact;
    /// Checksum of the cited artifact attached during instantiation.
    std::string artifact_checksum;
    /// True when the statement is a prose reconstruction rather than a
    /// figure-exact text.
    bool reconstructed = false;
};

struct GsnEdge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::SupportedBy;
    std::string acp;  // assurance claim point label, empty if none
    bool acp_satisfied = false;
};

/// One multiplied link: the target subtree is cloned once per element of the
/// named collection role.
struct Multiplicity {
    std::string from;
    std::string to;
    std::string role;
    bool mandatory = true;  // zero elements is an error when set
};

struct Choice {
    std::string parent;
    std::vector<std::string> options;
    int min = 1;
    int max = 1;
};

enum class RoleType { Text, Int, Collection, Map, Artifact };

inline std::string to_string(RoleType type) {
    switch (type) {
        case RoleType::Text: return "text";
        case RoleType::Int: return "int";
        case RoleType::Collection: return "collection";
        case RoleType::Map: return "map";
        case RoleType::Artifact: return "artifact";
    }
    return "text";
}

struct Role {
    std::string name;
    RoleType type = RoleType::Text;
};

struct Violation {
    std::string code;   // GSN001..GSN006
    std::string locus;  // node id or "from->to"
    std::string message;
};

struct GsnGraph {
    std::vector<GsnNode> nodes;
    std::vector<GsnEdge> edges;
    std::string root;

    const GsnNode* find(const std::string& id) const {
        for (const auto& node : nodes) {
            if (node.id == id) return &node;
        }
        return nullptr;
    }

    GsnNode* find(const std::string& id) {
        for (auto& node : nodes) {
            if (node.id == id) return &node;
        }
        return nullptr;
    }

    std::vector<const GsnEdge*> edges_from(const std::string& id) const {
        std::vector<const GsnEdge*> out;
        for (const auto& edge : edges) {
            if (edge.from == id) out.push_back(&edge);
        }
        return out;
    }
};

/// A pattern is a graph plus role declarations, multiplied links and choice
/// points. Statements may carry `{Role}` placeholders.
struct GsnPattern {
    std::string name;
    GsnGraph graph;
    std::vector<Multiplicity> multiplicities;
    std::vector<Choice> choices;
    std::vector<Role> roles;

    const Multiplicity* multiplicity_on(const std::string& from, const std::string& to) const {
        for (const auto& m : multiplicities) {
            if (m.from == from && m.to == to) return &m;
        }
        return nullptr;
    }

    const Choice* choice_at(const std::string& parent) const {
        for (const auto& c : choices) {
            if (c.parent == parent) return &c;
        }
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Placeholders
// ---------------------------------------------------------------------------

/// Collects `{...}` placeholder expressions from a statement. A placeholder
/// may be `{Role}` or `{Role.field}`.
inline std::vector<std::string> placeholders_in(const std::string& statement) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = statement.find('{', pos)) != std::string::npos) {
        std::size_t end = statement.find('}', pos + 1);
        if (end == std::string::npos) break;
        out.push_back(statement.substr(pos + 1, end - pos - 1));
        pos = end + 1;
    }
    return out;
}

inline std::string placeholder_role(const std::string& expression) {
    std::size_t dot = expression.find('.');
    return dot == std::string::npos ? expression : expression.substr(0, dot);
}

// ---------------------------------------------------------------------------
// Well-formedness
// ---------------------------------------------------------------------------

namespace detail {

inline bool cycle_from(const GsnGraph& graph, const std::string& node, std::set<std::string>& done,
                       std::set<std::string>& path) {
    if (path.count(node)) return true;
    if (done.count(node)) return false;
    path.insert(node);
    for (const auto& edge : graph.edges) {
        if (edge.kind != EdgeKind::SupportedBy || edge.from != node) continue;
        if (cycle_from(graph, edge.to, done, path)) return true;
    }
    path.erase(node);
    done.insert(node);
    return false;
}

inline std::string infer_root(const GsnGraph& graph) {
    if (!graph.root.empty()) return graph.root;
    std::set<std::string> targets;
    for (const auto& edge : graph.edges) targets.insert(edge.to);
    for (const auto& node : graph.nodes) {
        if (!targets.count(node.id)) return node.id;
    }
    return graph.nodes.empty() ? std::string() : graph.nodes.front().id;
}

}  // namespace detail

/// Structural checks shared by graphs and patterns. Violations are data,
/// not failures; an empty list means the structure is sound.
///
///   GSN001 cycle in the SupportedBy subgraph
///   GSN002 dangling support (goal or strategy without required children)
///   GSN003 solution with outgoing SupportedBy edges
///   GSN004 node unreachable from the root
///   GSN005 undeclared or unexpanded placeholder
///   GSN006 edge target of the wrong kind
inline std::vector<Violation> check_wellformed(const GsnGraph& graph,
                                               const std::vector<Role>* declared_roles = nullptr) {
    std::vector<Violation> violations;
    std::map<std::string, const GsnNode*> by_id;
    for (const auto& node : graph.nodes) {
        if (by_id.count(node.id)) {
            violations.push_back({"GSN006", node.id, "duplicate node id"});
        }
        by_id[node.id] = &node;
    }

    for (const auto& edge : graph.edges) {
        const std::string locus = edge.from + "->" + edge.to;
        auto from = by_id.find(edge.from);
        auto to = by_id.find(edge.to);
        if (from == by_id.end() || to == by_id.end()) {
            violations.push_back({"GSN006", locus, "edge endpoint does not exist"});
            continue;
        }
        if (edge.kind == EdgeKind::SupportedBy) {
            NodeKind kind = to->second->kind;
            if (kind != NodeKind::Goal && kind != NodeKind::Strategy && kind != NodeKind::Solution) {
                violations.push_back({"GSN006", locus, "SupportedBy must target a goal, strategy or solution"});
            }
            if (from->second->kind == NodeKind::Solution) {
                violations.push_back({"GSN003", edge.from, "solutions are evidence leaves"});
            }
        } else {
            NodeKind kind = to->second->kind;
            if (kind != NodeKind::Context && kind != NodeKind::Justification && kind != NodeKind::Assumption) {
                violations.push_back(
                    {"GSN006", locus, "InContextOf must target a context, justification or assumption"});
            }
        }
    }

    // Cycle detection over SupportedBy.
    {
        std::set<std::string> done, path;
        for (const auto& node : graph.nodes) {
            if (detail::cycle_from(graph, node.id, done, path)) {
                violations.push_back({"GSN001", node.id, "SupportedBy cycle"});
                break;
            }
        }
    }

    // Support obligations.
    for (const auto& node : graph.nodes) {
        std::size_t support = 0;
        for (const auto& edge : graph.edges) {
            if (edge.from == node.id && edge.kind == EdgeKind::SupportedBy) ++support;
        }
        if (node.kind == NodeKind::Goal && !node.undeveloped && support == 0) {
            violations.push_back({"GSN002", node.id, "goal has no support and is not marked undeveloped"});
        }
        if (node.kind == NodeKind::Strategy && support == 0) {
            violations.push_back({"GSN002", node.id, "strategy has no supporting goal or solution"});
        }
    }

    // Reachability from the root via any edge kind.
    if (!graph.nodes.empty()) {
        std::string root = detail::infer_root(graph);
        std::set<std::string> reached = {root};
        std::vector<std::string> frontier = {root};
        while (!frontier.empty()) {
            std::string current = frontier.back();
            frontier.pop_back();
            for (const auto& edge : graph.edges) {
                if (edge.from == current && reached.insert(edge.to).second) frontier.push_back(edge.to);
            }
        }
        for (const auto& node : graph.nodes) {
            if (!reached.count(node.id)) {
                violations.push_back({"GSN004", node.id, "node unreachable from root " + root});
            }
        }
    }

    // Placeholders: in patterns they must name declared roles; in
    // instantiated graphs none may remain.
    for (const auto& node : graph.nodes) {
        for (const auto& expression : placeholders_in(node.statement)) {
            std::string role = placeholder_role(expression);
            bool declared = false;
            if (declared_roles != nullptr) {
                declared = std::any_of(declared_roles->begin(), declared_roles->end(),
                                       [&](const Role& r) { return r.name == role; });
            }
            if (!declared) {
                violations.push_back({"GSN005", node.id, "placeholder {" + expression + "} is not declared"});
            }
        }
        if (declared_roles == nullptr && node.uninstantiated) {
            violations.push_back({"GSN005", node.id, "uninstantiated node in an instantiated graph"});
        }
    }

    std::stable_sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        if (a.code != b.code) return a.code < b.code;
        return a.locus < b.locus;
    });
    return violations;
}

inline std::vector<Violation> check_wellformed(const GsnPattern& pattern) {
    return check_wellformed(pattern.graph, &pattern.roles);
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

namespace detail {

inline std::string dot_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline std::string wrap_label(const std::string& text, std::size_t width = 28) {
    std::string out;
    std::size_t line = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (line >= width && text[i] == ' ') {
            out += "\\n";
            line = 0;
        } else {
            out.push_back(text[i]);
            ++line;
        }
    }
    return out;
}

}  // namespace detail

/// Renders a well-formed graph in DOT, using the usual GSN shape
/// conventions: boxes for goals, parallelograms for strategies, circles for
/// solutions, rounded boxes for contexts. ACP edges carry a box arrowhead
/// (the "black square") and their label.
inline std::string to_dot(const GsnGraph& graph, const std::string& title = "argument") {
    auto violations = check_wellformed(graph);
    if (!violations.empty()) {
        fail("NotWellFormed", "graph has " + std::to_string(violations.size()) +
                                  " violation(s); first: " + violations.front().code + " at " +
                                  violations.front().locus);
    }
    std::string out = "digraph \"" + detail::dot_escape(title) + "\" {\n";
    out += "  rankdir=TB;\n  node [fontsize=10];\n  edge [fontsize=9];\n";
    for (const auto& node : graph.nodes) {
        std::string shape;
        switch (node.kind) {
            case NodeKind::Goal: shape = "shape=box"; break;
            case NodeKind::Strategy: shape = "shape=parallelogram"; break;
            case NodeKind::Solution: shape = "shape=circle, fixedsize=false"; break;
            case NodeKind::Context: shape = "shape=box, style=rounded"; break;
            case NodeKind::Justification: shape = "shape=ellipse"; break;
            case NodeKind::Assumption: shape = "shape=ellipse, peripheries=2"; break;
        }
        std::string label = node.id + "\\n" + detail::wrap_label(detail::dot_escape(node.statement));
        if (node.kind == NodeKind::Justification) label += "\\n(J)";
        if (node.kind == NodeKind::Assumption) label += "\\n(A)";
        if (node.undeveloped) label += "\\n[undeveloped]";
        out += "  \"" + detail::dot_escape(node.id) + "\" [" + shape + ", label=\"" + label + "\"];\n";
    }
    for (const auto& edge : graph.edges) {
        std::string attrs = edge.kind == EdgeKind::SupportedBy ? "arrowhead=normal" : "arrowhead=empty, style=dashed";
        if (!edge.acp.empty()) {
            attrs += ", arrowtail=box, dir=both, label=\" " + detail::dot_escape(edge.acp) + "\"";
            attrs += edge.acp_satisfied ? ", color=black" : ", color=gray40";
        }
        out += "  \"" + detail::dot_escape(edge.from) + "\" -> \"" + detail::dot_escape(edge.to) + "\" [" +
               attrs + "];\n";
    }
    out += "}\n";
    return out;
}

/// Pattern variant: placeholders are legal as long as their roles are
/// declared.
inline std::string to_dot(const GsnPattern& pattern) {
    auto violations = check_wellformed(pattern);
    if (!violations.empty()) {
        fail("NotWellFormed", "pattern has " + std::to_string(violations.size()) + " violation(s)");
    }
    // Placeholder braces stay visible in the rendering; the structural check
    // already ran against the declared roles.
    const GsnGraph& graph = pattern.graph;
    std::string out = "digraph \"" + detail::dot_escape(pattern.name) + "\" {\n";
    out += "  rankdir=TB;\n  node [fontsize=10];\n  edge [fontsize=9];\n";
    for (const auto& node : graph.nodes) {
        std::string shape;
        switch (node.kind) {
            case NodeKind::Goal: shape = "shape=box"; break;
            case NodeKind::Strategy: shape = "shape=parallelogram"; break;
            case NodeKind::Solution: shape = "shape=circle, fixedsize=false"; break;
            case NodeKind::Context: shape = "shape=box, style=rounded"; break;
            case NodeKind::Justification: shape = "shape=ellipse"; break;
            case NodeKind::Assumption: shape = "shape=ellipse, peripheries=2"; break;
        }
        std::string label = node.id + "\\n" + detail::wrap_label(detail::dot_escape(node.statement));
        if (node.optional) label += "\\n[optional]";
        if (node.undeveloped) label += "\\n[undeveloped]";
        out += "  \"" + detail::dot_escape(node.id) + "\" [" + shape + ", label=\"" + label + "\"];\n";
    }
    for (const auto& edge : graph.edges) {
        std::string attrs = edge.kind == EdgeKind::SupportedBy ? "arrowhead=normal" : "arrowhead=empty, style=dashed";
        if (!edge.acp.empty()) attrs += ", arrowtail=box, dir=both, label=\" " + detail::dot_escape(edge.acp) + "\"";
        if (const Multiplicity* m = pattern.multiplicity_on(edge.from, edge.to)) {
            attrs += ", taillabel=\"per " + detail::dot_escape(m->role) + "\"";
        }
        out += "  \"" + detail::dot_escape(edge.from) + "\" -> \"" + detail::dot_escape(edge.to) + "\" [" +
               attrs + "];\n";
    }
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Confidence attachment
// ---------------------------------------------------------------------------

/// Attaches a confidence argument at the (unique) edge labelled `acp_label`.
/// The confidence root becomes a SupportedBy child of the edge's source; if
/// the root carries the same id as the edge's source or target, the two
/// nodes are merged instead (the host claim adopts the confidence
/// argument's support). Returns a new graph.
inline GsnGraph attach_confidence(const GsnGraph& graph, const std::string& acp_label,
                                  const GsnGraph& confidence) {
    if (!check_wellformed(confidence).empty()) {
        fail("NotWellFormed", "confidence argument for " + acp_label + " is not well-formed");
    }
    const GsnEdge* site = nullptr;
    for (const auto& edge : graph.edges) {
        if (edge.acp == acp_label) {
            if (site != nullptr) fail("DuplicateAcp", "label " + acp_label + " appears on multiple edges");
            site = &edge;
        }
    }
    if (site == nullptr) fail("UnknownAcp", "no edge carries ACP label " + acp_label);
    if (site->acp_satisfied) fail("AcpAlreadySatisfied", "ACP " + acp_label + " already has a confidence argument");

    std::string conf_root = detail::infer_root(confidence);
    std::string merge_into;
    if (conf_root == site->from || conf_root == site->to) merge_into = conf_root;

    GsnGraph merged = graph;
    for (const auto& node : confidence.nodes) {
        if (node.id == merge_into) {
            GsnNode* host = merged.find(merge_into);
            host->undeveloped = false;
            if (host->statement.empty()) host->statement = node.statement;
            continue;
        }
        if (merged.find(node.id) != nullptr) {
            fail("IdCollision", "confidence node " + node.id + " already exists in the host argument");
        }
        merged.nodes.push_back(node);
    }
    for (const auto& edge : confidence.edges) merged.edges.push_back(edge);
    if (merge_into.empty()) {
        merged.edges.push_back({site->from, conf_root, EdgeKind::SupportedBy, "", false});
    }
    for (auto& edge : merged.edges) {
        if (edge.acp == acp_label) edge.acp_satisfied = true;
    }
    return merged;
}

// ---------------------------------------------------------------------------
// Interchange format
// ---------------------------------------------------------------------------

inline Json graph_to_json(const GsnGraph& graph) {
    Json doc;
    doc["root"] = graph.root.empty() ? detail::infer_root(graph) : graph.root;
    doc["nodes"] = Json::array();
    for (const auto& node : graph.nodes) {
        Json entry;
        entry["id"] = node.id;
        entry["kind"] = to_string(node.kind);
        entry["statement"] = node.statement;
        Json flags = Json::array();
        if (node.undeveloped) flags.push_back("Undeveloped");
        if (node.uninstantiated) flags.push_back("Uninstantiated");
        if (node.optional) flags.push_back("Optional");
        entry["flags"] = std::move(flags);
        if (!node.artifact.empty()) {
            entry["artifact"] = node.artifact;
            if (!node.artifact_checksum.empty()) entry["artifact_checksum"] = node.artifact_checksum;
        }
        if (node.reconstructed) entry["reconstructed"] = true;
        doc["nodes"].push_back(std::move(entry));
    }
    doc["edges"] = Json::array();
    for (const auto& edge : graph.edges) {
        Json entry;
        entry["from"] = edge.from;
        entry["to"] = edge.to;
        entry["kind"] = edge.kind == EdgeKind::SupportedBy ? "SupportedBy" : "InContextOf";
        if (!edge.acp.empty()) {
            entry["acp"] = edge.acp;
            entry["acp_satisfied"] = edge.acp_satisfied;
        }
        doc["edges"].push_back(std::move(entry));
    }
    return doc;
}

inline GsnGraph graph_from_json(const Json& doc) {
    GsnGraph graph;
    graph.root = doc.value("root", "");
    for (const auto& entry : doc.value("nodes", Json::array())) {
        GsnNode node;
        node.id = entry.at("id").get<std::string>();
        node.kind = parse_node_kind(entry.value("kind", "Goal"));
        node.statement = entry.value("statement", "");
        for (const auto& flag : entry.value("flags", Json::array())) {
            std::string name = flag.get<std::string>();
            if (name == "Undeveloped") node.undeveloped = true;
            if (name == "Uninstantiated") node.uninstantiated = true;
            if (name == "Optional") node.optional = true;
        }
        node.artifact = entry.value("artifact", "");
        node.artifact_checksum = entry.value("artifact_checksum", "");
        node.reconstructed = entry.value("reconstructed", false);
        graph.nodes.push_back(std::move(node));
    }
    for (const auto& entry : doc.value("edges", Json::array())) {
        GsnEdge edge;
        edge.from = entry.at("from").get<std::string>();
        edge.to = entry.at("to").get<std::string>();
        edge.kind = entry.value("kind", "SupportedBy") == "InContextOf" ? EdgeKind::InContextOf
                                                                        : EdgeKind::SupportedBy;
        edge.acp = entry.value("acp", "");
        edge.acp_satisfied = entry.value("acp_satisfied", false);
        graph.edges.push_back(std::move(edge));
    }
    return graph;
}

inline RoleType parse_role_type(const std::string& text) {
    if (text == "text") return RoleType::Text;
    if (text == "int") return RoleType::Int;
    if (text == "collection") return RoleType::Collection;
    if (text == "map") return RoleType::Map;
    if (text == "artifact") return RoleType::Artifact;
    fail("UnknownRoleType", "no role type '" + text + "'");
}

/// Escape hatch for user-supplied patterns: the interchange format carries
/// enough to reconstruct roles, multiplicities and choices.
inline GsnPattern pattern_from_json(const Json& doc) {
    GsnPattern pattern;
    pattern.name = doc.value("name", "pattern");
    pattern.graph = graph_from_json(doc);
    for (const auto& role : doc.value("roles", Json::array())) {
        pattern.roles.push_back({role.at("name").get<std::string>(),
                                 parse_role_type(role.value("type", "text"))});
    }
    for (const auto& m : doc.value("multiplicities", Json::array())) {
        pattern.multiplicities.push_back({m.at("from").get<std::string>(), m.at("to").get<std::string>(),
                                          m.at("role").get<std::string>(), m.value("mandatory", true)});
    }
    for (const auto& c : doc.value("choices", Json::array())) {
        Choice choice;
        choice.parent = c.at("parent").get<std::string>();
        for (const auto& option : c.at("options")) choice.options.push_back(option.get<std::string>());
        choice.min = c.value("min", 1);
        choice.max = c.value("max", static_cast<int>(choice.options.size()));
        pattern.choices.push_back(std::move(choice));
    }
    return pattern;
}

inline Json pattern_to_json(const GsnPattern& pattern) {
    Json doc = graph_to_json(pattern.graph);
    doc["name"] = pattern.name;
    doc["roles"] = Json::array();
    for (const auto& role : pattern.roles) {
        doc["roles"].push_back(Json{{"name", role.name}, {"type", to_string(role.type)}});
    }
    doc["multiplicities"] = Json::array();
    for (const auto& m : pattern.multiplicities) {
        doc["multiplicities"].push_back(
            Json{{"from", m.from}, {"to", m.to}, {"role", m.role}, {"mandatory", m.mandatory},
                 {"cardinality", "one-per-element"}});
    }
    doc["choices"] = Json::array();
    for (const auto& c : pattern.choices) {
        doc["choices"].push_back(Json{{"parent", c.parent}, {"options", c.options}, {"min", c.min}, {"max", c.max}});
    }
    return doc;
}

}  // namespace sace::gsn
