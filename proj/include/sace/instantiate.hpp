#pragma once

// Binds project data to pattern roles and expands patterns into concrete GSN
// arguments: multiplicity cloning, choice resolution, optional-node
// handling, evidence attachment, and the per-tier recursion of the
// decomposition pattern.

#include "sace/gsn.hpp"
#include "sace/patterns.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sace {

struct ArtifactRef {
    std::string artifact;  // artifact code, e.g. "M"
    std::optional<int> tier;
    std::string checksum;
    std::string status;  // record status at binding time
};

/// Instantiation data for one pattern. Choice and optional keys may carry
/// clone suffixes ("G3.4#2"); the unsuffixed key acts as the default for
/// every clone.
struct Binding {
    PatternId pattern = PatternId::Baseline;
    std::map<std::string, Json> scalars;
    std::map<std::string, std::vector<Json>> collections;
    std::map<std::string, std::vector<std::string>> choices;
    std::map<std::string, bool> optional_keep;
    std::map<std::string, ArtifactRef> evidence;  // pattern node id -> artifact
    std::vector<int> tiers;
};

struct TraceRecord {
    std::string pattern_node;
    std::string instance_node;
    int clone_index = 0;  // 0 when not inside any clone
    Json bound;           // role values in scope at this node
};

struct InstantiatedArgument {
    gsn::GsnGraph graph;
    std::vector<TraceRecord> trace;
    std::vector<std::string> warnings;  // evidence-status findings, not errors
};

namespace engine_detail {

struct Scope {
    // role -> collection element currently in scope
    std::map<std::string, Json> elements;
    int clone_index = 0;
};

inline std::string json_as_text(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_number()) return std::to_string(value.get<double>());
    return value.dump();
}

inline std::string element_text(const Json& element) {
    if (element.is_object() && element.contains("text")) return element["text"].get<std::string>();
    return json_as_text(element);
}

/// Resolves one `{Role}` or `{Role.field}` expression against the current
/// scope and the scalar bindings.
inline std::string resolve_placeholder(const std::string& expression, const Binding& binding,
                                       const Scope& scope) {
    std::string role = gsn::placeholder_role(expression);
    std::string field = expression.size() > role.size() ? expression.substr(role.size() + 1) : "";

    auto in_scope = scope.elements.find(role);
    if (in_scope != scope.elements.end()) {
        if (field.empty()) return element_text(in_scope->second);
        if (in_scope->second.is_object() && in_scope->second.contains(field)) {
            return json_as_text(in_scope->second[field]);
        }
        fail("MissingRole", "collection element for role " + role + " has no field '" + field + "'");
    }
    auto scalar = binding.scalars.find(role);
    if (scalar != binding.scalars.end()) {
        if (field.empty()) return json_as_text(scalar->second);
        if (scalar->second.is_object() && scalar->second.contains(field)) {
            return json_as_text(scalar->second[field]);
        }
        fail("MissingRole", "scalar role " + role + " has no field '" + field + "'");
    }
    fail("MissingRole", "no binding for placeholder {" + expression + "}");
}

inline std::string substitute(const std::string& statement, const Binding& binding, const Scope& scope) {
    std::string out;
    std::size_t pos = 0;
    while (pos < statement.size()) {
        if (statement[pos] == '{') {
            std::size_t end = statement.find('}', pos + 1);
            if (end == std::string::npos) break;
            out += resolve_placeholder(statement.substr(pos + 1, end - pos - 1), binding, scope);
            pos = end + 1;
        } else {
            out.push_back(statement[pos++]);
        }
    }
    out += statement.substr(pos);
    return out;
}

template <typename Map>
inline auto suffixed_lookup(const Map& map, const std::string& base, const std::string& suffix)
    -> const typename Map::mapped_type* {
    auto exact = map.find(base + suffix);
    if (exact != map.end()) return &exact->second;
    auto fallback = map.find(base);
    if (fallback != map.end()) return &fallback->second;
    return nullptr;
}

struct Expander {
    const gsn::GsnPattern& pattern;
    const Binding& binding;
    InstantiatedArgument result;
    std::set<std::string> expanded;  // instance ids; shared nodes expand once

    std::vector<const gsn::GsnEdge*> edges_from(const std::string& id) const {
        std::vector<const gsn::GsnEdge*> out;
        for (const auto& edge : pattern.graph.edges) {
            if (edge.from == id) out.push_back(&edge);
        }
        return out;
    }

    /// Selected options at a choice point, validated against min/max.
    std::vector<std::string> selection_at(const gsn::Choice& choice, const std::string& suffix) {
        const std::vector<std::string>* selected =
            suffixed_lookup(binding.choices, choice.parent, suffix);
        if (selected == nullptr) {
            fail("MissingRole", "no choice selection for " + choice.parent + suffix);
        }
        for (const auto& option : *selected) {
            if (std::find(choice.options.begin(), choice.options.end(), option) == choice.options.end()) {
                fail("ChoiceCardinality",
                     "'" + option + "' is not an option of choice point " + choice.parent);
            }
        }
        int count = static_cast<int>(selected->size());
        if (count < choice.min || count > choice.max) {
            fail("ChoiceCardinality", "choice at " + choice.parent + suffix + " selects " +
                                          std::to_string(count) + " options, allowed " +
                                          std::to_string(choice.min) + ".." + std::to_string(choice.max));
        }
        return *selected;
    }

    bool keep_optional(const std::string& node_id, const std::string& suffix) const {
        const bool* keep = suffixed_lookup(binding.optional_keep, node_id, suffix);
        return keep != nullptr && *keep;
    }

    /// Expands `node_id` under `suffix`, returning the instance id. A node
    /// reachable through several parents in the same scope expands once.
    std::string expand(const std::string& node_id, const std::string& suffix, const Scope& scope) {
        if (expanded.count(node_id + suffix)) return node_id + suffix;
        expanded.insert(node_id + suffix);
        const gsn::GsnNode* source = pattern.graph.find(node_id);
        gsn::GsnNode node = *source;
        node.id = node_id + suffix;
        node.statement = substitute(node.statement, binding, scope);
        node.optional = false;
        node.uninstantiated = false;

        if (!node.artifact.empty()) {
            auto evidence = binding.evidence.find(node_id);
            if (evidence == binding.evidence.end()) {
                fail("MissingRole", "no evidence reference for node " + node_id + " (artifact " +
                                        node.artifact + ")");
            }
            node.artifact_checksum = evidence->second.checksum;
            if (evidence->second.status != "Validated") {
                result.warnings.push_back("evidence " + node.artifact + " behind node " + node.id +
                                          " has status " + evidence->second.status);
            }
        }

        TraceRecord record;
        record.pattern_node = node_id;
        record.instance_node = node.id;
        record.clone_index = scope.clone_index;
        record.bound = Json::object();
        for (const auto& [role, element] : scope.elements) record.bound[role] = element;
        result.trace.push_back(std::move(record));

        const gsn::Choice* choice = pattern.choice_at(node_id);
        std::optional<std::set<std::string>> selected;
        if (choice != nullptr) {
            auto options = selection_at(*choice, suffix);
            selected.emplace(options.begin(), options.end());
        }

        bool any_support = false;
        std::vector<gsn::GsnEdge> instance_edges;
        for (const gsn::GsnEdge* edge : edges_from(node_id)) {
            if (selected && selected->count(edge->to) == 0 &&
                std::find(choice->options.begin(), choice->options.end(), edge->to) !=
                    choice->options.end()) {
                continue;  // unselected choice option
            }
            const gsn::GsnNode* target = pattern.graph.find(edge->to);
            const gsn::Multiplicity* multiplicity = pattern.multiplicity_on(node_id, edge->to);
            if (multiplicity != nullptr) {
                auto elements = binding.collections.find(multiplicity->role);
                if (elements == binding.collections.end()) {
                    fail("MissingRole", "no collection bound for role " + multiplicity->role);
                }
                if (elements->second.empty()) {
                    if (multiplicity->mandatory) {
                        fail("EmptyCollection", "collection for role " + multiplicity->role +
                                                    " is empty but the branch is mandatory");
                    }
                    continue;
                }
                int index = 0;
                for (const auto& element : elements->second) {
                    ++index;
                    Scope inner = scope;
                    inner.elements[multiplicity->role] = element;
                    inner.clone_index = index;
                    std::string clone_suffix = suffix + "#" + std::to_string(index);
                    if (target->optional && !keep_optional(edge->to, clone_suffix)) continue;
                    std::string child = expand(edge->to, clone_suffix, inner);
                    gsn::GsnEdge out{node.id, child, edge->kind,
                                     edge->acp.empty() ? "" : edge->acp + clone_suffix, false};
                    any_support |= edge->kind == gsn::EdgeKind::SupportedBy;
                    instance_edges.push_back(std::move(out));
                }
                continue;
            }
            if (target->optional && (!selected || selected->count(edge->to) == 0) &&
                !keep_optional(edge->to, suffix)) {
                continue;  // unbound optional node
            }
            std::string child = expand(edge->to, suffix, scope);
            gsn::GsnEdge out{node.id, child, edge->kind, edge->acp.empty() ? "" : edge->acp + suffix,
                             false};
            any_support |= edge->kind == gsn::EdgeKind::SupportedBy;
            instance_edges.push_back(std::move(out));
        }

        // A goal whose entire support was dropped (empty non-mandatory
        // collection, unbound optionals) is explicitly undeveloped.
        if (node.kind == gsn::NodeKind::Goal && !node.undeveloped && !any_support) {
            bool had_support = std::any_of(
                pattern.graph.edges.begin(), pattern.graph.edges.end(), [&](const gsn::GsnEdge& e) {
                    return e.from == node_id && e.kind == gsn::EdgeKind::SupportedBy;
                });
            if (had_support) node.undeveloped = true;
        }

        result.graph.nodes.push_back(std::move(node));
        for (auto& edge : instance_edges) result.graph.edges.push_back(std::move(edge));
        return node_id + suffix;
    }
};

}  // namespace engine_detail

/// Checks the binding against the pattern's declared roles: scalar and
/// collection roles must be covered exactly (artifact roles are validated
/// against the nodes that survive expansion).
inline void validate_binding(const gsn::GsnPattern& pattern, const Binding& binding) {
    std::set<std::string> scalar_roles, collection_roles;
    for (const auto& role : pattern.roles) {
        switch (role.type) {
            case gsn::RoleType::Text:
            case gsn::RoleType::Int:
            case gsn::RoleType::Map: {
                scalar_roles.insert(role.name);
                if (!binding.scalars.count(role.name)) {
                    fail("MissingRole", "binding lacks scalar role " + role.name);
                }
                break;
            }
            case gsn::RoleType::Collection: {
                collection_roles.insert(role.name);
                if (!binding.collections.count(role.name)) {
                    fail("MissingRole", "binding lacks collection role " + role.name);
                }
                break;
            }
            case gsn::RoleType::Artifact: break;
        }
    }
    for (const auto& [name, value] : binding.scalars) {
        if (!scalar_roles.count(name)) fail("ExtraRole", "binding supplies undeclared scalar role " + name);
    }
    for (const auto& [name, value] : binding.collections) {
        if (!collection_roles.count(name)) {
            fail("ExtraRole", "binding supplies undeclared collection role " + name);
        }
    }
}

/// Expands a pattern into a concrete argument. Multiplicity targets are
/// cloned once per collection element (ids suffixed #k), unselected choice
/// options and unbound optional nodes are dropped, evidence references are
/// attached to artifact-citing nodes, and the result passes the structural
/// checks with no placeholders left.
inline InstantiatedArgument instantiate(const gsn::GsnPattern& pattern, const Binding& binding) {
    validate_binding(pattern, binding);
    engine_detail::Expander expander{pattern, binding, {}, {}};
    std::string root = pattern.graph.root.empty() ? gsn::detail::infer_root(pattern.graph)
                                                  : pattern.graph.root;
    expander.expand(root, "", {});
    expander.result.graph.root = root;
    auto violations = gsn::check_wellformed(expander.result.graph);
    if (!violations.empty()) {
        fail("NotWellFormed", "instantiation produced " + std::to_string(violations.size()) +
                                  " violation(s); first: " + violations.front().code + " at " +
                                  violations.front().locus);
    }
    return std::move(expander.result);
}

inline InstantiatedArgument instantiate(PatternId id, const Binding& binding) {
    return instantiate(get_pattern(id), binding);
}

// ---------------------------------------------------------------------------
// Decomposition recursion
// ---------------------------------------------------------------------------

struct TierRequirement {
    std::string id;
    std::string text;
    std::vector<std::string> parents;  // requirement ids at the previous tier
    bool evidenced = false;            // verification results exist
};

struct TierBinding {
    int tier = 0;
    std::vector<TierRequirement> requirements;
    ArtifactRef requirements_artifact;  // Q at this tier
    ArtifactRef design_artifact;        // W at this tier
};

namespace engine_detail {

inline void rename_with_suffix(gsn::GsnGraph& graph, const std::string& suffix) {
    for (auto& node : graph.nodes) node.id += suffix;
    for (auto& edge : graph.edges) {
        edge.from += suffix;
        edge.to += suffix;
        if (!edge.acp.empty()) edge.acp += suffix;
    }
    graph.root += suffix;
}

}  // namespace engine_detail

/// Expands the decomposition pattern once per tier and stitches the tiers
/// together: each requirement carries an evidence claim (G8), a link into
/// the next tier's expansion (G9), or both; the final tier never recurses.
inline InstantiatedArgument instantiate_decomposition(const std::string& system,
                                                      const std::vector<TierBinding>& tiers) {
    if (tiers.empty()) fail("EmptyCollection", "decomposition needs at least one tier");

    // Parent traceability: every requirement of tier i (i >= 1 in the list)
    // must name parents among tier i-1's requirement ids.
    for (std::size_t i = 1; i < tiers.size(); ++i) {
        std::set<std::string> previous;
        for (const auto& requirement : tiers[i - 1].requirements) previous.insert(requirement.id);
        for (const auto& requirement : tiers[i].requirements) {
            if (requirement.parents.empty()) {
                fail("UnknownParent", "requirement " + requirement.id + " at tier " +
                                          std::to_string(tiers[i].tier) + " has no parent requirement");
            }
            for (const auto& parent : requirement.parents) {
                if (!previous.count(parent)) {
                    fail("UnknownParent", "requirement " + requirement.id + " names unknown parent " + parent);
                }
            }
        }
    }

    // Which requirements decompose further?
    std::vector<std::map<std::string, bool>> decomposed(tiers.size());
    for (std::size_t i = 0; i < tiers.size(); ++i) {
        for (const auto& requirement : tiers[i].requirements) {
            bool has_children = false;
            if (i + 1 < tiers.size()) {
                for (const auto& child : tiers[i + 1].requirements) {
                    has_children |= std::find(child.parents.begin(), child.parents.end(),
                                              requirement.id) != child.parents.end();
                }
            }
            decomposed[i][requirement.id] = has_children;
            if (!requirement.evidenced && !has_children) {
                fail("DanglingRequirement", "requirement " + requirement.id + " at tier " +
                                                std::to_string(tiers[i].tier) +
                                                " has neither evidence nor a child decomposition");
            }
        }
    }

    const gsn::GsnPattern& pattern = get_pattern(PatternId::Decomposition);

    // Sub-pattern rooted at the per-tier strategy.
    gsn::GsnPattern per_tier = pattern;
    per_tier.graph.root = "S3";
    per_tier.graph.nodes.erase(std::remove_if(per_tier.graph.nodes.begin(), per_tier.graph.nodes.end(),
                                              [](const gsn::GsnNode& n) { return n.id == "G4"; }),
                               per_tier.graph.nodes.end());
    per_tier.graph.edges.erase(std::remove_if(per_tier.graph.edges.begin(), per_tier.graph.edges.end(),
                                              [](const gsn::GsnEdge& e) { return e.from == "G4"; }),
                               per_tier.graph.edges.end());

    InstantiatedArgument assembly;
    const gsn::GsnNode* g4 = pattern.graph.find("G4");
    gsn::GsnNode root = *g4;
    Binding root_binding;
    root_binding.scalars["System"] = system;
    root.statement = engine_detail::substitute(root.statement, root_binding, {});
    root.reconstructed = g4->reconstructed;
    assembly.graph.nodes.push_back(root);
    assembly.graph.root = "G4";
    assembly.trace.push_back({"G4", "G4", 0, Json::object()});

    std::vector<std::string> pending_recursion;  // kept G9 instance ids of the previous tier
    for (std::size_t i = 0; i < tiers.size(); ++i) {
        const TierBinding& tier = tiers[i];
        Binding binding;
        binding.pattern = PatternId::Decomposition;
        binding.scalars["System"] = system;
        binding.scalars["Tier"] = tier.tier;
        binding.evidence["C4"] = tier.requirements_artifact;
        binding.evidence["C5"] = tier.design_artifact;
        int index = 0;
        for (const auto& requirement : tier.requirements) {
            ++index;
            binding.collections["SafetyRequirement"].push_back(requirement.id);
            std::string clone = "#" + std::to_string(index);
            binding.optional_keep["G8" + clone] = requirement.evidenced;
            binding.optional_keep["G9" + clone] = decomposed[i].at(requirement.id);
        }

        InstantiatedArgument expansion = instantiate(per_tier, binding);
        std::string suffix = "@t" + std::to_string(tier.tier);
        engine_detail::rename_with_suffix(expansion.graph, suffix);
        for (auto& record : expansion.trace) record.instance_node += suffix;

        std::vector<std::string> kept_recursion;
        for (auto& node : expansion.graph.nodes) {
            // A kept G9 is developed by the next tier's expansion.
            if (node.id.rfind("G9", 0) == 0) {
                node.undeveloped = false;
                kept_recursion.push_back(node.id);
            }
            assembly.graph.nodes.push_back(std::move(node));
        }
        for (auto& edge : expansion.graph.edges) assembly.graph.edges.push_back(std::move(edge));
        for (auto& record : expansion.trace) assembly.trace.push_back(std::move(record));
        for (auto& warning : expansion.warnings) assembly.warnings.push_back(std::move(warning));

        std::string strategy = "S3" + suffix;
        if (i == 0) {
            assembly.graph.edges.push_back({"G4", strategy, gsn::EdgeKind::SupportedBy, "", false});
        } else {
            // Every kept G9 of the previous tier supports this tier's strategy.
            for (const auto& g9 : pending_recursion) {
                assembly.graph.edges.push_back({g9, strategy, gsn::EdgeKind::SupportedBy, "", false});
            }
        }
        pending_recursion = std::move(kept_recursion);
    }

    auto violations = gsn::check_wellformed(assembly.graph);
    if (!violations.empty()) {
        fail("NotWellFormed", "decomposition produced " + std::to_string(violations.size()) +
                                  " violation(s); first: " + violations.front().code + " at " +
                                  violations.front().locus);
    }
    return assembly;
}

}  // namespace sace
