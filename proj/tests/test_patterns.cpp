#include "sace/patterns.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sace;
using namespace sace::gsn;

TEST_CASE("all ten shipped patterns are well-formed") {
    for (PatternId id : all_pattern_ids()) {
        INFO(to_string(id));
        CHECK(check_wellformed(get_pattern(id)).empty());
    }
}

TEST_CASE("pattern id parsing accepts names and artifact letters") {
    CHECK(parse_pattern_id("N-SOC") == PatternId::Soc);
    CHECK(parse_pattern_id("N") == PatternId::Soc);
    CHECK(parse_pattern_id("DD") == PatternId::HazardousFailures);
    CHECK(parse_pattern_id("Baseline") == PatternId::Baseline);
    CHECK_THROWS_AS(parse_pattern_id("ZZ"), SaceError);
}

TEST_CASE("SOC pattern multiplies G3.2 per hazardous scenario") {
    const auto& pattern = get_pattern(PatternId::Soc);
    const Multiplicity* m = pattern.multiplicity_on("G3.1", "G3.2");
    REQUIRE(m != nullptr);
    CHECK(m->role == "HazardousScenario");
    CHECK(m->mandatory);
}

TEST_CASE("hazardous failures pattern offers the three mitigation routes") {
    const auto& pattern = get_pattern(PatternId::HazardousFailures);
    const Choice* choice = pattern.choice_at("G6.4");
    REQUIRE(choice != nullptr);
    CHECK(choice->options == std::vector<std::string>{"Sn6.3", "Sn6.2", "Sn6.5"});
    CHECK(choice->min == 1);
    CHECK(choice->max == 3);
}

TEST_CASE("required roles for the safety requirements pattern") {
    const auto& roles = required_roles(PatternId::SafetyRequirements);
    REQUIRE(roles.size() == 5);
    CHECK(roles[0].name == "Tier");
    CHECK(roles[0].type == RoleType::Int);
    CHECK(roles[1].name == "ParentRequirement");
    CHECK(roles[1].type == RoleType::Collection);
    CHECK(roles[2].name == "TierRequirementMap");
    CHECK(roles[2].type == RoleType::Map);
    CHECK(roles[3].name == "W");
    CHECK(roles[3].type == RoleType::Artifact);
    CHECK(roles[4].name == "R");
    CHECK(roles[4].type == RoleType::Artifact);
}

TEST_CASE("baseline roles include the context placeholders") {
    const auto& roles = required_roles(PatternId::Baseline);
    auto has = [&](const std::string& name) {
        return std::any_of(roles.begin(), roles.end(), [&](const Role& r) { return r.name == name; });
    };
    CHECK(has("OperatingContext"));
    CHECK(has("HazardousScenarios"));
}

TEST_CASE("operating context pattern has an ODM feature collection") {
    const auto& roles = required_roles(PatternId::OperatingContext);
    bool found = false;
    for (const auto& role : roles) {
        if (role.name == "OdmFeature") {
            found = true;
            CHECK(role.type == RoleType::Collection);
        }
    }
    CHECK(found);
}

TEST_CASE("pattern node ids follow the standard labels") {
    CHECK(get_pattern(PatternId::Soc).graph.find("G3.2") != nullptr);
    CHECK(get_pattern(PatternId::HazardousFailures).graph.find("Sn6.5") != nullptr);
    CHECK(get_pattern(PatternId::Verification).graph.find("J8.1") != nullptr);
    CHECK(get_pattern(PatternId::Verification).graph.find("G8.10") != nullptr);
    CHECK(get_pattern(PatternId::OutOfContext).graph.find("G7.11") != nullptr);
    CHECK(get_pattern(PatternId::SafetyRequirements).graph.find("G4.3") != nullptr);
    CHECK(get_pattern(PatternId::Baseline).graph.find("G0") != nullptr);
}

TEST_CASE("baseline and decomposition carry the expected ACP sites") {
    auto acp_labels = [](const GsnPattern& pattern) {
        std::set<std::string> labels;
        for (const auto& edge : pattern.graph.edges) {
            if (!edge.acp.empty()) labels.insert(edge.acp);
        }
        return labels;
    };
    CHECK(acp_labels(get_pattern(PatternId::Baseline)) ==
          std::set<std::string>{"ACP-context", "ACP-hazards", "ACP-soc", "ACP-out-of-context"});
    CHECK(acp_labels(get_pattern(PatternId::Decomposition)) ==
          std::set<std::string>{"ACP-requirements", "ACP-design", "ACP-failures", "ACP-verification"});
}

TEST_CASE("every evidence citation names a catalogued artifact of the process") {
    std::set<ArtifactCode> producible;
    for (const auto& stage : stage_specs()) {
        for (auto out : stage.outputs) producible.insert(out);
    }
    for (auto code : pure_input_artifacts()) producible.insert(code);

    for (PatternId id : all_pattern_ids()) {
        const auto& pattern = get_pattern(id);
        for (const auto& node : pattern.graph.nodes) {
            if (node.kind != NodeKind::Solution) continue;
            INFO(to_string(id) << " node " << node.id);
            REQUIRE_FALSE(node.artifact.empty());
            CHECK(producible.count(parse_artifact_code(node.artifact)) == 1);
        }
    }
}

TEST_CASE("patterns render to DOT") {
    std::string dot = to_dot(get_pattern(PatternId::Baseline));
    for (const char* label : {"G0", "S1", "G1", "G3", "G4", "G7"}) {
        CHECK(dot.find("\"" + std::string(label) + "\"") != std::string::npos);
    }
    CHECK(dot.find("parallelogram") != std::string::npos);
}

TEST_CASE("pattern export carries roles, multiplicities and choices") {
    Json doc = pattern_to_json(get_pattern(PatternId::Soc));
    CHECK(doc["name"] == "N-SOC");
    CHECK(doc["multiplicities"].size() == 1);
    CHECK(doc["multiplicities"][0]["role"] == "HazardousScenario");
    CHECK(doc["multiplicities"][0]["cardinality"] == "one-per-element");
    CHECK(doc["choices"].size() == 1);
    bool has_scenario_role = false;
    for (const auto& role : doc["roles"]) has_scenario_role |= (role["name"] == "HazardousScenario");
    CHECK(has_scenario_role);
}

TEST_CASE("patterns survive the interchange round trip") {
    for (PatternId id : all_pattern_ids()) {
        INFO(to_string(id));
        const auto& original = get_pattern(id);
        GsnPattern restored = pattern_from_json(pattern_to_json(original));
        CHECK(restored.graph.nodes.size() == original.graph.nodes.size());
        CHECK(restored.graph.edges.size() == original.graph.edges.size());
        CHECK(restored.roles.size() == original.roles.size());
        CHECK(restored.multiplicities.size() == original.multiplicities.size());
        CHECK(restored.choices.size() == original.choices.size());
        CHECK(check_wellformed(restored).empty());
    }
}
