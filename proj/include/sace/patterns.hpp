#pragma once

// The ten built-in argument patterns. Node ids keep the standard labels
// (G3.2, Sn6.5, J8.1, ...) so instantiated arguments stay cross-referencable
// against the methodology guidance; statements are prose reconstructions and
// are flagged as such.

#include "sace/artifacts.hpp"
#include "sace/gsn.hpp"

#include <map>
#include <string>
#include <vector>

namespace sace {

enum class PatternId {
    Baseline,
    Decomposition,
    OperatingContext,    // G
    HazardousScenarios,  // I
    Soc,                 // N
    SafetyRequirements,  // S
    DesignAssurance,     // U
    HazardousFailures,   // DD
    OutOfContext,        // PP
    Verification,        // UU
};

inline const std::vector<std::pair<PatternId, std::string>>& pattern_names() {
    static const std::vector<std::pair<PatternId, std::string>> names = {
        {PatternId::Baseline, "Baseline"},
        {PatternId::Decomposition, "Decomposition"},
        {PatternId::OperatingContext, "G-OperatingContext"},
        {PatternId::HazardousScenarios, "I-HazardousScenarios"},
        {PatternId::Soc, "N-SOC"},
        {PatternId::SafetyRequirements, "S-SafetyRequirements"},
        {PatternId::DesignAssurance, "U-DesignAssurance"},
        {PatternId::HazardousFailures, "DD-HazardousFailures"},
        {PatternId::OutOfContext, "PP-OutOfContext"},
        {PatternId::Verification, "UU-Verification"},
    };
    return names;
}

inline std::string to_string(PatternId id) {
    for (const auto& [pattern, name] : pattern_names()) {
        if (pattern == id) return name;
    }
    return "Baseline";
}

/// Accepts the full pattern name or the bare artifact letter (G, I, N, S, U,
/// DD, PP, UU).
inline PatternId parse_pattern_id(const std::string& text) {
    for (const auto& [pattern, name] : pattern_names()) {
        if (text == name) return pattern;
        std::size_t dash = name.find('-');
        if (dash != std::string::npos && text == name.substr(0, dash)) return pattern;
    }
    fail("UnknownPattern", "no pattern '" + text + "'");
}

/// The pattern artifact shipped for each lettered pattern.
inline std::optional<ArtifactCode> pattern_artifact(PatternId id) {
    switch (id) {
        case PatternId::OperatingContext: return ArtifactCode::G;
        case PatternId::HazardousScenarios: return ArtifactCode::I;
        case PatternId::Soc: return ArtifactCode::N;
        case PatternId::SafetyRequirements: return ArtifactCode::S;
        case PatternId::DesignAssurance: return ArtifactCode::U;
        case PatternId::HazardousFailures: return ArtifactCode::DD;
        case PatternId::OutOfContext: return ArtifactCode::PP;
        case PatternId::Verification: return ArtifactCode::UU;
        default: return std::nullopt;
    }
}

/// The instantiated-argument artifact each lettered pattern produces.
inline std::optional<ArtifactCode> instantiated_argument_artifact(PatternId id) {
    switch (id) {
        case PatternId::OperatingContext: return ArtifactCode::H;
        case PatternId::HazardousScenarios: return ArtifactCode::J;
        case PatternId::Soc: return ArtifactCode::O;
        case PatternId::SafetyRequirements: return ArtifactCode::T;
        case PatternId::DesignAssurance: return ArtifactCode::AA;
        case PatternId::HazardousFailures: return ArtifactCode::EE;
        case PatternId::OutOfContext: return ArtifactCode::QQ;
        case PatternId::Verification: return ArtifactCode::VV;
        default: return std::nullopt;
    }
}

namespace detail {

inline gsn::GsnNode node(std::string id, gsn::NodeKind kind, std::string statement,
                         std::string artifact = "") {
    gsn::GsnNode n;
    n.id = std::move(id);
    n.kind = kind;
    n.statement = std::move(statement);
    n.artifact = std::move(artifact);
    n.reconstructed = true;
    return n;
}

inline gsn::GsnNode goal(std::string id, std::string statement) {
    return node(std::move(id), gsn::NodeKind::Goal, std::move(statement));
}

inline gsn::GsnNode undeveloped_goal(std::string id, std::string statement) {
    auto n = goal(std::move(id), std::move(statement));
    n.undeveloped = true;
    return n;
}

inline gsn::GsnNode optional_goal(std::string id, std::string statement) {
    auto n = goal(std::move(id), std::move(statement));
    n.optional = true;
    return n;
}

inline gsn::GsnNode strategy(std::string id, std::string statement) {
    return node(std::move(id), gsn::NodeKind::Strategy, std::move(statement));
}

inline gsn::GsnNode solution(std::string id, std::string statement, std::string artifact) {
    return node(std::move(id), gsn::NodeKind::Solution, std::move(statement), std::move(artifact));
}

inline gsn::GsnNode context(std::string id, std::string statement, std::string artifact = "") {
    return node(std::move(id), gsn::NodeKind::Context, std::move(statement), std::move(artifact));
}

inline gsn::GsnNode justification(std::string id, std::string statement) {
    return node(std::move(id), gsn::NodeKind::Justification, std::move(statement));
}

inline gsn::GsnEdge supported(std::string from, std::string to, std::string acp = "") {
    return {std::move(from), std::move(to), gsn::EdgeKind::SupportedBy, std::move(acp), false};
}

inline gsn::GsnEdge in_context(std::string from, std::string to, std::string acp = "") {
    return {std::move(from), std::move(to), gsn::EdgeKind::InContextOf, std::move(acp), false};
}

// --- Baseline (high-level safety argument) --------------------------------

inline gsn::GsnPattern make_baseline() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "Baseline";
    p.graph.root = "G0";
    p.graph.nodes = {
        goal("G0", "The {System} is sufficiently safe throughout its operational life."),
        strategy("S1",
                 "Argument over the safety of the {System} when operating inside and outside the "
                 "defined autonomous operating context."),
        goal("G1",
             "The {System} is sufficiently safe while operating within the defined autonomous "
             "operating context."),
        undeveloped_goal("G7",
                         "The {System} remains sufficiently safe if it operates outside of the "
                         "defined autonomous operating context."),
        context("C1", "Autonomous operating context definition: {OperatingContext}", "B"),
        goal("G3",
             "All of the hazardous scenarios associated with the operation of the {System} are "
             "sufficiently mitigated."),
        context("C2", "Identified hazardous scenarios: {HazardousScenarios}", "XX"),
        undeveloped_goal(
            "G4", "The {System} operates such that the defined Safe Operating Concept (SOC) is satisfied."),
        context("C3", "Safe Operating Concept definition: {Soc}", "L"),
    };
    p.graph.edges = {
        supported("G0", "S1"),
        supported("S1", "G1"),
        supported("S1", "G7"),
        in_context("G1", "C1", "ACP-context"),
        supported("G1", "G3"),
        in_context("G3", "C2", "ACP-hazards"),
        supported("G3", "G4"),
        in_context("G4", "C3", "ACP-soc"),
        in_context("G7", "C1", "ACP-out-of-context"),
    };
    p.roles = {
        {"System", RoleType::Text},
        {"OperatingContext", RoleType::Text},
        {"HazardousScenarios", RoleType::Text},
        {"Soc", RoleType::Text},
        {"B", RoleType::Artifact},
        {"XX", RoleType::Artifact},
        {"L", RoleType::Artifact},
    };
    return p;
}

// --- Decomposition (per-tier development of G4) ---------------------------

inline gsn::GsnPattern make_decomposition() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "Decomposition";
    p.graph.root = "G4";
    p.graph.nodes = {
        goal("G4", "The {System} operates such that the defined Safe Operating Concept (SOC) is satisfied."),
        strategy("S3",
                 "Argument over the safety requirements identified at tier {Tier} of the "
                 "decomposition of the {System} design."),
        context("C4", "Safety requirements defined for tier {Tier}", "Q"),
        context("C5", "Design of the {System} at tier {Tier}", "W"),
        goal("G5",
             "Safety requirement {SafetyRequirement} is addressed by the design of the {System} "
             "at tier {Tier}."),
        undeveloped_goal("G6",
                         "Potential hazardous failures introduced during the design of the "
                         "{System} at tier {Tier} are acceptably managed."),
        [] {
            auto n = optional_goal("G8",
                                   "Evidence is provided that demonstrates that safety requirement "
                                   "{SafetyRequirement} is satisfied.");
            n.undeveloped = true;
            return n;
        }(),
        [] {
            // Recursion marker: when a requirement is decomposed further, the
            // next tier's expansion of this same pattern supports this goal.
            auto n = optional_goal("G9",
                                   "Safety requirement {SafetyRequirement} is addressed through the "
                                   "next tier of decomposition of the {System} design.");
            n.undeveloped = true;
            return n;
        }(),
    };
    p.graph.edges = {
        supported("G4", "S3"),
        in_context("S3", "C4", "ACP-requirements"),
        in_context("S3", "C5", "ACP-design"),
        supported("S3", "G5"),
        supported("S3", "G6", "ACP-failures"),
        supported("G5", "G8", "ACP-verification"),
        supported("G5", "G9"),
    };
    p.multiplicities = {{"S3", "G5", "SafetyRequirement", true}};
    p.roles = {
        {"System", RoleType::Text},
        {"Tier", RoleType::Int},
        {"SafetyRequirement", RoleType::Collection},
        {"Q", RoleType::Artifact},
        {"W", RoleType::Artifact},
    };
    return p;
}

// --- G: operating context assurance ----------------------------------------

inline gsn::GsnPattern make_operating_context() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "G-OperatingContext";
    p.graph.root = "G1.1";
    p.graph.nodes = {
        goal("G1.1",
             "The defined operating context represents a complete and correct definition of the "
             "scope within which safe operation of the {System} is assured."),
        goal("G1.2",
             "The defined ODM supports the {System} fulfilling its autonomous capabilities in a "
             "safe manner."),
        context("C1.1", "Operational Domain Model", "B"),
        context("C1.2", "Autonomous Capabilities Definition", "D"),
        goal("G1.5",
             "All of the ODM features that could impact on the ability of the {System} to safely "
             "perform its required capabilities have been identified."),
        solution("Sn1.1", "ODM Validation Report", "C"),
        goal("G1.3", "ODM feature {OdmFeature} is specified at an appropriate level of detail."),
        solution("Sn1.3", "ODM feature specification and granularity rationale for {OdmFeature}", "B"),
        goal("G1.4",
             "All of the operating scenarios that are relevant to performing the autonomous "
             "capabilities in the ODM have been identified."),
        context("C1.3", "Operating Scenarios Definition", "E"),
        solution("Sn1.2", "Operating Scenarios Validation Report", "F"),
    };
    p.graph.edges = {
        supported("G1.1", "G1.2"),
        supported("G1.1", "G1.4"),
        in_context("G1.2", "C1.1"),
        in_context("G1.2", "C1.2"),
        supported("G1.2", "G1.5"),
        supported("G1.2", "G1.3"),
        supported("G1.5", "Sn1.1"),
        supported("G1.3", "Sn1.3"),
        in_context("G1.4", "C1.3"),
        supported("G1.4", "Sn1.2"),
    };
    p.multiplicities = {{"G1.2", "G1.3", "OdmFeature", true}};
    p.roles = {
        {"System", RoleType::Text},
        {"OdmFeature", RoleType::Collection},
        {"B", RoleType::Artifact},
        {"C", RoleType::Artifact},
        {"D", RoleType::Artifact},
        {"E", RoleType::Artifact},
        {"F", RoleType::Artifact},
    };
    return p;
}

// --- I: hazardous scenarios assurance --------------------------------------

inline gsn::GsnPattern make_hazardous_scenarios() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "I-HazardousScenarios";
    p.graph.root = "G2.1";
    p.graph.nodes = {
        goal("G2.1",
             "The hazardous scenarios relating to the operation of the {System} have been "
             "sufficiently identified."),
        goal("G2.2",
             "The hazardous scenarios were identified using a process that analyses the decisions "
             "made by the {System} and its interactions with the operating environment."),
        context("C2.1", "Operating Scenarios Definition", "E"),
        context("C2.2", "Operational Domain Model", "B"),
        goal("G2.4", "All of the relevant {System} decisions have been correctly analysed."),
        goal("G2.5",
             "The interactions between the {System} and its operating environment have been "
             "adequately considered as part of the analysis."),
        solution("Sn2.1", "AS Decision Analysis Report", "WW"),
        goal("G2.3", "The identified hazardous scenarios have been validated."),
        solution("Sn2.2", "AS Hazardous Scenarios Validation Report", "YY"),
    };
    p.graph.edges = {
        supported("G2.1", "G2.2"), supported("G2.1", "G2.3"), in_context("G2.2", "C2.1"),
        in_context("G2.2", "C2.2"), supported("G2.2", "G2.4"), supported("G2.2", "G2.5"),
        supported("G2.4", "Sn2.1"), supported("G2.5", "Sn2.1"), supported("G2.3", "Sn2.2"),
    };
    p.roles = {
        {"System", RoleType::Text}, {"B", RoleType::Artifact},  {"E", RoleType::Artifact},
        {"WW", RoleType::Artifact}, {"YY", RoleType::Artifact},
    };
    return p;
}

// --- N: SOC assurance --------------------------------------------------------

inline gsn::GsnPattern make_soc() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "N-SOC";
    p.graph.root = "G3.1";
    p.graph.nodes = {
        goal("G3.1",
             "The defined SOC provides a sufficient mitigation for all of the hazardous scenarios "
             "identified for the operation of the {System}."),
        context("C3.1", "AS Hazardous Scenarios Definition", "XX"),
        goal("G3.2",
             "If the SOC is met by the {System} during operation, the risk associated with "
             "hazardous scenario {HazardousScenario} is sufficiently mitigated."),
        goal("G3.3",
             "The defined safety requirements provide sufficient mitigation for hazardous "
             "scenario {HazardousScenario}."),
        solution("Sn3.1", "SOC Justification Report", "M"),
        optional_goal("G3.4",
                      "The additional operating constraints defined as part of the mitigation for "
                      "hazardous scenario {HazardousScenario} are sufficient."),
        goal("G3.5",
             "The defined ROD constraints are justified with respect to hazardous scenario "
             "{HazardousScenario}."),
        goal("G3.6",
             "The defined reductions in autonomous capability are justified with respect to "
             "hazardous scenario {HazardousScenario}."),
        solution("Sn3.2", "SOC Justification Report (ROD justification)", "M"),
        solution("Sn3.3", "SOC Justification Report (capability reduction justification)", "M"),
    };
    p.graph.edges = {
        in_context("G3.1", "C3.1"), supported("G3.1", "G3.2"), supported("G3.2", "G3.3"),
        supported("G3.2", "G3.4"),  supported("G3.3", "Sn3.1"), supported("G3.4", "G3.5"),
        supported("G3.4", "G3.6"),  supported("G3.5", "Sn3.2"), supported("G3.6", "Sn3.3"),
    };
    p.multiplicities = {{"G3.1", "G3.2", "HazardousScenario", true}};
    p.choices = {{"G3.4", {"G3.5", "G3.6"}, 1, 2}};
    p.roles = {
        {"System", RoleType::Text},
        {"HazardousScenario", RoleType::Collection},
        {"M", RoleType::Artifact},
        {"XX", RoleType::Artifact},
    };
    return p;
}

// --- S: safety requirements assurance ---------------------------------------

inline gsn::GsnPattern make_safety_requirements() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "S-SafetyRequirements";
    p.graph.root = "G4.1";
    p.graph.nodes = {
        goal("G4.1",
             "The safety requirements defined at tier {Tier} have been adequately allocated, "
             "decomposed and interpreted from the safety requirements of the previous tier."),
        goal("G4.2",
             "The tier {Tier} safety requirements are sufficient to capture the intent of the "
             "inherited safety requirements."),
        context("C4.1", "Tier {Tier} Design", "W"),
        goal("G4.3",
             "The intent of safety requirement {ParentRequirement} is adequately captured by the "
             "tier {Tier} safety requirements: {ParentRequirement.children}."),
        solution("Sn4.1", "Safety Requirements Justification Report", "R"),
    };
    p.graph.edges = {
        supported("G4.1", "G4.2"),
        in_context("G4.2", "C4.1"),
        supported("G4.2", "G4.3"),
        supported("G4.3", "Sn4.1"),
    };
    p.multiplicities = {{"G4.2", "G4.3", "ParentRequirement", true}};
    p.roles = {
        {"Tier", RoleType::Int},
        {"ParentRequirement", RoleType::Collection},
        {"TierRequirementMap", RoleType::Map},
        {"W", RoleType::Artifact},
        {"R", RoleType::Artifact},
    };
    return p;
}

// --- U: design assurance -----------------------------------------------------

inline gsn::GsnPattern make_design_assurance() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "U-DesignAssurance";
    p.graph.root = "G5.1";
    p.graph.nodes = {
        goal("G5.1",
             "The design of the {System} at tier {Tier} is sufficient to ensure that the safety "
             "requirements defined at this tier can be satisfied."),
        context("C5.1", "Safety Requirements for tier {Tier}", "Q"),
        goal("G5.2",
             "Design decision {DesignDecision} is appropriate to help ensure that the safety "
             "requirements can be met by the {System}."),
        solution("Sn5.1", "AS Design Justification", "Y"),
        optional_goal("G5.6",
                      "The robustness measures adopted through design decision {DesignDecision} "
                      "support the safety of the {System}."),
        optional_goal("G5.7",
                      "The fault tolerance measures adopted through design decision "
                      "{DesignDecision} support the safety of the {System}."),
        optional_goal("G5.8",
                      "The runtime monitoring provided through design decision {DesignDecision} "
                      "supports the safety of the {System}."),
        solution("Sn5.4", "AS Design Justification (robustness measures)", "Y"),
        solution("Sn5.5", "AS Design Justification (fault tolerance measures)", "Y"),
        solution("Sn5.6", "AS Design Justification (runtime monitoring)", "Y"),
        goal("G5.3", "A sufficiently rigorous design process has been followed for tier {Tier}."),
        solution("Sn5.2", "Design Process for tier {Tier}", "X"),
        goal("G5.4",
             "The tier {Tier} design has been checked for errors that could result in unsafe "
             "outcomes."),
        solution("Sn5.3", "AS Design Review", "Z"),
    };
    p.graph.edges = {
        in_context("G5.1", "C5.1"), supported("G5.1", "G5.2"),  supported("G5.1", "G5.3"),
        supported("G5.1", "G5.4"),  supported("G5.2", "Sn5.1"), supported("G5.2", "G5.6"),
        supported("G5.2", "G5.7"),  supported("G5.2", "G5.8"),  supported("G5.6", "Sn5.4"),
        supported("G5.7", "Sn5.5"), supported("G5.8", "Sn5.6"), supported("G5.3", "Sn5.2"),
        supported("G5.4", "Sn5.3"),
    };
    p.multiplicities = {{"G5.1", "G5.2", "DesignDecision", false}};
    p.roles = {
        {"System", RoleType::Text},   {"Tier", RoleType::Int}, {"DesignDecision", RoleType::Collection},
        {"Q", RoleType::Artifact},    {"X", RoleType::Artifact}, {"Y", RoleType::Artifact},
        {"Z", RoleType::Artifact},
    };
    return p;
}

// --- DD: hazardous failures --------------------------------------------------

inline gsn::GsnPattern make_hazardous_failures() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "DD-HazardousFailures";
    p.graph.root = "G6";
    p.graph.nodes = {
        goal("G6",
             "All of the potentially hazardous failures identified for tier {Tier} of the "
             "{System} design are acceptably managed."),
        goal("G6.1",
             "The potential hazardous failures arising from the tier {Tier} design have been "
             "completely and correctly identified."),
        solution("Sn6.1", "AS Safety Analysis Report", "BB"),
        goal("G6.2", "Appropriate mitigations are in place for each identified potential hazardous failure."),
        goal("G6.3", "Potential hazardous failure {HazardousFailure} is sufficiently addressed."),
        goal("G6.4", "Mitigations are in place for hazardous failure {HazardousFailure}."),
        solution("Sn6.3", "Derived safety requirements mitigating {HazardousFailure}", "Q"),
        solution("Sn6.2", "Design mitigation justification for {HazardousFailure}", "Y"),
        solution("Sn6.5", "Operating concept constraints mitigating {HazardousFailure}", "L"),
        goal("G6.5", "The sufficiency of the chosen mitigations for {HazardousFailure} is justified."),
        solution("Sn6.4", "AS Design Justification (mitigation sufficiency)", "Y"),
    };
    p.graph.edges = {
        supported("G6", "G6.1"),    supported("G6", "G6.2"),    supported("G6.1", "Sn6.1"),
        supported("G6.2", "G6.3"),  supported("G6.3", "G6.4"),  supported("G6.3", "G6.5"),
        supported("G6.4", "Sn6.3"), supported("G6.4", "Sn6.2"), supported("G6.4", "Sn6.5"),
        supported("G6.5", "Sn6.4"),
    };
    p.multiplicities = {{"G6.2", "G6.3", "HazardousFailure", false}};
    p.choices = {{"G6.4", {"Sn6.3", "Sn6.2", "Sn6.5"}, 1, 3}};
    p.roles = {
        {"System", RoleType::Text},  {"Tier", RoleType::Int}, {"HazardousFailure", RoleType::Collection},
        {"BB", RoleType::Artifact},  {"Q", RoleType::Artifact}, {"Y", RoleType::Artifact},
        {"L", RoleType::Artifact},
    };
    return p;
}

// --- PP: out of context operation --------------------------------------------

inline gsn::GsnPattern make_out_of_context() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "PP-OutOfContext";
    p.graph.root = "G7";
    p.graph.nodes = {
        goal("G7",
             "The {System} remains sufficiently safe if it operates outside of the defined "
             "autonomous operating context."),
        context("C7.1", "Operational Domain Model", "B"),
        goal("G7.1", "The {System} will be aware if it is leaving the defined ODM during operation."),
        context("C7.2", "Interpretation of ODM Boundary", "HH"),
        justification("J7.1",
                      "The ODM boundary interpretation is appropriate given the capability of the "
                      "{System} to sense and understand the operating environment."),
        solution("Sn7.1", "ODM Boundary Assessment Report", "II"),
        goal("G7.2",
             "A strategy is implemented which ensures that the {System} remains sufficiently safe "
             "when operating outside of the defined ODM."),
        solution("Sn7.2", "Out of Context Analysis Report", "GG"),
        solution("Sn7.3", "Outside ODM Strategy Justification Report", "NN"),
        solution("Sn7.4", "Outside ODM Verification Report", "OO"),
        goal("G7.3", "The {System} remains sufficiently safe as it transitions across the ODM boundary."),
        goal("G7.11", "The potentially unsafe transitions across the ODM boundary have been identified."),
        goal("G7.12", "The risk associated with the identified boundary transitions is minimised."),
        solution("Sn7.5", "Transition Assessment Report", "KK"),
    };
    p.graph.edges = {
        in_context("G7", "C7.1"),    supported("G7", "G7.1"),     supported("G7", "G7.2"),
        supported("G7", "G7.3"),     in_context("G7.1", "C7.2"),  in_context("G7.1", "J7.1"),
        supported("G7.1", "Sn7.1"),  supported("G7.2", "Sn7.2"),  supported("G7.2", "Sn7.3"),
        supported("G7.2", "Sn7.4"),  supported("G7.3", "G7.11"),  supported("G7.3", "G7.12"),
        supported("G7.11", "Sn7.5"), supported("G7.12", "Sn7.5"),
    };
    p.roles = {
        {"System", RoleType::Text},  {"B", RoleType::Artifact},  {"HH", RoleType::Artifact},
        {"II", RoleType::Artifact},  {"GG", RoleType::Artifact}, {"NN", RoleType::Artifact},
        {"OO", RoleType::Artifact},  {"KK", RoleType::Artifact},
    };
    return p;
}

// --- UU: verification ---------------------------------------------------------

inline gsn::GsnPattern make_verification() {
    using namespace sace::gsn;
    GsnPattern p;
    p.name = "UU-Verification";
    p.graph.root = "G8";
    p.graph.nodes = {
        goal("G8",
             "The verification evidence provided for tier {Tier} is sufficient to demonstrate "
             "that the safety requirements defined at that tier are satisfied."),
        strategy("S8.1", "Argument over the chosen verification strategy."),
        context("C8.1", "Verification Strategy", "RR"),
        justification("J8.1",
                      "The defined verification strategy is justified as appropriate for the "
                      "{System} and its operating context."),
        goal("G8.2",
             "The testing undertaken demonstrates that safety requirement {TestedRequirement} is "
             "satisfied."),
        goal("G8.3", "The test cases relevant to {TestedRequirement} are passed."),
        solution("Sn8.2", "Verification Results (test outcomes)", "TT"),
        goal("G8.4",
             "The test cases are sufficient, given the operating context of the {System}, to "
             "demonstrate that {TestedRequirement} is satisfied."),
        solution("Sn8.1", "AS Verification Log (test case coverage rationale)", "SS"),
        goal("G8.5", "The test platform used is sufficiently representative of the operating domain."),
        solution("Sn8.3", "AS Verification Log (test environment justification)", "SS"),
        goal("G8.6",
             "The formal verification undertaken demonstrates that safety requirement "
             "{ProvenRequirement} is satisfied."),
        goal("G8.7",
             "The formally specified properties relating to {ProvenRequirement} have been proven "
             "to be satisfied."),
        solution("Sn8.4", "Verification Results (formal analysis results)", "TT"),
        goal("G8.10",
             "The formal model used for the analysis is an accurate reflection of the real "
             "{System} in its operating environment."),
        solution("Sn8.5", "AS Verification Log (model assumptions and abstractions)", "SS"),
        goal("G8.8",
             "The specified formal properties are sufficiently representative of "
             "{ProvenRequirement} in the {System} operating context."),
        solution("Sn8.6", "AS Verification Log (property specification rationale)", "SS"),
    };
    p.graph.edges = {
        supported("G8", "S8.1"),    in_context("S8.1", "C8.1"),  in_context("S8.1", "J8.1"),
        supported("S8.1", "G8.2"),  supported("S8.1", "G8.6"),   supported("G8.2", "G8.3"),
        supported("G8.2", "G8.4"),  supported("G8.2", "G8.5"),   supported("G8.3", "Sn8.2"),
        supported("G8.4", "Sn8.1"), supported("G8.5", "Sn8.3"),  supported("G8.6", "G8.7"),
        supported("G8.6", "G8.8"),  supported("G8.7", "Sn8.4"),  supported("G8.7", "G8.10"),
        supported("G8.10", "Sn8.5"), supported("G8.8", "Sn8.6"),
    };
    p.multiplicities = {
        {"S8.1", "G8.2", "TestedRequirement", true},
        {"S8.1", "G8.6", "ProvenRequirement", true},
    };
    p.choices = {{"S8.1", {"G8.2", "G8.6"}, 1, 2}};
    p.roles = {
        {"System", RoleType::Text},
        {"Tier", RoleType::Int},
        {"TestedRequirement", RoleType::Collection},
        {"ProvenRequirement", RoleType::Collection},
        {"RR", RoleType::Artifact},
        {"SS", RoleType::Artifact},
        {"TT", RoleType::Artifact},
    };
    return p;
}

}  // namespace detail

inline const gsn::GsnPattern& get_pattern(PatternId id) {
    static const std::map<PatternId, gsn::GsnPattern> library = {
        {PatternId::Baseline, detail::make_baseline()},
        {PatternId::Decomposition, detail::make_decomposition()},
        {PatternId::OperatingContext, detail::make_operating_context()},
        {PatternId::HazardousScenarios, detail::make_hazardous_scenarios()},
        {PatternId::Soc, detail::make_soc()},
        {PatternId::SafetyRequirements, detail::make_safety_requirements()},
        {PatternId::DesignAssurance, detail::make_design_assurance()},
        {PatternId::HazardousFailures, detail::make_hazardous_failures()},
        {PatternId::OutOfContext, detail::make_out_of_context()},
        {PatternId::Verification, detail::make_verification()},
    };
    return library.at(id);
}

inline std::vector<PatternId> all_pattern_ids() {
    std::vector<PatternId> out;
    for (const auto& [id, name] : pattern_names()) out.push_back(id);
    return out;
}

/// The roles a binding must supply for a pattern, in declaration order.
inline const std::vector<gsn::Role>& required_roles(PatternId id) {
    return get_pattern(id).roles;
}

}  // namespace sace
