#pragma once

// Whole-project snapshot: the manifest plus every typed artifact payload the
// toolkit understands, with the conventional project-root files
// (decisions.json, rod.json, trace_links.json, ontology.json). Loading is
// tolerant of absent artifacts (partial projects are normal); files that
// exist but do not parse raise UnparseableArtifact.

#include "sace/artifacts.hpp"
#include "sace/hazard.hpp"
#include "sace/odm.hpp"
#include "sace/reqlang.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sace {

struct Capability {
    std::string id;
    std::string text;
};

struct OperatingScenario {
    std::string id;
    std::string text;
};

struct CapabilityReduction {
    std::string id;
    std::string capability;
    std::string text;
};

struct SocDefinition {
    std::vector<std::string> requirements;  // tier-0 requirement ids
    std::vector<std::string> rods;          // RodConstraint ids
    std::vector<CapabilityReduction> capability_reductions;
    std::string notes;
};

struct DesignElement {
    std::string id;
    std::string name;
    std::string description;
};

struct DesignDoc {
    std::vector<DesignElement> elements;
};

struct DesignDecision {
    std::string id;
    std::string text;
    bool safety_relevant = false;
    bool robustness = false;
    bool fault_tolerance = false;
    bool runtime_monitoring = false;
};

namespace lint {

enum class LinkKind { Decomposes, Mitigates, Evidences, Constrains };

inline std::string to_string(LinkKind kind) {
    switch (kind) {
        case LinkKind::Decomposes: return "Decomposes";
        case LinkKind::Mitigates: return "Mitigates";
        case LinkKind::Evidences: return "Evidences";
        case LinkKind::Constrains: return "Constrains";
    }
    return "Decomposes";
}

inline LinkKind parse_link_kind(const std::string& text) {
    if (text == "Decomposes") return LinkKind::Decomposes;
    if (text == "Mitigates") return LinkKind::Mitigates;
    if (text == "Evidences") return LinkKind::Evidences;
    if (text == "Constrains") return LinkKind::Constrains;
    fail("UnknownLinkKind", "no trace link kind '" + text + "'");
}

struct TraceEnd {
    std::string kind;  // Requirement | Scenario | Rod | CapabilityReduction | Artifact | ...
    std::string id;
    std::optional<int> tier;
};

struct TraceLink {
    TraceEnd from;
    TraceEnd to;
    LinkKind kind = LinkKind::Decomposes;
    std::string rationale;
};

inline const std::set<std::string>& hazop_guidewords() {
    static const std::set<std::string> words = {"More",      "Less",        "AsWellAs",
                                                "PartOf",    "OtherThan",   "Intermittent",
                                                "ErroneousButCredible"};
    return words;
}

enum class MitigationForm { DesignChange, OperatingConceptLimitation, DerivedRequirement, ExistingDesignSufficient };

inline std::string to_string(MitigationForm form) {
    switch (form) {
        case MitigationForm::DesignChange: return "DesignChange";
        case MitigationForm::OperatingConceptLimitation: return "OperatingConceptLimitation";
        case MitigationForm::DerivedRequirement: return "DerivedRequirement";
        case MitigationForm::ExistingDesignSufficient: return "ExistingDesignSufficient";
    }
    return "DesignChange";
}

inline MitigationForm parse_mitigation_form(const std::string& text) {
    if (text == "DesignChange") return MitigationForm::DesignChange;
    if (text == "OperatingConceptLimitation") return MitigationForm::OperatingConceptLimitation;
    if (text == "DerivedRequirement") return MitigationForm::DerivedRequirement;
    if (text == "ExistingDesignSufficient") return MitigationForm::ExistingDesignSufficient;
    fail("UnknownMitigationForm", "no mitigation form '" + text + "'");
}

struct Mitigation {
    MitigationForm form = MitigationForm::DesignChange;
    std::string target;  // design decision, requirement, or ROD id
    std::string justification;
};

/// One guideword deviation record (payload of artifact BB).
struct HazardousFailureRecord {
    std::string id;
    int tier = 0;
    std::string element;    // design element id from W
    std::string guideword;  // HAZOP guideword or "Other:<text>"
    std::string deviation;
    bool hazardous = false;
    std::vector<Mitigation> mitigations;
};

}  // namespace lint

struct VerificationTestCase {
    std::string id;
    std::string requirement;
    std::string description;
    std::vector<std::string> odm_features;
    std::vector<std::string> scenarios;
    std::string platform;
    bool edge_case = false;
};

struct FormalProperty {
    std::string id;
    std::string requirement;
    std::string property;
    std::string model;
    std::string assumptions;
};

struct VerificationLog {
    std::string strategy;
    std::vector<VerificationTestCase> test_cases;
    std::vector<FormalProperty> formal_properties;
    std::string environment_justification;
};

struct VerificationResult {
    std::string id;  // test case or formal property id
    std::string requirement;
    bool passed = false;
};

// ---------------------------------------------------------------------------
// JSON loaders
// ---------------------------------------------------------------------------

namespace project_detail {

inline std::vector<Capability> capabilities_from_json(const Json& doc) {
    std::vector<Capability> out;
    for (const auto& entry : doc.value("capabilities", Json::array())) {
        out.push_back({entry.at("id").get<std::string>(), entry.value("text", "")});
    }
    return out;
}

inline std::vector<OperatingScenario> scenarios_from_json(const Json& doc) {
    std::vector<OperatingScenario> out;
    for (const auto& entry : doc.value("scenarios", Json::array())) {
        out.push_back({entry.at("id").get<std::string>(), entry.value("text", "")});
    }
    return out;
}

inline SocDefinition soc_from_json(const Json& doc) {
    SocDefinition soc;
    for (const auto& id : doc.value("requirements", Json::array())) {
        soc.requirements.push_back(id.get<std::string>());
    }
    for (const auto& id : doc.value("rods", Json::array())) soc.rods.push_back(id.get<std::string>());
    for (const auto& entry : doc.value("capability_reductions", Json::array())) {
        soc.capability_reductions.push_back({entry.at("id").get<std::string>(),
                                             entry.value("capability", ""), entry.value("text", "")});
    }
    soc.notes = doc.value("notes", "");
    return soc;
}

inline DesignDoc design_from_json(const Json& doc) {
    DesignDoc design;
    for (const auto& entry : doc.value("elements", Json::array())) {
        design.elements.push_back({entry.at("id").get<std::string>(), entry.value("name", ""),
                                   entry.value("description", "")});
    }
    return design;
}

inline std::vector<DesignDecision> design_log_from_json(const Json& doc) {
    std::vector<DesignDecision> out;
    for (const auto& entry : doc.value("decisions", Json::array())) {
        DesignDecision decision;
        decision.id = entry.at("id").get<std::string>();
        decision.text = entry.value("text", "");
        decision.safety_relevant = entry.value("safety_relevant", false);
        decision.robustness = entry.value("robustness", false);
        decision.fault_tolerance = entry.value("fault_tolerance", false);
        decision.runtime_monitoring = entry.value("runtime_monitoring", false);
        out.push_back(std::move(decision));
    }
    return out;
}

inline std::vector<lint::HazardousFailureRecord> failures_from_json(const Json& doc) {
    std::vector<lint::HazardousFailureRecord> out;
    for (const auto& entry : doc.value("records", Json::array())) {
        lint::HazardousFailureRecord record;
        record.id = entry.at("id").get<std::string>();
        record.tier = entry.value("tier", 0);
        record.element = entry.value("element", "");
        record.guideword = entry.value("guideword", "");
        if (!lint::hazop_guidewords().count(record.guideword) &&
            record.guideword.rfind("Other:", 0) != 0) {
            fail("UnparseableArtifact", "failure record " + record.id + " has unknown guideword '" +
                                            record.guideword + "'");
        }
        record.deviation = entry.value("deviation", "");
        record.hazardous = entry.value("hazardous", false);
        for (const auto& mitigation : entry.value("mitigations", Json::array())) {
            record.mitigations.push_back({lint::parse_mitigation_form(mitigation.at("form").get<std::string>()),
                                          mitigation.value("target", ""),
                                          mitigation.value("justification", "")});
        }
        out.push_back(std::move(record));
    }
    return out;
}

inline VerificationLog verification_log_from_json(const Json& doc) {
    VerificationLog log;
    log.strategy = doc.value("strategy", "");
    for (const auto& entry : doc.value("test_cases", Json::array())) {
        VerificationTestCase test_case;
        test_case.id = entry.at("id").get<std::string>();
        test_case.requirement = entry.value("requirement", "");
        test_case.description = entry.value("description", "");
        for (const auto& path : entry.value("odm_features", Json::array())) {
            test_case.odm_features.push_back(path.get<std::string>());
        }
        for (const auto& id : entry.value("scenarios", Json::array())) {
            test_case.scenarios.push_back(id.get<std::string>());
        }
        test_case.platform = entry.value("platform", "");
        test_case.edge_case = entry.value("edge_case", false);
        log.test_cases.push_back(std::move(test_case));
    }
    for (const auto& entry : doc.value("formal_properties", Json::array())) {
        FormalProperty property;
        property.id = entry.at("id").get<std::string>();
        property.requirement = entry.value("requirement", "");
        property.property = entry.value("property", "");
        property.model = entry.value("model", "");
        property.assumptions = entry.value("assumptions", "");
        log.formal_properties.push_back(std::move(property));
    }
    log.environment_justification = doc.value("environment_justification", "");
    return log;
}

inline std::vector<VerificationResult> verification_results_from_json(const Json& doc) {
    std::vector<VerificationResult> out;
    for (const auto& entry : doc.value("results", Json::array())) {
        out.push_back({entry.at("id").get<std::string>(), entry.value("requirement", ""),
                       entry.value("passed", false)});
    }
    return out;
}

inline lint::TraceEnd trace_end_from_json(const Json& doc) {
    lint::TraceEnd end;
    end.kind = doc.at("kind").get<std::string>();
    end.id = doc.at("id").get<std::string>();
    if (doc.contains("tier") && !doc["tier"].is_null()) end.tier = doc["tier"].get<int>();
    return end;
}

inline std::vector<lint::TraceLink> links_from_json(const Json& doc) {
    std::vector<lint::TraceLink> out;
    for (const auto& entry : doc.value("links", Json::array())) {
        lint::TraceLink link;
        link.from = trace_end_from_json(entry.at("from"));
        link.to = trace_end_from_json(entry.at("to"));
        link.kind = lint::parse_link_kind(entry.at("kind").get<std::string>());
        link.rationale = entry.value("rationale", "");
        out.push_back(std::move(link));
    }
    return out;
}

}  // namespace project_detail

// ---------------------------------------------------------------------------
// Project snapshot
// ---------------------------------------------------------------------------

struct Project {
    std::string root;
    ProjectManifest manifest;

    std::optional<odm::OdmModel> odm_model;
    std::vector<Capability> capabilities;
    std::vector<OperatingScenario> scenarios;
    std::vector<hazard::DecisionDoc> decisions;
    std::optional<SocDefinition> soc;
    std::vector<odm::RodConstraint> rods;
    std::map<int, std::vector<req::ReqEntry>> requirements;  // tier -> entries
    std::map<int, DesignDoc> designs;
    std::map<int, std::vector<DesignDecision>> design_logs;
    std::map<int, std::vector<lint::HazardousFailureRecord>> failure_records;
    std::optional<odm::BoundaryRecognizerSpec> recognizer;
    std::optional<odm::AssessmentMatrix> assessment;
    std::optional<odm::TransitionModel> transitions;
    std::optional<VerificationLog> verification_log;
    std::vector<VerificationResult> verification_results;
    bool has_verification_results = false;
    std::vector<lint::TraceLink> links;
    std::optional<req::Ontology> ontology;

    std::vector<std::string> all_requirement_ids() const {
        std::vector<std::string> out;
        for (const auto& [tier, entries] : requirements) {
            for (const auto& entry : entries) out.push_back(entry.id);
        }
        return out;
    }

    /// Children of a requirement id across the tier files.
    std::vector<std::string> requirement_children(const std::string& id) const {
        std::vector<std::string> out;
        for (const auto& [tier, entries] : requirements) {
            for (const auto& entry : entries) {
                if (std::find(entry.parents.begin(), entry.parents.end(), id) != entry.parents.end()) {
                    out.push_back(entry.id);
                }
            }
        }
        return out;
    }
};

/// Regenerated Stage 2 outputs: one classified table per decision point plus
/// the merged hazardous-scenario list (sorted by decision point id).
struct HazardOutputs {
    struct Table {
        hazard::DecisionPoint point;
        std::vector<hazard::SituationRow> rows;
    };
    std::vector<Table> tables;
    std::vector<hazard::HazardousScenario> scenarios;
};

inline HazardOutputs compute_hazards(const Project& project) {
    HazardOutputs outputs;
    for (const auto& doc : project.decisions) {
        auto rows = hazard::classify(doc.point, hazard::enumerate(doc.point), doc.rules);
        auto scenarios = hazard::extract_hazardous(doc.point, rows);
        outputs.tables.push_back({doc.point, std::move(rows)});
        for (auto& scenario : scenarios) outputs.scenarios.push_back(std::move(scenario));
    }
    return outputs;
}

inline Project load_project(const std::string& root) {
    namespace fs = std::filesystem;
    Project project;
    project.root = root;

    const std::string manifest_path = root + "/sace.json";
    if (!fs::exists(manifest_path)) fail("NoManifest", "no sace.json at " + root);
    project.manifest = manifest_from_json(load_json_file(manifest_path));

    // Presence promotes Missing to Draft (in memory only): an authored file
    // counts as available; Validated still requires `validate`.
    for (auto& record : project.manifest.artifacts) {
        if (record.status == ArtifactStatus::Missing && !record.path.empty() &&
            fs::exists(root + "/" + record.path)) {
            record.status = ArtifactStatus::Draft;
        }
    }

    auto payload = [&](ArtifactCode code, std::optional<int> tier = std::nullopt) -> std::optional<Json> {
        const ArtifactRecord* record = project.manifest.find(code, tier);
        if (record == nullptr || record->status == ArtifactStatus::Missing || record->path.empty()) {
            return std::nullopt;
        }
        if (!fs::exists(root + "/" + record->path)) return std::nullopt;
        return load_json_file(root + "/" + record->path);
    };

    if (auto doc = payload(ArtifactCode::B)) project.odm_model = odm::odm_from_json(*doc);
    if (auto doc = payload(ArtifactCode::D)) project.capabilities = project_detail::capabilities_from_json(*doc);
    if (auto doc = payload(ArtifactCode::E)) project.scenarios = project_detail::scenarios_from_json(*doc);
    if (auto doc = payload(ArtifactCode::L)) project.soc = project_detail::soc_from_json(*doc);
    if (auto doc = payload(ArtifactCode::HH)) project.recognizer = odm::recognizer_from_json(*doc);
    if (auto doc = payload(ArtifactCode::II)) project.assessment = odm::assessment_matrix_from_json(*doc);
    if (auto doc = payload(ArtifactCode::JJ)) project.transitions = odm::transition_model_from_json(*doc);
    if (auto doc = payload(ArtifactCode::SS)) {
        project.verification_log = project_detail::verification_log_from_json(*doc);
    }
    if (auto doc = payload(ArtifactCode::TT)) {
        project.verification_results = project_detail::verification_results_from_json(*doc);
        project.has_verification_results = true;
    }
    for (int tier = 0; tier < std::max(project.manifest.tiers, 1); ++tier) {
        if (auto doc = payload(ArtifactCode::Q, tier)) {
            project.requirements[tier] = req::req_entries_from_json(*doc);
        }
        if (auto doc = payload(ArtifactCode::W, tier)) {
            project.designs[tier] = project_detail::design_from_json(*doc);
        }
        if (auto doc = payload(ArtifactCode::V, tier)) {
            project.design_logs[tier] = project_detail::design_log_from_json(*doc);
        }
        if (auto doc = payload(ArtifactCode::BB, tier)) {
            project.failure_records[tier] = project_detail::failures_from_json(*doc);
        }
    }

    auto optional_file = [&](const std::string& name) -> std::optional<Json> {
        if (!fs::exists(root + "/" + name)) return std::nullopt;
        return load_json_file(root + "/" + name);
    };
    if (auto doc = optional_file("decisions.json")) project.decisions = hazard::decisions_from_json(*doc);
    if (auto doc = optional_file("rod.json")) project.rods = odm::rods_from_json(*doc);
    if (auto doc = optional_file("trace_links.json")) project.links = project_detail::links_from_json(*doc);
    if (auto doc = optional_file("ontology.json")) project.ontology = req::ontology_from_json(*doc);

    return project;
}

}  // namespace sace
