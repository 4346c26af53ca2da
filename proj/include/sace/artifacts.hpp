#pragma once

// Catalog of SACE artifact types, the per-stage input/output dependency
// graph, stage-readiness checking and staleness propagation over a
// tier-indexed project manifest (sace.json).

#include "sace/core.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sace {

// ---------------------------------------------------------------------------
// Artifact identifiers
// ---------------------------------------------------------------------------

enum class ArtifactCode {
    A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R, S, T, U, V, W, X, Y, Z,
    AA, BB, DD, EE, FF, GG, HH, II, JJ, KK, LL, MM, NN, OO, PP, QQ, RR, SS, TT,
    UU, VV, WW, XX, YY,
};

inline constexpr int kArtifactCount = 50;

struct ArtifactInfo {
    const char* code;
    const char* title;
};

// Code "CC" is intentionally absent: it is never defined and constructing it
// is an error.
inline const std::array<ArtifactInfo, kArtifactCount>& artifact_table() {
    static const std::array<ArtifactInfo, kArtifactCount> table = {{
        {"A", "AS Concept Definition"},
        {"B", "Operational Domain Model"},
        {"C", "ODM Validation Report"},
        {"D", "Autonomous Capabilities Definition"},
        {"E", "Operating Scenarios Definition"},
        {"F", "Operating Scenarios Validation Report"},
        {"G", "AS Operating Context Assurance Argument Pattern"},
        {"H", "AS Operating Context Assurance Argument"},
        {"I", "AS Hazardous Scenarios Assurance Argument Pattern"},
        {"J", "AS Hazardous Scenarios Assurance Argument"},
        {"K", "Definition of Sufficiently Safe"},
        {"L", "Safe Operating Concept Definition"},
        {"M", "SOC Justification Report"},
        {"N", "SOC Assurance Argument Pattern"},
        {"O", "SOC Assurance Argument"},
        {"P", "Safety Requirements from Previous Tier"},
        {"Q", "Safety Requirements for Tier"},
        {"R", "Safety Requirements Justification Report"},
        {"S", "Safety Requirements Argument Pattern"},
        {"T", "Safety Requirements Argument"},
        {"U", "AS Design Assurance Argument Pattern"},
        {"V", "AS Development Log"},
        {"W", "Tier Design"},
        {"X", "Design Process for Tier"},
        {"Y", "AS Design Justification"},
        {"Z", "AS Design Review"},
        {"AA", "AS Design Assurance Argument"},
        {"BB", "AS Safety Analysis Report"},
        {"DD", "Hazardous Failures Argument Pattern"},
        {"EE", "Hazardous Failures Argument"},
        {"FF", "Key Features of Environment Outside ODM"},
        {"GG", "Out of Context Analysis Report"},
        {"HH", "Interpretation of ODM Boundary"},
        {"II", "ODM Boundary Assessment Report"},
        {"JJ", "ODM Transition Model"},
        {"KK", "Transition Assessment Report"},
        {"LL", "Stakeholder Risk Acceptance Definition"},
        {"MM", "Outside ODM Minimum Risk Strategy"},
        {"NN", "Outside ODM Strategy Justification Report"},
        {"OO", "Outside ODM Verification Report"},
        {"PP", "Out of Context Operation Assurance Argument Pattern"},
        {"QQ", "Out of Context Operation Assurance Argument"},
        {"RR", "Verification Strategy"},
        {"SS", "AS Verification Log"},
        {"TT", "Verification Results"},
        {"UU", "AS Verification Argument Pattern"},
        {"VV", "AS Verification Argument"},
        {"WW", "AS Decision Analysis Report"},
        {"XX", "AS Hazardous Scenarios Definition"},
        {"YY", "AS Hazardous Scenarios Validation Report"},
    }};
    return table;
}

inline std::string to_string(ArtifactCode code) {
    return artifact_table()[static_cast<std::size_t>(code)].code;
}

inline std::string artifact_title(ArtifactCode code) {
    return artifact_table()[static_cast<std::size_t>(code)].title;
}

inline ArtifactCode parse_artifact_code(const std::string& text) {
    const auto& table = artifact_table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (text == table[i].code) return static_cast<ArtifactCode>(i);
    }
    fail("UnknownArtifact", "no artifact with id '" + text + "'");
}

inline std::vector<ArtifactCode> all_artifact_codes() {
    std::vector<ArtifactCode> out;
    out.reserve(kArtifactCount);
    for (int i = 0; i < kArtifactCount; ++i) out.push_back(static_cast<ArtifactCode>(i));
    return out;
}

/// Artifacts whose records carry a tier index (one instance per tier of
/// design decomposition).
inline const std::set<ArtifactCode>& tier_indexed_artifacts() {
    static const std::set<ArtifactCode> set = {
        ArtifactCode::P,  ArtifactCode::Q,  ArtifactCode::R,  ArtifactCode::T,
        ArtifactCode::V,  ArtifactCode::W,  ArtifactCode::X,  ArtifactCode::Y,
        ArtifactCode::Z,  ArtifactCode::AA, ArtifactCode::BB, ArtifactCode::EE,
    };
    return set;
}

inline bool is_tier_indexed(ArtifactCode code) {
    return tier_indexed_artifacts().count(code) != 0;
}

/// Argument patterns are shipped by the tool itself; they are stage inputs
/// but never user files.
inline const std::set<ArtifactCode>& builtin_pattern_artifacts() {
    static const std::set<ArtifactCode> set = {
        ArtifactCode::G,  ArtifactCode::I,  ArtifactCode::N,  ArtifactCode::S,
        ArtifactCode::U,  ArtifactCode::DD, ArtifactCode::PP, ArtifactCode::UU,
    };
    return set;
}

inline bool is_builtin_pattern(ArtifactCode code) {
    return builtin_pattern_artifacts().count(code) != 0;
}

/// Documents the user must author; the process never produces them.
inline const std::set<ArtifactCode>& pure_input_artifacts() {
    static const std::set<ArtifactCode> set = {
        ArtifactCode::A,  ArtifactCode::K,  ArtifactCode::X,
        ArtifactCode::FF, ArtifactCode::JJ, ArtifactCode::LL,
    };
    return set;
}

// ---------------------------------------------------------------------------
// Stage specifications
// ---------------------------------------------------------------------------

struct StageSpec {
    int number;
    std::string name;
    std::vector<ArtifactCode> inputs;
    // Outputs are kept in activity order: within a stage, each output may
    // draw on the stage inputs plus every output produced before it.
    std::vector<ArtifactCode> outputs;
};

inline const std::vector<StageSpec>& stage_specs() {
    using C = ArtifactCode;
    static const std::vector<StageSpec> stages = {
        {1, "Operating Context Assurance",
         {C::A, C::G},
         {C::D, C::B, C::C, C::E, C::F, C::H}},
        {2, "AS Hazardous Scenarios Identification",
         {C::B, C::E, C::I},
         {C::WW, C::XX, C::YY, C::J}},
        {3, "Safe Operating Concept Assurance",
         {C::B, C::D, C::E, C::XX, C::K, C::N},
         {C::L, C::M, C::O}},
        // P (the previous tier's requirements) is materialised by this stage
        // for the tier under consideration, alongside Q.
        {4, "AS Safety Requirements Assurance",
         {C::P, C::W, C::S},
         {C::P, C::Q, C::R, C::T}},
        {5, "AS Design Assurance",
         {C::Q, C::X, C::U},
         {C::W, C::V, C::Y, C::Z, C::AA}},
        {6, "Hazardous Failures Management",
         {C::B, C::W, C::DD},
         {C::BB, C::Y, C::Q, C::EE}},
        {7, "Out of Context Operation Assurance",
         {C::B, C::FF, C::JJ, C::LL, C::PP},
         {C::GG, C::HH, C::II, C::KK, C::MM, C::NN, C::OO, C::QQ}},
        {8, "AS Verification Assurance",
         {C::B, C::D, C::E, C::L, C::Q, C::UU},
         {C::RR, C::SS, C::TT, C::VV}},
    };
    return stages;
}

inline const StageSpec& stage_spec(int number) {
    if (number < 1 || number > 8) fail("UnknownStage", "stage must be 1..8, got " + std::to_string(number));
    return stage_specs()[static_cast<std::size_t>(number - 1)];
}

/// Stages whose inputs are tier-indexed and therefore need a tier argument.
inline bool stage_requires_tier(int number) {
    return number == 4 || number == 5 || number == 6;
}

// ---------------------------------------------------------------------------
// Artifact-level dependency edges
// ---------------------------------------------------------------------------

/// Direct dependencies of `code`, unioned over every stage that produces it:
/// the producing stage's inputs plus outputs earlier in that stage's activity
/// order. Self-edges are dropped.
inline std::set<ArtifactCode> direct_dependencies(ArtifactCode code) {
    std::set<ArtifactCode> deps;
    for (const auto& stage : stage_specs()) {
        auto pos = std::find(stage.outputs.begin(), stage.outputs.end(), code);
        if (pos == stage.outputs.end()) continue;
        for (auto in : stage.inputs) deps.insert(in);
        for (auto it = stage.outputs.begin(); it != pos; ++it) deps.insert(*it);
    }
    deps.erase(code);
    return deps;
}

inline bool is_stage_output(ArtifactCode code) {
    for (const auto& stage : stage_specs()) {
        if (std::find(stage.outputs.begin(), stage.outputs.end(), code) != stage.outputs.end()) return true;
    }
    return false;
}

/// Transitive closure of upstream artifacts feeding `code`'s producing
/// stage(s). Built-in pattern artifacts are the tool's own inputs and are
/// excluded from the result.
inline std::set<ArtifactCode> provenance(ArtifactCode code) {
    if (!is_stage_output(code)) {
        fail("NotAnOutput", "artifact " + to_string(code) + " appears in no stage's outputs");
    }
    std::set<ArtifactCode> closure;
    std::vector<ArtifactCode> frontier = {code};
    std::set<ArtifactCode> seen = {code};
    while (!frontier.empty()) {
        ArtifactCode current = frontier.back();
        frontier.pop_back();
        for (ArtifactCode dep : direct_dependencies(current)) {
            closure.insert(dep);
            if (seen.insert(dep).second) frontier.push_back(dep);
        }
    }
    for (ArtifactCode pattern : builtin_pattern_artifacts()) closure.erase(pattern);
    return closure;
}

// ---------------------------------------------------------------------------
// Project manifest (sace.json)
// ---------------------------------------------------------------------------

enum class ArtifactStatus { Missing, Draft, Validated };

inline std::string to_string(ArtifactStatus status) {
    switch (status) {
        case ArtifactStatus::Missing: return "Missing";
        case ArtifactStatus::Draft: return "Draft";
        case ArtifactStatus::Validated: return "Validated";
    }
    return "Missing";
}

inline ArtifactStatus parse_status(const std::string& text) {
    if (text == "Missing") return ArtifactStatus::Missing;
    if (text == "Draft") return ArtifactStatus::Draft;
    if (text == "Validated") return ArtifactStatus::Validated;
    fail("UnknownStatus", "no artifact status '" + text + "'");
}

struct ArtifactRecord {
    ArtifactCode id = ArtifactCode::A;
    std::optional<int> tier;
    std::string path;
    ArtifactStatus status = ArtifactStatus::Missing;
    std::string checksum;      // content hash recorded at validation time
    std::string validated_at;  // informational timestamp

    std::string locus() const {
        std::string out = to_string(id);
        if (tier) out += "@" + std::to_string(*tier);
        return out;
    }
};

struct ProjectManifest {
    std::string name;
    int tiers = 1;
    std::vector<ArtifactRecord> artifacts;

    const ArtifactRecord* find(ArtifactCode id, std::optional<int> tier = std::nullopt) const {
        for (const auto& record : artifacts) {
            if (record.id == id && record.tier == tier) return &record;
        }
        return nullptr;
    }

    ArtifactRecord* find(ArtifactCode id, std::optional<int> tier = std::nullopt) {
        for (auto& record : artifacts) {
            if (record.id == id && record.tier == tier) return &record;
        }
        return nullptr;
    }

    bool available(ArtifactCode id, std::optional<int> tier = std::nullopt) const {
        const ArtifactRecord* record = find(id, tier);
        return record != nullptr && record->status != ArtifactStatus::Missing;
    }

    void sort_records() {
        std::stable_sort(artifacts.begin(), artifacts.end(),
                         [](const ArtifactRecord& a, const ArtifactRecord& b) {
                             if (a.id != b.id) return a.id < b.id;
                             return a.tier.value_or(-1) < b.tier.value_or(-1);
                         });
    }
};

inline ProjectManifest manifest_from_json(const Json& doc) {
    ProjectManifest manifest;
    manifest.name = doc.value("name", "");
    manifest.tiers = doc.value("tiers", 1);
    for (const auto& entry : doc.value("artifacts", Json::array())) {
        ArtifactRecord record;
        record.id = parse_artifact_code(entry.at("id").get<std::string>());
        if (is_builtin_pattern(record.id)) {
            fail("BuiltinArtifact",
                 "pattern artifact " + to_string(record.id) + " is supplied by the tool, not the project");
        }
        if (entry.contains("tier") && !entry["tier"].is_null()) {
            record.tier = entry["tier"].get<int>();
            if (*record.tier < 0) fail("BadTier", "tier must be non-negative");
        }
        if (record.tier.has_value() != is_tier_indexed(record.id)) {
            fail("TierMismatch", "artifact " + to_string(record.id) +
                                     (is_tier_indexed(record.id) ? " requires a tier index"
                                                                 : " must not carry a tier index"));
        }
        record.path = entry.value("path", "");
        record.status = parse_status(entry.value("status", "Missing"));
        record.checksum = entry.value("checksum", "");
        record.validated_at = entry.value("validated_at", "");
        manifest.artifacts.push_back(std::move(record));
    }
    return manifest;
}

inline Json manifest_to_json(const ProjectManifest& manifest) {
    Json doc;
    doc["name"] = manifest.name;
    doc["tiers"] = manifest.tiers;
    doc["artifacts"] = Json::array();
    for (const auto& record : manifest.artifacts) {
        Json entry;
        entry["id"] = to_string(record.id);
        if (record.tier) entry["tier"] = *record.tier;
        entry["path"] = record.path;
        entry["status"] = to_string(record.status);
        entry["checksum"] = record.checksum;
        entry["validated_at"] = record.validated_at;
        doc["artifacts"].push_back(std::move(entry));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Stage readiness
// ---------------------------------------------------------------------------

enum class InputState { Present, Missing, BuiltIn };

struct ReadinessEntry {
    ArtifactCode input = ArtifactCode::A;
    std::optional<int> tier;
    InputState state = InputState::Missing;

    std::string locus() const {
        std::string out = to_string(input);
        if (tier) out += "@" + std::to_string(*tier);
        return out;
    }
};

struct ReadinessReport {
    int stage = 0;
    std::optional<int> tier;
    std::vector<ReadinessEntry> entries;
    bool ready = false;

    std::vector<std::string> missing() const {
        std::vector<std::string> out;
        for (const auto& entry : entries) {
            if (entry.state == InputState::Missing) out.push_back(entry.locus());
        }
        return out;
    }
};

/// P at tier n is the previous tier's requirements: an explicit P record
/// satisfies it, otherwise Q at tier n-1 does, and at tier 0 the SOC (L)
/// plays that role.
inline bool previous_tier_requirements_available(const ProjectManifest& project, int tier) {
    if (project.available(ArtifactCode::P, tier)) return true;
    if (tier == 0) return project.available(ArtifactCode::L);
    return project.available(ArtifactCode::Q, tier - 1);
}

inline ReadinessReport stage_readiness(const ProjectManifest& project, int stage_number,
                                       std::optional<int> tier = std::nullopt) {
    const StageSpec& stage = stage_spec(stage_number);
    if (stage_requires_tier(stage_number) && !tier) {
        fail("TierRequired", "stage " + std::to_string(stage_number) + " consumes tier-indexed inputs");
    }

    ReadinessReport report;
    report.stage = stage_number;
    report.tier = tier;
    report.ready = true;
    for (ArtifactCode input : stage.inputs) {
        ReadinessEntry entry;
        entry.input = input;
        if (is_builtin_pattern(input)) {
            entry.state = InputState::BuiltIn;
            report.entries.push_back(entry);
            continue;
        }
        bool present = false;
        if (is_tier_indexed(input)) {
            if (tier) {
                entry.tier = tier;
                present = (input == ArtifactCode::P)
                              ? previous_tier_requirements_available(project, *tier)
                              : project.available(input, tier);
            } else {
                // Tier-indexed input consulted without a tier (stage 8's Q):
                // any tier counts.
                present = std::any_of(project.artifacts.begin(), project.artifacts.end(),
                                      [&](const ArtifactRecord& record) {
                                          return record.id == input &&
                                                 record.status != ArtifactStatus::Missing;
                                      });
            }
        } else {
            present = project.available(input);
        }
        entry.state = present ? InputState::Present : InputState::Missing;
        if (!present) report.ready = false;
        report.entries.push_back(entry);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Staleness
// ---------------------------------------------------------------------------

struct StaleFinding {
    ArtifactRecord artifact;
    std::string reason;
};

/// Returns validated artifacts with at least one upstream artifact whose
/// file content no longer matches the checksum recorded at validation.
/// `root` is the project directory against which record paths resolve.
inline std::vector<StaleFinding> stale_check(const ProjectManifest& project, const std::string& root) {
    // Records whose on-disk content drifted from the recorded checksum.
    std::vector<const ArtifactRecord*> changed;
    for (const auto& record : project.artifacts) {
        if (record.checksum.empty() || record.path.empty()) continue;
        std::string current;
        try {
            current = fnv1a_hex(read_file(root + "/" + record.path));
        } catch (const SaceError&) {
            continue;  // vanished files are a readiness problem, not staleness
        }
        if (current != record.checksum) changed.push_back(&record);
    }
    if (changed.empty()) return {};

    std::vector<StaleFinding> findings;
    for (const auto& record : project.artifacts) {
        if (record.status != ArtifactStatus::Validated) continue;
        if (!is_stage_output(record.id)) continue;
        std::set<ArtifactCode> upstream = provenance(record.id);
        for (const ArtifactRecord* change : changed) {
            if (change == &record) continue;
            if (!upstream.count(change->id)) continue;
            // Tier compatibility: an untiered change affects everything
            // downstream; a tiered change affects same-or-higher tiers.
            if (change->tier && record.tier && *change->tier > *record.tier) continue;
            findings.push_back({record, "upstream " + change->locus() + " changed after validation"});
            break;
        }
    }
    return findings;
}

}  // namespace sace
