#pragma once

// Cross-artifact completeness and traceability linting. Completeness breaks
// in the safety argument are Errors (E1xx); verification-coverage gaps are
// Warnings (W2xx). Rule codes are stable:
//
//   E101 hazardous scenario without a Mitigates link from an SOC
//        requirement, ROD, or capability reduction
//   E102 tier-n requirement (n >= 1) without a parent decomposition link
//   E103 trace link with an empty rationale
//   E104 hazardous failure record with no mitigations
//   E105 DerivedRequirement mitigation whose target requirement does not exist
//   E106 OperatingConceptLimitation mitigation not reflected by any ROD
//   E107 assembled-argument claim point without an attached confidence argument
//   W201 safety requirement with neither a test case nor a formal property
//   W202 ODM leaf feature never referenced by a test case
//   W203 operating scenario never referenced by a test case
//   W204 no test case tagged as an edge case
//   W205 leaf requirement without verification results

#include "sace/assemble.hpp"
#include "sace/project.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sace::lint {

enum class Severity { Error, Warning };

inline std::string to_string(Severity severity) {
    return severity == Severity::Error ? "Error" : "Warning";
}

struct LintFinding {
    std::string code;
    Severity severity = Severity::Error;
    std::string locus;
    std::string message;
};

namespace lint_detail {

inline void add(std::vector<LintFinding>& findings, std::string code, Severity severity,
                std::string locus, std::string message) {
    findings.push_back({std::move(code), severity, std::move(locus), std::move(message)});
}

/// Trace links from both sources: the explicit trace_links.json file and the
/// implicit Decomposes links carried by requirement entries (parents +
/// rationale).
inline std::vector<TraceLink> all_links(const Project& project) {
    std::vector<TraceLink> links = project.links;
    for (const auto& [tier, entries] : project.requirements) {
        if (tier == 0) continue;  // tier 0 descends from the SOC itself
        for (const auto& entry : entries) {
            for (const auto& parent : entry.parents) {
                TraceLink link;
                link.from = {"Requirement", entry.id, tier};
                link.to = {"Requirement", parent, tier - 1};
                link.kind = LinkKind::Decomposes;
                link.rationale = entry.rationale;
                links.push_back(std::move(link));
            }
        }
    }
    return links;
}

}  // namespace lint_detail

inline std::vector<LintFinding> lint(const Project& project) {
    using lint_detail::add;
    std::vector<LintFinding> findings;

    HazardOutputs hazards = compute_hazards(project);
    std::vector<TraceLink> links = lint_detail::all_links(project);

    std::set<std::string> requirement_ids;
    for (const auto& id : project.all_requirement_ids()) requirement_ids.insert(id);
    std::set<std::string> soc_requirements;
    if (project.soc) soc_requirements.insert(project.soc->requirements.begin(), project.soc->requirements.end());
    std::set<std::string> rod_ids;
    for (const auto& rod : project.rods) rod_ids.insert(rod.id);
    std::set<std::string> reduction_ids;
    if (project.soc) {
        for (const auto& reduction : project.soc->capability_reductions) reduction_ids.insert(reduction.id);
    }

    // E101: every hazardous scenario needs a mitigation route.
    for (const auto& scenario : hazards.scenarios) {
        bool mitigated = false;
        for (const auto& link : links) {
            if (link.kind != LinkKind::Mitigates || link.to.id != scenario.id) continue;
            bool valid_requirement = link.from.kind == "Requirement" &&
                                     (soc_requirements.count(link.from.id) || requirement_ids.count(link.from.id));
            bool valid_rod = link.from.kind == "Rod" && rod_ids.count(link.from.id);
            bool valid_reduction = link.from.kind == "CapabilityReduction" && reduction_ids.count(link.from.id);
            if (valid_requirement || valid_rod || valid_reduction) {
                mitigated = true;
                break;
            }
        }
        if (!mitigated) {
            add(findings, "E101", Severity::Error, scenario.id,
                "hazardous scenario has no Mitigates link from a safety requirement, ROD or capability reduction");
        }
    }

    // E102: tier-n requirements trace to a parent.
    for (const auto& [tier, entries] : project.requirements) {
        if (tier == 0) continue;
        std::set<std::string> previous;
        auto previous_entries = project.requirements.find(tier - 1);
        if (previous_entries != project.requirements.end()) {
            for (const auto& entry : previous_entries->second) previous.insert(entry.id);
        }
        for (const auto& entry : entries) {
            if (entry.parents.empty()) {
                add(findings, "E102", Severity::Error, entry.id,
                    "tier " + std::to_string(tier) + " requirement has no Decomposes link to a parent");
                continue;
            }
            for (const auto& parent : entry.parents) {
                if (!previous.count(parent)) {
                    add(findings, "E102", Severity::Error, entry.id,
                        "names unknown parent requirement " + parent + " at tier " + std::to_string(tier - 1));
                }
            }
        }
    }

    // E103: rich traceability means every link carries a rationale.
    for (const auto& link : links) {
        if (link.rationale.empty()) {
            add(findings, "E103", Severity::Error, link.from.id + "->" + link.to.id,
                "trace link has an empty rationale");
        }
    }

    // E104/E105/E106: hazardous failure mitigation records.
    for (const auto& [tier, records] : project.failure_records) {
        for (const auto& record : records) {
            if (record.hazardous && record.mitigations.empty()) {
                add(findings, "E104", Severity::Error, record.id,
                    "hazardous failure has no mitigations");
            }
            for (const auto& mitigation : record.mitigations) {
                if (mitigation.form == MitigationForm::DerivedRequirement &&
                    !requirement_ids.count(mitigation.target)) {
                    add(findings, "E105", Severity::Error, record.id,
                        "derived-requirement mitigation targets unknown requirement " + mitigation.target);
                }
                if (mitigation.form == MitigationForm::OperatingConceptLimitation &&
                    !rod_ids.count(mitigation.target)) {
                    add(findings, "E106", Severity::Error, record.id,
                        "operating-concept mitigation is not reflected by any ROD (target " +
                            mitigation.target + ")");
                }
            }
        }
    }

    // E107: claim points of the assembled argument must carry confidence
    // arguments. Assembly runs leniently: gaps become findings, not crashes.
    {
        AssembledCase assembled = assemble_full_case(project, /*lenient=*/true);
        // Without even a baseline there is no assembled argument whose claim
        // points could be checked; readiness reporting covers that state.
        if (assembled.baseline_built) {
            for (const auto& site : assembled.sites) {
                if (site.complete()) continue;
                std::string message = "claim point has no attached confidence argument";
                if (!site.problems.empty()) message += " (" + site.problems.front() + ")";
                add(findings, "E107", Severity::Error, site.kind, message);
            }
        }
    }

    // W201: verification coverage per requirement.
    for (const auto& [tier, entries] : project.requirements) {
        for (const auto& entry : entries) {
            bool tested = false, proven = false;
            if (project.verification_log) {
                tested = std::any_of(project.verification_log->test_cases.begin(),
                                     project.verification_log->test_cases.end(),
                                     [&](const VerificationTestCase& t) { return t.requirement == entry.id; });
                proven = std::any_of(project.verification_log->formal_properties.begin(),
                                     project.verification_log->formal_properties.end(),
                                     [&](const FormalProperty& p) { return p.requirement == entry.id; });
            }
            if (!tested && !proven) {
                add(findings, "W201", Severity::Warning, entry.id,
                    "requirement has neither a test case nor a formal property");
            }
        }
    }

    // W202/W203: ODM and scenario coverage by test cases.
    std::set<std::string> referenced_features, referenced_scenarios;
    bool any_edge_case = false;
    if (project.verification_log) {
        for (const auto& test_case : project.verification_log->test_cases) {
            referenced_features.insert(test_case.odm_features.begin(), test_case.odm_features.end());
            referenced_scenarios.insert(test_case.scenarios.begin(), test_case.scenarios.end());
            any_edge_case |= test_case.edge_case;
        }
    }
    if (project.odm_model) {
        for (const auto& path : odm::leaf_paths(*project.odm_model)) {
            if (!referenced_features.count(path)) {
                add(findings, "W202", Severity::Warning, path,
                    "ODM leaf feature is never referenced by a test case");
            }
        }
    }
    for (const auto& scenario : project.scenarios) {
        if (!referenced_scenarios.count(scenario.id)) {
            add(findings, "W203", Severity::Warning, scenario.id,
                "operating scenario is never referenced by a test case");
        }
    }

    // W204: at least one edge case.
    if (!any_edge_case) {
        add(findings, "W204", Severity::Warning, "SS", "no test case is tagged as an edge case");
    }

    // W205: leaf requirements need verification results.
    for (const auto& [tier, entries] : project.requirements) {
        for (const auto& entry : entries) {
            if (!project.requirement_children(entry.id).empty()) continue;
            bool has_result = std::any_of(project.verification_results.begin(),
                                          project.verification_results.end(),
                                          [&](const VerificationResult& r) { return r.requirement == entry.id; });
            if (!has_result) {
                add(findings, "W205", Severity::Warning, entry.id,
                    "leaf requirement has no verification results");
            }
        }
    }

    std::stable_sort(findings.begin(), findings.end(), [](const LintFinding& a, const LintFinding& b) {
        if (a.code != b.code) return a.code < b.code;
        return a.locus < b.locus;
    });
    return findings;
}

inline bool has_errors(const std::vector<LintFinding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const LintFinding& f) { return f.severity == Severity::Error; });
}

inline std::string findings_to_text(const std::vector<LintFinding>& findings) {
    std::string out;
    for (const auto& finding : findings) {
        out += finding.code + " " + finding.locus + " " + finding.message + "\n";
    }
    return out;
}

inline Json findings_to_json(const std::vector<LintFinding>& findings) {
    Json doc;
    doc["findings"] = Json::array();
    int errors = 0, warnings = 0;
    for (const auto& finding : findings) {
        (finding.severity == Severity::Error ? errors : warnings) += 1;
        doc["findings"].push_back(Json{{"code", finding.code},
                                       {"severity", to_string(finding.severity)},
                                       {"locus", finding.locus},
                                       {"message", finding.message}});
    }
    doc["errors"] = errors;
    doc["warnings"] = warnings;
    return doc;
}

// ---------------------------------------------------------------------------
// Trace matrix
// ---------------------------------------------------------------------------

struct TraceMatrixRow {
    int tier = 0;
    std::string requirement;
    std::vector<std::string> parents;
    std::vector<std::string> children;
    std::vector<std::string> evidence;   // test cases, properties, result ids
    std::vector<std::string> scenarios;  // hazardous scenarios this requirement mitigates
};

/// One row per requirement across all tiers, losslessly derived from the
/// trace links and verification records.
inline std::vector<TraceMatrixRow> trace_matrix(const Project& project) {
    std::vector<TraceMatrixRow> rows;
    for (const auto& [tier, entries] : project.requirements) {
        for (const auto& entry : entries) {
            TraceMatrixRow row;
            row.tier = tier;
            row.requirement = entry.id;
            row.parents = entry.parents;
            row.children = project.requirement_children(entry.id);
            if (project.verification_log) {
                for (const auto& test_case : project.verification_log->test_cases) {
                    if (test_case.requirement == entry.id) row.evidence.push_back(test_case.id);
                }
                for (const auto& property : project.verification_log->formal_properties) {
                    if (property.requirement == entry.id) row.evidence.push_back(property.id);
                }
            }
            for (const auto& link : project.links) {
                if (link.kind == LinkKind::Mitigates && link.from.kind == "Requirement" &&
                    link.from.id == entry.id) {
                    row.scenarios.push_back(link.to.id);
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline std::string matrix_to_text(const std::vector<TraceMatrixRow>& rows) {
    auto joined = [](const std::vector<std::string>& items) {
        std::string out;
        for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
        return out.empty() ? "-" : out;
    };
    std::vector<std::array<std::string, 6>> cells;
    cells.push_back({"Tier", "Requirement", "Parents", "Children", "Evidence", "Mitigates"});
    for (const auto& row : rows) {
        cells.push_back({std::to_string(row.tier), row.requirement, joined(row.parents),
                         joined(row.children), joined(row.evidence), joined(row.scenarios)});
    }
    std::array<std::size_t, 6> widths{};
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < 6; ++i) widths[i] = std::max(widths[i], line[i].size());
    }
    std::string out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < 6; ++i) {
            out += line[i];
            out += std::string(widths[i] - line[i].size() + 2, ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    }
    return out;
}

inline Json matrix_to_json(const std::vector<TraceMatrixRow>& rows) {
    Json doc = Json::array();
    for (const auto& row : rows) {
        doc.push_back(Json{{"tier", row.tier},
                           {"requirement", row.requirement},
                           {"parents", row.parents},
                           {"children", row.children},
                           {"evidence", row.evidence},
                           {"mitigates", row.scenarios}});
    }
    return doc;
}

}  // namespace sace::lint
