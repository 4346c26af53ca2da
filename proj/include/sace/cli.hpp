#pragma once

// Command-line front end. The project root is the current directory unless
// SACE_PROJECT points elsewhere. Exit codes: 0 success, 1 failed checks or
// lint errors, 2 usage errors, 3 unparseable artifacts.

#include "sace/assemble.hpp"
#include "sace/lint.hpp"
#include "sace/project.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>

namespace sace::cli {

namespace cli_detail {

inline std::string project_root() {
    const char* env = std::getenv("SACE_PROJECT");
    if (env != nullptr && *env != '\0') return env;
    return std::filesystem::current_path().string();
}

inline std::string timestamp_now() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void write_json(const std::string& path, const Json& doc) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    write_file(path, doc.dump(2) + "\n");
}

inline void save_manifest(const std::string& root, const ProjectManifest& manifest) {
    write_json(root + "/sace.json", manifest_to_json(manifest));
}

// --- init -------------------------------------------------------------------

inline int run_init(const std::string& root, std::ostream& out) {
    namespace fs = std::filesystem;
    if (fs::exists(root + "/sace.json")) {
        std::cerr << "sace.json already exists at " << root << "\n";
        return 1;
    }
    for (const char* dir : {"docs", "requirements", "design", "design_log", "hazards",
                            "verification", "traces", "out"}) {
        fs::create_directories(root + "/" + dir);
    }
    ProjectManifest manifest;
    manifest.name = fs::path(root).filename().string();
    manifest.tiers = 1;

    auto stub = [&](ArtifactCode code, std::optional<int> tier, const std::string& path) {
        ArtifactRecord record;
        record.id = code;
        record.tier = tier;
        record.path = path;
        record.status = ArtifactStatus::Missing;
        manifest.artifacts.push_back(record);
    };
    using C = ArtifactCode;
    stub(C::A, {}, "docs/A.md");
    stub(C::B, {}, "odm.json");
    stub(C::C, {}, "docs/C.md");
    stub(C::D, {}, "capabilities.json");
    stub(C::E, {}, "scenarios.json");
    stub(C::F, {}, "docs/F.md");
    stub(C::K, {}, "docs/K.md");
    stub(C::L, {}, "soc.json");
    stub(C::M, {}, "docs/M.md");
    stub(C::Q, 0, "requirements/tier-0.json");
    stub(C::R, 0, "docs/R-0.md");
    stub(C::V, 0, "design_log/tier-0.json");
    stub(C::W, 0, "design/tier-0.json");
    stub(C::X, 0, "docs/X-0.md");
    stub(C::Y, 0, "docs/Y-0.md");
    stub(C::Z, 0, "docs/Z-0.md");
    stub(C::BB, 0, "hazards/tier-0.json");
    stub(C::FF, {}, "docs/FF.md");
    stub(C::GG, {}, "docs/GG.md");
    stub(C::HH, {}, "boundary_interpretation.json");
    stub(C::II, {}, "boundary_assessment.json");
    stub(C::JJ, {}, "transition_model.json");
    stub(C::KK, {}, "docs/KK.md");
    stub(C::LL, {}, "docs/LL.md");
    stub(C::MM, {}, "docs/MM.md");
    stub(C::NN, {}, "docs/NN.md");
    stub(C::OO, {}, "docs/OO.md");
    stub(C::RR, {}, "docs/RR.md");
    stub(C::SS, {}, "verification/ss.json");
    stub(C::TT, {}, "verification/tt.json");
    stub(C::WW, {}, "out/WW.json");
    stub(C::XX, {}, "out/XX.json");
    stub(C::YY, {}, "docs/YY.md");
    save_manifest(root, manifest);
    out << "initialised project '" << manifest.name << "' at " << root << "\n";
    return 0;
}

// --- status -----------------------------------------------------------------

inline int run_status(const Project& project, std::ostream& out) {
    out << "project: " << project.manifest.name << " (tiers: " << project.manifest.tiers << ")\n";
    for (int stage = 1; stage <= 8; ++stage) {
        std::vector<std::optional<int>> tiers;
        if (stage_requires_tier(stage)) {
            for (int tier = 0; tier < project.manifest.tiers; ++tier) tiers.push_back(tier);
        } else {
            tiers.push_back(std::nullopt);
        }
        for (auto tier : tiers) {
            ReadinessReport report = stage_readiness(project.manifest, stage, tier);
            out << "stage " << stage;
            if (tier) out << " (tier " << *tier << ")";
            out << ": " << (report.ready ? "ready" : "not ready");
            auto missing = report.missing();
            if (!missing.empty()) {
                out << " missing:";
                for (const auto& name : missing) out << " " << name;
            }
            out << "  [" << stage_spec(stage).name << "]\n";
        }
    }
    auto stale = stale_check(project.manifest, project.root);
    for (const auto& finding : stale) {
        out << "stale: " << finding.artifact.locus() << " (" << finding.reason << ")\n";
    }
    return 0;
}

// --- validate ---------------------------------------------------------------

inline std::vector<std::string> stage_content_problems(const Project& project, int stage) {
    std::vector<std::string> problems;
    auto collect = [&](const std::vector<odm::OdmViolation>& violations, const std::string& what) {
        for (const auto& violation : violations) {
            problems.push_back(what + " " + violation.locus + ": " + violation.message);
        }
    };
    switch (stage) {
        case 1: {
            if (project.odm_model) collect(odm::check_odm(*project.odm_model), "odm");
            break;
        }
        case 2: {
            if (!project.decisions.empty()) {
                std::set<std::string> paths, scenario_ids;
                if (project.odm_model) {
                    for (const auto& path : odm::leaf_paths(*project.odm_model)) paths.insert(path);
                }
                for (const auto& scenario : project.scenarios) scenario_ids.insert(scenario.id);
                HazardOutputs hazards = compute_hazards(project);
                auto report =
                    hazard::validation_checklist(project.decisions, paths, scenario_ids, hazards.scenarios);
                for (const auto& failure : report.failures) {
                    problems.push_back(failure.check + " " + failure.locus + ": " + failure.message);
                }
            }
            break;
        }
        case 3: {
            if (project.odm_model) {
                for (const auto& rod : project.rods) collect(odm::check_rod(*project.odm_model, rod), "rod");
            }
            auto tier0 = project.requirements.find(0);
            if (tier0 != project.requirements.end()) {
                for (const auto& entry : tier0->second) {
                    try {
                        req::parse(entry.text, entry.id);
                    } catch (const SaceError& e) {
                        problems.push_back("requirement " + entry.id + ": " + e.what());
                    }
                }
            }
            break;
        }
        case 7: {
            if (project.transitions) collect(odm::check_transition_model(*project.transitions), "transition");
            if (project.assessment) collect(odm::check_assessment_matrix(*project.assessment), "assessment");
            break;
        }
        default: break;
    }
    return problems;
}

inline int run_validate(Project& project, int stage, std::optional<int> tier, std::ostream& out) {
    ReadinessReport report = stage_readiness(project.manifest, stage, tier);
    for (const auto& entry : report.entries) {
        out << "  " << entry.locus() << ": "
            << (entry.state == InputState::BuiltIn
                    ? "built-in"
                    : (entry.state == InputState::Present ? "present" : "MISSING"))
            << "\n";
    }
    if (!report.ready) {
        out << "stage " << stage << " is not ready\n";
        return 1;
    }
    auto problems = stage_content_problems(project, stage);
    if (!problems.empty()) {
        for (const auto& problem : problems) out << "  " << problem << "\n";
        out << "stage " << stage << " validation failed\n";
        return 1;
    }
    // Mark the stage outputs validated, recording content checksums.
    bool changed = false;
    for (ArtifactCode code : stage_spec(stage).outputs) {
        std::vector<ArtifactRecord*> records;
        if (is_tier_indexed(code)) {
            if (tier) {
                if (ArtifactRecord* record = project.manifest.find(code, tier)) records.push_back(record);
            }
        } else if (ArtifactRecord* record = project.manifest.find(code)) {
            records.push_back(record);
        }
        for (ArtifactRecord* record : records) {
            std::string checksum;
            try {
                checksum = fnv1a_hex(read_file(project.root + "/" + record->path));
            } catch (const SaceError&) {
                continue;  // generated outputs may not exist yet
            }
            if (record->status != ArtifactStatus::Validated || record->checksum != checksum) {
                record->status = ArtifactStatus::Validated;
                record->checksum = checksum;
                record->validated_at = timestamp_now();
                changed = true;
            }
        }
    }
    if (changed) save_manifest(project.root, project.manifest);
    out << "stage " << stage << " validated\n";
    return 0;
}

// --- enumerate ---------------------------------------------------------------

inline int run_enumerate(const Project& project, std::ostream& out) {
    if (project.decisions.empty()) {
        std::cerr << "no decisions.json in " << project.root << "\n";
        return 1;
    }
    HazardOutputs hazards = compute_hazards(project);
    Json ww;
    ww["decision_points"] = Json::array();
    std::string tables_text;
    for (const auto& table : hazards.tables) {
        ww["decision_points"].push_back(hazard::rows_to_json(table.point, table.rows));
        tables_text += hazard::rows_to_table(table.point, table.rows) + "\n";
    }
    Json xx = hazard::scenarios_to_json(hazards.scenarios);
    write_json(project.root + "/out/WW.json", ww);
    write_json(project.root + "/out/XX.json", xx);
    write_file(project.root + "/out/WW.txt", tables_text);
    out << "wrote out/WW.json, out/WW.txt and out/XX.json (" << hazards.scenarios.size()
        << " hazardous scenarios)\n";
    return 0;
}

// --- requirements check -------------------------------------------------------

inline int run_requirements_check(const Project& project, std::ostream& out) {
    int failures = 0;
    for (const auto& [tier, entries] : project.requirements) {
        for (const auto& entry : entries) {
            try {
                req::Requirement parsed = req::parse(entry.text, entry.id);
                out << entry.id << " [tier " << tier << "] " << req::to_string(parsed.template_kind);
                if (project.ontology) {
                    auto warnings = req::lint_terms(parsed, *project.ontology);
                    if (!warnings.empty()) {
                        out << " unknown-terms:";
                        for (const auto& warning : warnings) out << " " << warning.word;
                    }
                }
                out << "\n";
            } catch (const SaceError& e) {
                out << entry.id << " [tier " << tier << "] PARSE ERROR: " << e.what() << "\n";
                ++failures;
            }
        }
    }
    return failures == 0 ? 0 : 1;
}

// --- odm check ----------------------------------------------------------------

inline int run_odm_check(const Project& project, std::ostream& out) {
    int failures = 0;
    auto report = [&](const std::vector<odm::OdmViolation>& violations, const std::string& what) {
        for (const auto& violation : violations) {
            out << what << " " << violation.locus << ": " << violation.message << "\n";
            ++failures;
        }
    };
    if (project.odm_model) {
        report(odm::check_odm(*project.odm_model), "odm");
        for (const auto& rod : project.rods) report(odm::check_rod(*project.odm_model, rod), "rod");
    } else {
        out << "no ODM model loaded (artifact B)\n";
        ++failures;
    }
    if (project.transitions) report(odm::check_transition_model(*project.transitions), "transition");
    if (project.assessment) report(odm::check_assessment_matrix(*project.assessment), "assessment");
    if (failures == 0) out << "odm checks passed\n";
    return failures == 0 ? 0 : 1;
}

// --- boundary eval --------------------------------------------------------------

inline int run_boundary_eval(const Project& project, const std::string& trace_path, std::ostream& out) {
    if (!project.recognizer) {
        std::cerr << "no boundary recognizer (artifact HH) in the project\n";
        return 1;
    }
    auto [trace, truth] = odm::trace_from_csv(read_file(trace_path));
    odm::TraceMetrics metrics = odm::evaluate_trace(*project.recognizer, trace, truth);
    Json doc;
    doc["trace"] = trace_path;
    doc["detections"] = Json::array();
    for (const auto& detection : metrics.detections) {
        doc["detections"].push_back(Json{{"direction", detection.to_outside ? "outside" : "inside"},
                                         {"declared_at", detection.declared_at},
                                         {"truth_at", detection.truth_at},
                                         {"latency_samples", detection.latency_samples}});
    }
    doc["false_positives"] = metrics.false_positives;
    doc["false_negatives"] = metrics.false_negatives;
    doc["flip_flops"] = metrics.flip_flops;
    out << doc.dump(2) << "\n";
    return 0;
}

// --- instantiate / assemble -------------------------------------------------------

inline bool pattern_is_tier_scoped(PatternId id) {
    switch (id) {
        case PatternId::SafetyRequirements:
        case PatternId::DesignAssurance:
        case PatternId::HazardousFailures:
        case PatternId::Verification: return true;
        default: return false;
    }
}

inline int run_instantiate(const Project& project, const std::string& pattern_name, std::ostream& out) {
    PatternId id = parse_pattern_id(pattern_name);
    const gsn::GsnPattern& pattern = get_pattern(id);
    std::string pattern_path = project.root + "/out/pattern-" + to_string(id) + ".json";
    write_json(pattern_path, gsn::pattern_to_json(pattern));
    out << "wrote " << pattern_path << "\n";

    if (pattern_is_tier_scoped(id)) {
        for (const auto& [tier, entries] : project.requirements) {
            InstantiatedArgument argument = instantiate_from_project(project, id, tier);
            std::string path = project.root + "/out/argument-" + to_string(id) + "-t" +
                               std::to_string(tier) + ".json";
            write_json(path, argument_to_json(argument));
            out << "wrote " << path << "\n";
        }
        return 0;
    }
    InstantiatedArgument argument = instantiate_from_project(project, id);
    std::string path = project.root + "/out/argument-" + to_string(id) + ".json";
    write_json(path, argument_to_json(argument));
    out << "wrote " << path << "\n";
    return 0;
}

inline int run_assemble(const Project& project, std::ostream& out) {
    AssembledCase assembled = assemble_full_case(project);
    write_json(project.root + "/out/argument.json", assembled_to_json(assembled));
    write_file(project.root + "/out/argument.dot", gsn::to_dot(assembled.graph, project.manifest.name));
    out << "assembled " << assembled.graph.nodes.size() << " nodes, " << assembled.graph.edges.size()
        << " edges; " << assembled.sites.size() << " claim point kinds satisfied\n";
    for (const auto& warning : assembled.warnings) out << "warning: " << warning << "\n";
    out << "wrote out/argument.json and out/argument.dot\n";
    return 0;
}

// --- lint / matrix / export ---------------------------------------------------------

inline int run_lint(const Project& project, std::ostream& out) {
    auto findings = lint::lint(project);
    out << lint::findings_to_text(findings);
    write_json(project.root + "/out/lint.json", lint::findings_to_json(findings));
    if (lint::has_errors(findings)) return 1;
    return 0;
}

inline int run_trace_matrix(const Project& project, std::ostream& out) {
    auto rows = lint::trace_matrix(project);
    out << lint::matrix_to_text(rows);
    write_json(project.root + "/out/trace_matrix.json", lint::matrix_to_json(rows));
    return 0;
}

inline int run_export(Project& project, const std::string& format, std::ostream& out) {
    if (format == "dot") {
        AssembledCase assembled = assemble_full_case(project);
        write_file(project.root + "/out/argument.dot", gsn::to_dot(assembled.graph, project.manifest.name));
        out << "wrote out/argument.dot\n";
        return 0;
    }
    // report: readiness summary + lint findings + trace matrix.
    std::ostringstream report;
    run_status(project, report);
    report << "\n";
    auto findings = lint::lint(project);
    report << (findings.empty() ? "lint: clean\n" : lint::findings_to_text(findings));
    report << "\n" << lint::matrix_to_text(lint::trace_matrix(project));
    write_file(project.root + "/out/report.txt", report.str());
    out << report.str();
    out << "wrote out/report.txt\n";
    return 0;
}

}  // namespace cli_detail

inline int run(int argc, char** argv) {
    using namespace cli_detail;
    CLI::App app{"sace-kit: mechanised safety assurance workflow for autonomous systems"};
    app.require_subcommand(1);

    auto* cmd_init = app.add_subcommand("init", "scaffold a project manifest and artifact stubs");
    auto* cmd_status = app.add_subcommand("status", "per-stage readiness");
    auto* cmd_validate = app.add_subcommand("validate", "check a stage and mark its outputs validated");
    int stage = 0;
    int tier_flag = -1;
    cmd_validate->add_option("--stage", stage, "stage number")->required()->check(CLI::Range(1, 8));
    cmd_validate->add_option("--tier", tier_flag, "tier index for tier-indexed stages");
    auto* cmd_enumerate = app.add_subcommand("enumerate", "regenerate WW/XX from decisions.json");
    auto* cmd_requirements = app.add_subcommand("requirements", "requirements tools");
    auto* cmd_requirements_check = cmd_requirements->add_subcommand("check", "parse and classify requirements");
    auto* cmd_odm = app.add_subcommand("odm", "operating domain tools");
    auto* cmd_odm_check = cmd_odm->add_subcommand("check", "check ODM, RODs, transitions and assessments");
    auto* cmd_boundary = app.add_subcommand("boundary", "boundary recognizer tools");
    auto* cmd_boundary_eval = cmd_boundary->add_subcommand("eval", "evaluate a recognizer trace");
    std::string trace_file;
    cmd_boundary_eval->add_option("--trace", trace_file, "trace CSV (t,value,truth_inside)")->required();
    auto* cmd_instantiate = app.add_subcommand("instantiate", "export and instantiate a pattern");
    std::string pattern_name;
    cmd_instantiate->add_option("--pattern", pattern_name, "pattern id")->required();
    auto* cmd_assemble = app.add_subcommand("assemble", "assemble the full safety case");
    auto* cmd_lint = app.add_subcommand("lint", "cross-artifact completeness and traceability lint");
    auto* cmd_export = app.add_subcommand("export", "export the argument or a project report");
    std::string format;
    cmd_export->add_option("--format", format, "dot or report")
        ->required()
        ->check(CLI::IsMember({"dot", "report"}));
    auto* cmd_matrix = app.add_subcommand("trace-matrix", "requirement traceability matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string root = project_root();
    try {
        if (cmd_init->parsed()) return run_init(root, std::cout);

        Project project = load_project(root);
        if (cmd_status->parsed()) return run_status(project, std::cout);
        if (cmd_validate->parsed()) {
            std::optional<int> tier;
            if (tier_flag >= 0) tier = tier_flag;
            return run_validate(project, stage, tier, std::cout);
        }
        if (cmd_enumerate->parsed()) return run_enumerate(project, std::cout);
        if (cmd_requirements_check->parsed()) return run_requirements_check(project, std::cout);
        if (cmd_odm_check->parsed()) return run_odm_check(project, std::cout);
        if (cmd_boundary_eval->parsed()) return run_boundary_eval(project, trace_file, std::cout);
        if (cmd_instantiate->parsed()) return run_instantiate(project, pattern_name, std::cout);
        if (cmd_assemble->parsed()) return run_assemble(project, std::cout);
        if (cmd_lint->parsed()) return run_lint(project, std::cout);
        if (cmd_export->parsed()) return run_export(project, format, std::cout);
        if (cmd_matrix->parsed()) return run_trace_matrix(project, std::cout);
        std::cerr << "no command\n";
        return 2;
    } catch (const SaceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == "UnparseableArtifact") return 3;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sace::cli
