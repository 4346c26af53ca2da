#pragma once

// Decision-point modelling and hazardous-scenario extraction: exhaustive
// enumeration of real-world x belief x option situations, rule-driven
// outcome classification, and emission of canonical hazardous scenarios
// (<operating scenario><environment state(s)> AND <decision>). Belief states
// are hypothesised causes and never appear in scenario text.

#include "sace/core.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sace::hazard {

// ---------------------------------------------------------------------------
// Decision points
// ---------------------------------------------------------------------------

struct EnvValue {
    std::string value;  // domain token, e.g. "T"
    std::string text;   // environment-state phrase used in scenario text
};

struct EnvVar {
    std::string name;
    std::vector<EnvValue> domain;

    const EnvValue* find(const std::string& value) const {
        for (const auto& v : domain) {
            if (v.value == value) return &v;
        }
        return nullptr;
    }
};

struct DecisionOption {
    std::string label;     // option text as analysed
    std::string decision;  // decision phrasing used in scenario text
};

struct ScenarioStep {
    std::string text;
    bool start = false;
    bool end = false;
    bool understanding_point = false;
    bool decision_point = false;
    std::vector<std::string> interactions;  // ODM element paths
};

struct DecisionPoint {
    std::string id;
    std::string operating_scenario;       // reference into artifact E
    std::string operating_scenario_text;  // phrase used in scenario text
    std::string question;                 // binary understanding point
    std::vector<EnvVar> env_vars;
    std::vector<DecisionOption> options;
    std::vector<ScenarioStep> steps;
};

inline void validate(const DecisionPoint& dp) {
    if (dp.env_vars.empty()) fail("InvalidDecisionPoint", dp.id + ": needs at least one environment variable");
    for (const auto& var : dp.env_vars) {
        if (var.domain.size() < 2) {
            fail("InvalidDecisionPoint", dp.id + ": variable " + var.name + " needs at least two values");
        }
    }
    if (dp.options.size() < 2) fail("InvalidDecisionPoint", dp.id + ": needs at least two options");
}

// ---------------------------------------------------------------------------
// Situations
// ---------------------------------------------------------------------------

enum class Severity { Unspecified, Minor, Major, Fatal };

inline std::string to_string(Severity severity) {
    switch (severity) {
        case Severity::Unspecified: return "Unspecified";
        case Severity::Minor: return "Minor";
        case Severity::Major: return "Major";
        case Severity::Fatal: return "Fatal";
    }
    return "Unspecified";
}

inline Severity parse_severity(const std::string& text) {
    if (text == "Minor") return Severity::Minor;
    if (text == "Major") return Severity::Major;
    if (text == "Fatal") return Severity::Fatal;
    if (text == "Unspecified" || text.empty()) return Severity::Unspecified;
    fail("UnknownSeverity", "no severity '" + text + "'");
}

/// Fatal > Major > Minor > Unspecified.
inline Severity max_severity(Severity a, Severity b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

struct Outcome {
    enum class Kind { Unclassified, Safe, NotPossible, Hazardous };
    Kind kind = Kind::Unclassified;
    std::string description;
    Severity severity = Severity::Unspecified;
    std::string severity_factors;
};

inline std::string to_string(Outcome::Kind kind) {
    switch (kind) {
        case Outcome::Kind::Unclassified: return "Unclassified";
        case Outcome::Kind::Safe: return "Safe";
        case Outcome::Kind::NotPossible: return "NotPossible";
        case Outcome::Kind::Hazardous: return "Hazardous";
    }
    return "Unclassified";
}

struct SituationRow {
    int index = 0;                        // 1-based, enumeration order
    std::vector<std::string> real_state;  // value per env var, declared order
    std::vector<std::string> belief_state;
    int option = 0;  // 1-based option number
    Outcome outcome;
};

/// All (real, belief, option) situations in lexicographic order. Belief
/// domains equal real domains per variable.
inline std::vector<SituationRow> enumerate(const DecisionPoint& dp) {
    validate(dp);
    std::vector<std::vector<std::string>> assignments;
    std::vector<std::string> current;
    // Odometer over the variable domains, most significant variable first.
    std::function<void(std::size_t)> walk = [&](std::size_t var) {
        if (var == dp.env_vars.size()) {
            assignments.push_back(current);
            return;
        }
        for (const auto& value : dp.env_vars[var].domain) {
            current.push_back(value.value);
            walk(var + 1);
            current.pop_back();
        }
    };
    walk(0);

    std::vector<SituationRow> rows;
    rows.reserve(assignments.size() * assignments.size() * dp.options.size());
    int index = 1;
    for (const auto& real : assignments) {
        for (const auto& belief : assignments) {
            for (std::size_t opt = 0; opt < dp.options.size(); ++opt) {
                SituationRow row;
                row.index = index++;
                row.real_state = real;
                row.belief_state = belief;
                row.option = static_cast<int>(opt) + 1;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Matches on named variable values and/or the option number; empty matchers
/// are wildcards.
struct ClassifyRule {
    std::map<std::string, std::string> real_match;
    std::map<std::string, std::string> belief_match;
    std::optional<int> option;
    Outcome outcome;
};

namespace detail {

inline bool state_matches(const DecisionPoint& dp, const std::vector<std::string>& state,
                          const std::map<std::string, std::string>& match) {
    for (const auto& [name, value] : match) {
        bool found = false;
        for (std::size_t i = 0; i < dp.env_vars.size(); ++i) {
            if (dp.env_vars[i].name == name) {
                found = true;
                if (state[i] != value) return false;
            }
        }
        if (!found) fail("UnknownVariable", "rule matches unknown variable " + name);
    }
    return true;
}

}  // namespace detail

inline bool rule_matches(const DecisionPoint& dp, const ClassifyRule& rule, const SituationRow& row) {
    if (rule.option && *rule.option != row.option) return false;
    return detail::state_matches(dp, row.real_state, rule.real_match) &&
           detail::state_matches(dp, row.belief_state, rule.belief_match);
}

/// First-match-wins classification in rule declaration order. Coverage gaps
/// are reported before any classification is applied.
inline std::vector<SituationRow> classify(const DecisionPoint& dp, std::vector<SituationRow> rows,
                                          const std::vector<ClassifyRule>& rules) {
    std::vector<int> uncovered;
    for (const auto& row : rows) {
        bool covered = std::any_of(rules.begin(), rules.end(),
                                   [&](const ClassifyRule& rule) { return rule_matches(dp, rule, row); });
        if (!covered) uncovered.push_back(row.index);
    }
    if (!uncovered.empty()) {
        std::string list;
        for (int index : uncovered) list += (list.empty() ? "" : ", ") + std::to_string(index);
        fail("UncoveredRows", dp.id + ": no rule covers rows " + list);
    }
    for (auto& row : rows) {
        for (const auto& rule : rules) {
            if (rule_matches(dp, rule, row)) {
                row.outcome = rule.outcome;
                break;
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Hazardous scenarios
// ---------------------------------------------------------------------------

struct HazardousScenario {
    std::string id;
    std::string decision_point;
    std::string operating_scenario;               // phrase
    std::vector<std::string> environment_states;  // real-state phrases
    std::string decision;                         // option decision phrase
    std::vector<int> source_rows;
    Severity severity = Severity::Unspecified;
    std::string severity_factors;

    /// Canonical form: <operating scenario><environment state(s)> AND <decision>
    std::string text() const {
        std::string env;
        for (const auto& state : environment_states) {
            if (!env.empty()) env += "; ";
            env += state;
        }
        return "<" + operating_scenario + "><" + env + "> AND <" + decision + ">";
    }
};

/// Merges hazardous rows by (real_state, option): belief states are dropped
/// from scenario text, severities take the maximum over merged rows. Output
/// order and ids are derived from the (real_state, option) key, so permuting
/// the row order cannot change the result.
inline std::vector<HazardousScenario> extract_hazardous(const DecisionPoint& dp,
                                                        const std::vector<SituationRow>& rows) {
    using Key = std::pair<std::vector<std::string>, int>;
    std::map<Key, std::vector<const SituationRow*>> groups;
    for (const auto& row : rows) {
        if (row.outcome.kind == Outcome::Kind::Unclassified) {
            fail("Unclassified", dp.id + ": row " + std::to_string(row.index) + " is unclassified");
        }
        if (row.outcome.kind != Outcome::Kind::Hazardous) continue;
        groups[{row.real_state, row.option}].push_back(&row);
    }

    std::vector<HazardousScenario> scenarios;
    int sequence = 1;
    for (const auto& [key, members] : groups) {
        HazardousScenario scenario;
        scenario.id = dp.id + "/HS" + std::to_string(sequence++);
        scenario.decision_point = dp.id;
        scenario.operating_scenario = dp.operating_scenario_text;
        for (std::size_t i = 0; i < dp.env_vars.size(); ++i) {
            const EnvValue* value = dp.env_vars[i].find(key.first[i]);
            scenario.environment_states.push_back(value ? value->text
                                                        : dp.env_vars[i].name + " = " + key.first[i]);
        }
        scenario.decision = dp.options[static_cast<std::size_t>(key.second - 1)].decision;
        for (const SituationRow* row : members) {
            scenario.source_rows.push_back(row->index);
            scenario.severity = max_severity(scenario.severity, row->outcome.severity);
            if (scenario.severity_factors.empty()) scenario.severity_factors = row->outcome.severity_factors;
        }
        std::sort(scenario.source_rows.begin(), scenario.source_rows.end());
        scenarios.push_back(std::move(scenario));
    }
    return scenarios;
}

// ---------------------------------------------------------------------------
// JSON forms (decisions.json, out/WW.json, out/XX.json)
// ---------------------------------------------------------------------------

inline Outcome outcome_from_json(const Json& doc) {
    Outcome outcome;
    std::string kind = doc.value("kind", "Unclassified");
    if (kind == "Safe") outcome.kind = Outcome::Kind::Safe;
    else if (kind == "NotPossible") outcome.kind = Outcome::Kind::NotPossible;
    else if (kind == "Hazardous") outcome.kind = Outcome::Kind::Hazardous;
    else if (kind == "Unclassified") outcome.kind = Outcome::Kind::Unclassified;
    else fail("UnknownOutcome", "no outcome kind '" + kind + "'");
    outcome.description = doc.value("description", "");
    outcome.severity = parse_severity(doc.value("severity", "Unspecified"));
    outcome.severity_factors = doc.value("severity_factors", "");
    return outcome;
}

inline Json outcome_to_json(const Outcome& outcome) {
    Json doc;
    doc["kind"] = to_string(outcome.kind);
    if (!outcome.description.empty()) doc["description"] = outcome.description;
    if (outcome.severity != Severity::Unspecified) doc["severity"] = to_string(outcome.severity);
    if (!outcome.severity_factors.empty()) doc["severity_factors"] = outcome.severity_factors;
    return doc;
}

struct DecisionDoc {
    DecisionPoint point;
    std::vector<ClassifyRule> rules;
};

inline DecisionDoc decision_from_json(const Json& doc) {
    DecisionDoc out;
    DecisionPoint& dp = out.point;
    dp.id = doc.at("id").get<std::string>();
    dp.operating_scenario = doc.value("operating_scenario", "");
    dp.operating_scenario_text = doc.value("operating_scenario_text", "");
    dp.question = doc.value("question", "");
    for (const auto& var : doc.value("env_vars", Json::array())) {
        EnvVar env;
        env.name = var.at("name").get<std::string>();
        for (const auto& value : var.at("domain")) {
            if (value.is_string()) {
                env.domain.push_back({value.get<std::string>(), value.get<std::string>()});
            } else {
                env.domain.push_back({value.at("value").get<std::string>(), value.value("text", "")});
            }
        }
        dp.env_vars.push_back(std::move(env));
    }
    for (const auto& option : doc.value("options", Json::array())) {
        DecisionOption o;
        o.label = option.at("label").get<std::string>();
        o.decision = option.value("decision", o.label);
        dp.options.push_back(std::move(o));
    }
    for (const auto& step : doc.value("steps", Json::array())) {
        ScenarioStep s;
        s.text = step.at("text").get<std::string>();
        s.start = step.value("start", false);
        s.end = step.value("end", false);
        s.understanding_point = step.value("understanding_point", false);
        s.decision_point = step.value("decision_point", false);
        for (const auto& path : step.value("interactions", Json::array())) {
            s.interactions.push_back(path.get<std::string>());
        }
        dp.steps.push_back(std::move(s));
    }
    for (const auto& rule : doc.value("rules", Json::array())) {
        ClassifyRule r;
        const Json when = rule.value("when", Json::object());
        const Json real = when.value("real", Json::object());
        const Json belief = when.value("belief", Json::object());
        for (const auto& [name, value] : real.items()) {
            r.real_match[name] = value.get<std::string>();
        }
        for (const auto& [name, value] : belief.items()) {
            r.belief_match[name] = value.get<std::string>();
        }
        if (when.contains("option")) r.option = when["option"].get<int>();
        r.outcome = outcome_from_json(rule.at("outcome"));
        out.rules.push_back(std::move(r));
    }
    return out;
}

inline std::vector<DecisionDoc> decisions_from_json(const Json& doc) {
    std::vector<DecisionDoc> out;
    for (const auto& entry : doc.value("decision_points", Json::array())) {
        out.push_back(decision_from_json(entry));
    }
    std::sort(out.begin(), out.end(),
              [](const DecisionDoc& a, const DecisionDoc& b) { return a.point.id < b.point.id; });
    return out;
}

inline Json rows_to_json(const DecisionPoint& dp, const std::vector<SituationRow>& rows) {
    Json doc;
    doc["id"] = dp.id;
    doc["operating_scenario"] = dp.operating_scenario;
    doc["question"] = dp.question;
    doc["options"] = Json::array();
    for (const auto& option : dp.options) doc["options"].push_back(option.label);
    doc["rows"] = Json::array();
    for (const auto& row : rows) {
        Json entry;
        entry["index"] = row.index;
        entry["real"] = Json::object();
        entry["belief"] = Json::object();
        for (std::size_t i = 0; i < dp.env_vars.size(); ++i) {
            entry["real"][dp.env_vars[i].name] = row.real_state[i];
            entry["belief"][dp.env_vars[i].name] = row.belief_state[i];
        }
        entry["option"] = row.option;
        entry["outcome"] = outcome_to_json(row.outcome);
        doc["rows"].push_back(std::move(entry));
    }
    return doc;
}

inline Json scenarios_to_json(const std::vector<HazardousScenario>& scenarios) {
    Json doc;
    doc["scenarios"] = Json::array();
    for (const auto& scenario : scenarios) {
        Json entry;
        entry["id"] = scenario.id;
        entry["operating_scenario"] = scenario.operating_scenario;
        entry["environment_states"] = scenario.environment_states;
        entry["decision"] = scenario.decision;
        entry["text"] = scenario.text();
        entry["severity"] = to_string(scenario.severity);
        if (!scenario.severity_factors.empty()) entry["severity_factors"] = scenario.severity_factors;
        entry["source"] = Json{{"decision_point", scenario.decision_point}, {"rows", scenario.source_rows}};
        doc["scenarios"].push_back(std::move(entry));
    }
    return doc;
}

/// Plain-text situation table, columns aligned, in the usual
/// decision-analysis layout.
inline std::string rows_to_table(const DecisionPoint& dp, const std::vector<SituationRow>& rows) {
    auto state_text = [&](const std::vector<std::string>& state) {
        std::string out;
        for (std::size_t i = 0; i < state.size(); ++i) {
            if (!out.empty()) out += ",";
            out += state[i];
        }
        return out;
    };
    std::vector<std::array<std::string, 5>> cells;
    cells.push_back({"#", "Real", "Belief", "Option", "Outcome"});
    for (const auto& row : rows) {
        std::string outcome = to_string(row.outcome.kind);
        if (!row.outcome.description.empty()) outcome += " - " + row.outcome.description;
        cells.push_back({std::to_string(row.index), state_text(row.real_state), state_text(row.belief_state),
                         dp.options[static_cast<std::size_t>(row.option - 1)].label, outcome});
    }
    std::array<std::size_t, 5> widths{};
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < 5; ++i) widths[i] = std::max(widths[i], line[i].size());
    }
    std::string out = "Operating Scenario: " + dp.operating_scenario_text + "\n";
    out += "Decision: " + dp.question + "\n";
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < 5; ++i) {
            out += line[i];
            out += std::string(widths[i] - line[i].size() + 2, ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation checklist (artifact YY support)
// ---------------------------------------------------------------------------

struct ChecklistFinding {
    std::string check;
    std::string locus;
    std::string message;
};

struct ChecklistReport {
    std::vector<ChecklistFinding> failures;
    bool ok() const { return failures.empty(); }
};

/// Structural validation behind the hazardous-scenario checklist: decision
/// points reference known operating scenarios, interactions reference ODM
/// elements, every hazardous row lands in some scenario, and scenarios are
/// fully specified.
inline ChecklistReport validation_checklist(const std::vector<DecisionDoc>& decisions,
                                            const std::set<std::string>& odm_paths,
                                            const std::set<std::string>& scenario_ids,
                                            const std::vector<HazardousScenario>& scenarios) {
    ChecklistReport report;
    for (const auto& doc : decisions) {
        const DecisionPoint& dp = doc.point;
        if (!scenario_ids.count(dp.operating_scenario)) {
            report.failures.push_back({"operating-scenario-ref", dp.id,
                                       "references unknown operating scenario '" + dp.operating_scenario + "'"});
        }
        for (const auto& step : dp.steps) {
            for (const auto& path : step.interactions) {
                if (!odm_paths.count(path)) {
                    report.failures.push_back(
                        {"odm-interaction", dp.id, "interaction references unknown ODM element '" + path + "'"});
                }
            }
        }
        auto rows = classify(dp, enumerate(dp), doc.rules);
        for (const auto& row : rows) {
            if (row.outcome.kind != Outcome::Kind::Hazardous) continue;
            bool mapped = std::any_of(scenarios.begin(), scenarios.end(), [&](const HazardousScenario& s) {
                return s.decision_point == dp.id &&
                       std::find(s.source_rows.begin(), s.source_rows.end(), row.index) != s.source_rows.end();
            });
            if (!mapped) {
                report.failures.push_back({"orphan-hazardous-row", dp.id,
                                           "hazardous row " + std::to_string(row.index) +
                                               " maps to no documented hazardous scenario"});
            }
        }
    }
    for (const auto& scenario : scenarios) {
        bool empty_env = scenario.environment_states.empty() ||
                         std::any_of(scenario.environment_states.begin(), scenario.environment_states.end(),
                                     [](const std::string& s) { return s.empty(); });
        if (scenario.operating_scenario.empty() || empty_env || scenario.decision.empty()) {
            report.failures.push_back(
                {"ambiguous-scenario", scenario.id,
                 "scenario must specify operating scenario, environment state(s) and decision"});
        }
    }
    return report;
}

}  // namespace sace::hazard
