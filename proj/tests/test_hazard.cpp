#include "sace/hazard.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace sace;
using namespace sace::hazard;

namespace {

// The robot object-in-path decision point and its analysis rules.
DecisionDoc robot_decision() {
    Json doc = Json::parse(R"JSON({
      "id": "DP-1",
      "operating_scenario": "OS-1",
      "operating_scenario_text": "the autonomous robot is following a planned path",
      "question": "is a static object present on the planned path",
      "env_vars": [
        {"name": "object_in_path", "domain": [
          {"value": "T", "text": "a static object is present in the path"},
          {"value": "F", "text": "no object is present in the path"}
        ]}
      ],
      "options": [
        {"label": "Continue on current path at current speed",
         "decision": "the robot maintains its current speed and direction"},
        {"label": "Continue on current path at reduced speed",
         "decision": "the robot continues on its path at reduced speed"},
        {"label": "Change path to avoid breach of safe separation minima",
         "decision": "the robot changes path to avoid the object"},
        {"label": "Stop and wait",
         "decision": "the robot stops and waits"}
      ],
      "steps": [
        {"text": "robot departs with a planned path", "start": true},
        {"text": "robot checks for objects on the planned path", "understanding_point": true,
         "interactions": ["agents/person_presence", "environment/wall_material"]},
        {"text": "robot selects a response to the object", "decision_point": true},
        {"text": "robot reaches the delivery station", "end": true}
      ],
      "rules": [
        {"when": {"real": {"object_in_path": "T"}, "option": 1},
         "outcome": {"kind": "Hazardous", "description": "Collision", "severity": "Major",
                     "severity_factors": "impact with a child could cause broken bones; wet floor raises collision speed"}},
        {"when": {"real": {"object_in_path": "T"}, "option": 2},
         "outcome": {"kind": "Hazardous", "description": "Collision Reduced Severity", "severity": "Minor"}},
        {"when": {"belief": {"object_in_path": "F"}, "option": 3},
         "outcome": {"kind": "NotPossible"}},
        {"when": {"option": 3}, "outcome": {"kind": "Safe"}},
        {"when": {"real": {"object_in_path": "T"}, "option": 4},
         "outcome": {"kind": "Hazardous", "description": "Possible Obstruction Hazard", "severity": "Minor"}},
        {"when": {"belief": {"object_in_path": "T"}, "option": 4},
         "outcome": {"kind": "Hazardous", "description": "Possible Obstruction Hazard", "severity": "Minor"}},
        {"when": {}, "outcome": {"kind": "Safe"}}
      ]
    })JSON");
    return decision_from_json(doc);
}

const SituationRow& row_for(const std::vector<SituationRow>& rows, const std::string& real,
                            const std::string& belief, int option) {
    for (const auto& row : rows) {
        if (row.real_state == std::vector<std::string>{real} &&
            row.belief_state == std::vector<std::string>{belief} && row.option == option) {
            return row;
        }
    }
    FAIL("no such row");
    return rows.front();
}

}  // namespace

TEST_CASE("enumeration counts are exhaustive") {
    auto doc = robot_decision();
    auto rows = enumerate(doc.point);
    CHECK(rows.size() == 16);  // 2 x 2 x 4

    SECTION("two options is the smallest legal point") {
        DecisionDoc small = doc;
        small.point.options.resize(2);
        CHECK(enumerate(small.point).size() == 8);
    }
    SECTION("rows come in lexicographic (real, belief, option) order") {
        CHECK(rows[0].real_state == std::vector<std::string>{"T"});
        CHECK(rows[0].belief_state == std::vector<std::string>{"T"});
        CHECK(rows[0].option == 1);
        CHECK(rows[4].belief_state == std::vector<std::string>{"F"});
        CHECK(rows[15].real_state == std::vector<std::string>{"F"});
        CHECK(rows[15].option == 4);
    }
    SECTION("reference rows 1, 5 and 9 appear") {
        CHECK(row_for(rows, "T", "T", 1).index == 1);
        CHECK(row_for(rows, "T", "F", 1).index == 5);
        CHECK(row_for(rows, "F", "F", 1).index == 13);
    }
}

TEST_CASE("enumeration size follows the product law") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> vars_dist(1, 3);
    std::uniform_int_distribution<int> dom_dist(2, 3);
    std::uniform_int_distribution<int> opt_dist(2, 4);
    for (int trial = 0; trial < 30; ++trial) {
        DecisionPoint dp;
        dp.id = "DP";
        std::size_t domain_product = 1;
        int var_count = vars_dist(rng);
        for (int v = 0; v < var_count; ++v) {
            EnvVar var;
            var.name = "v" + std::to_string(v);
            int dom = dom_dist(rng);
            domain_product *= static_cast<std::size_t>(dom);
            for (int d = 0; d < dom; ++d) var.domain.push_back({std::to_string(d), "state " + std::to_string(d)});
            dp.env_vars.push_back(var);
        }
        int options = opt_dist(rng);
        for (int o = 0; o < options; ++o) dp.options.push_back({"opt", "does option"});
        CHECK(enumerate(dp).size() == domain_product * domain_product * static_cast<std::size_t>(options));
    }
}

TEST_CASE("invalid decision points are rejected") {
    DecisionPoint dp;
    dp.id = "DP-bad";
    CHECK_THROWS_AS(enumerate(dp), SaceError);
    dp.env_vars.push_back({"v", {{"a", "a"}, {"b", "b"}}});
    dp.options.push_back({"only one", "one"});
    CHECK_THROWS_AS(enumerate(dp), SaceError);
}

TEST_CASE("classification reproduces the reference analysis") {
    auto doc = robot_decision();
    auto rows = classify(doc.point, enumerate(doc.point), doc.rules);

    auto outcome = [&](const std::string& real, const std::string& belief, int option) {
        return row_for(rows, real, belief, option).outcome;
    };
    CHECK(outcome("T", "T", 1).description == "Collision");
    CHECK(outcome("T", "T", 2).description == "Collision Reduced Severity");
    CHECK(outcome("T", "T", 3).kind == Outcome::Kind::Safe);
    CHECK(outcome("T", "T", 4).description == "Possible Obstruction Hazard");
    CHECK(outcome("T", "F", 1).description == "Collision");
    CHECK(outcome("T", "F", 2).description == "Collision Reduced Severity");
    CHECK(outcome("T", "F", 3).kind == Outcome::Kind::NotPossible);
    CHECK(outcome("T", "F", 4).description == "Possible Obstruction Hazard");
    CHECK(outcome("F", "F", 1).kind == Outcome::Kind::Safe);
}

TEST_CASE("coverage gaps are reported before classification") {
    auto doc = robot_decision();
    auto rules = doc.rules;
    rules.pop_back();  // drop the catch-all
    try {
        classify(doc.point, enumerate(doc.point), rules);
        FAIL("expected UncoveredRows");
    } catch (const SaceError& e) {
        CHECK(e.code() == "UncoveredRows");
    }
}

TEST_CASE("random rule sets classify everything whenever coverage passes") {
    std::mt19937 rng(99);
    auto doc = robot_decision();
    std::uniform_int_distribution<int> rules_dist(1, 5);
    std::uniform_int_distribution<int> option_dist(1, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<ClassifyRule> rules;
        int count = rules_dist(rng);
        for (int i = 0; i < count; ++i) {
            ClassifyRule rule;
            if (coin(rng)) rule.real_match["object_in_path"] = coin(rng) ? "T" : "F";
            if (coin(rng)) rule.option = option_dist(rng);
            rule.outcome.kind = coin(rng) ? Outcome::Kind::Safe : Outcome::Kind::Hazardous;
            rule.outcome.description = "x";
            rules.push_back(rule);
        }
        auto rows = enumerate(doc.point);
        std::size_t covered = 0;
        for (const auto& row : rows) {
            covered += std::any_of(rules.begin(), rules.end(),
                                   [&](const ClassifyRule& r) { return rule_matches(doc.point, r, row); });
        }
        if (covered == rows.size()) {
            auto classified = classify(doc.point, rows, rules);
            CHECK(std::none_of(classified.begin(), classified.end(), [](const SituationRow& r) {
                return r.outcome.kind == Outcome::Kind::Unclassified;
            }));
        } else {
            CHECK_THROWS_AS(classify(doc.point, rows, rules), SaceError);
        }
    }
}

TEST_CASE("hazard extraction merges rows and drops belief states") {
    auto doc = robot_decision();
    auto rows = classify(doc.point, enumerate(doc.point), doc.rules);
    auto scenarios = extract_hazardous(doc.point, rows);

    // groups: (F,4), (T,1), (T,2), (T,4)
    REQUIRE(scenarios.size() == 4);

    const HazardousScenario* collision = nullptr;
    for (const auto& scenario : scenarios) {
        if (scenario.decision == "the robot maintains its current speed and direction") collision = &scenario;
    }
    REQUIRE(collision != nullptr);
    CHECK(collision->operating_scenario == "the autonomous robot is following a planned path");
    CHECK(collision->environment_states ==
          std::vector<std::string>{"a static object is present in the path"});
    CHECK(collision->source_rows == std::vector<int>{1, 5});  // (T,T,1) and (T,F,1) merged
    CHECK(collision->severity == Severity::Major);
    CHECK(collision->text().find("AND <the robot maintains its current speed and direction>") !=
          std::string::npos);

    SECTION("no scenario text mentions a belief state") {
        for (const auto& scenario : scenarios) {
            CHECK(scenario.text().find("belief") == std::string::npos);
        }
    }
}

TEST_CASE("all-safe classification yields no scenarios") {
    auto doc = robot_decision();
    std::vector<ClassifyRule> all_safe = {{{}, {}, std::nullopt, {Outcome::Kind::Safe, "", Severity::Unspecified, ""}}};
    auto rows = classify(doc.point, enumerate(doc.point), all_safe);
    CHECK(extract_hazardous(doc.point, rows).empty());
}

TEST_CASE("merged severity takes the maximum") {
    CHECK(max_severity(Severity::Minor, Severity::Major) == Severity::Major);
    CHECK(max_severity(Severity::Fatal, Severity::Major) == Severity::Fatal);
    CHECK(max_severity(Severity::Unspecified, Severity::Minor) == Severity::Minor);

    auto doc = robot_decision();
    std::vector<ClassifyRule> rules = {
        {{{"object_in_path", "T"}}, {{"object_in_path", "T"}}, 1,
         {Outcome::Kind::Hazardous, "hit", Severity::Minor, ""}},
        {{{"object_in_path", "T"}}, {{"object_in_path", "F"}}, 1,
         {Outcome::Kind::Hazardous, "hit", Severity::Major, ""}},
        {{}, {}, std::nullopt, {Outcome::Kind::Safe, "", Severity::Unspecified, ""}},
    };
    auto rows = classify(doc.point, enumerate(doc.point), rules);
    auto scenarios = extract_hazardous(doc.point, rows);
    REQUIRE(scenarios.size() == 1);
    CHECK(scenarios[0].severity == Severity::Major);
}

TEST_CASE("extraction is invariant under row permutation") {
    auto doc = robot_decision();
    auto rows = classify(doc.point, enumerate(doc.point), doc.rules);
    auto baseline = extract_hazardous(doc.point, rows);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto scenarios = extract_hazardous(doc.point, shuffled);
        REQUIRE(scenarios.size() == baseline.size());
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            CHECK(scenarios[i].id == baseline[i].id);
            CHECK(scenarios[i].text() == baseline[i].text());
            CHECK(scenarios[i].source_rows == baseline[i].source_rows);
        }
    }
}

TEST_CASE("validation checklist catches structural gaps") {
    auto doc = robot_decision();
    auto rows = classify(doc.point, enumerate(doc.point), doc.rules);
    auto scenarios = extract_hazardous(doc.point, rows);
    std::set<std::string> odm_paths = {"agents/person_presence", "environment/wall_material"};
    std::set<std::string> scenario_ids = {"OS-1", "OS-2"};

    SECTION("complete inputs pass") {
        auto report = validation_checklist({doc}, odm_paths, scenario_ids, scenarios);
        CHECK(report.ok());
    }
    SECTION("deleting a scenario orphans its hazardous rows") {
        scenarios.pop_back();
        auto report = validation_checklist({doc}, odm_paths, scenario_ids, scenarios);
        REQUIRE_FALSE(report.ok());
        CHECK(report.failures.front().check == "orphan-hazardous-row");
    }
    SECTION("empty decision text is an ambiguity failure") {
        scenarios[0].decision.clear();
        auto report = validation_checklist({doc}, odm_paths, scenario_ids, scenarios);
        bool found = false;
        for (const auto& failure : report.failures) found |= (failure.check == "ambiguous-scenario");
        CHECK(found);
    }
    SECTION("unknown operating scenario reference fails") {
        auto report = validation_checklist({doc}, odm_paths, {"OS-9"}, scenarios);
        bool found = false;
        for (const auto& failure : report.failures) found |= (failure.check == "operating-scenario-ref");
        CHECK(found);
    }
    SECTION("unknown ODM interaction fails") {
        auto report = validation_checklist({doc}, {"agents/person_presence"}, scenario_ids, scenarios);
        bool found = false;
        for (const auto& failure : report.failures) found |= (failure.check == "odm-interaction");
        CHECK(found);
    }
}

TEST_CASE("situation table renders aligned columns") {
    auto doc = robot_decision();
    auto rows = classify(doc.point, enumerate(doc.point), doc.rules);
    std::string table = rows_to_table(doc.point, rows);
    CHECK(table.find("Operating Scenario: the autonomous robot is following a planned path") != std::string::npos);
    CHECK(table.find("Hazardous - Collision") != std::string::npos);
    CHECK(table.find("NotPossible") != std::string::npos);
}

TEST_CASE("scenario json carries the canonical text") {
    auto doc = robot_decision();
    auto rows = classify(doc.point, enumerate(doc.point), doc.rules);
    auto scenarios = extract_hazardous(doc.point, rows);
    Json out = scenarios_to_json(scenarios);
    REQUIRE(out["scenarios"].size() == 4);
    bool found = false;
    for (const auto& entry : out["scenarios"]) {
        std::string text = entry["text"].get<std::string>();
        found |= text.find("the robot maintains its current speed and direction") != std::string::npos;
    }
    CHECK(found);
}
