#pragma once

// ODM feature tree, ROD containment checking, the ODM boundary transition
// model, the recognition-assessment matrix, and a deterministic boundary
// recognizer evaluator with debounce hysteresis.

#include "sace/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sace::odm {

// ---------------------------------------------------------------------------
// ODM feature tree
// ---------------------------------------------------------------------------

struct OdmFeature {
    enum class Kind { Categorical, Numeric };
    std::string name;
    Kind kind = Kind::Categorical;
    std::vector<std::string> values;  // categorical
    double min = 0.0, max = 0.0;      // numeric
    std::string unit;
    std::string granularity_rationale;
    std::vector<OdmFeature> children;

    bool leaf() const { return children.empty(); }
};

struct OdmModel {
    std::string name;
    std::vector<OdmFeature> features;
};

struct OdmViolation {
    std::string locus;
    std::string message;
};

namespace detail {

inline void walk(const std::vector<OdmFeature>& features, const std::string& prefix,
                 const std::function<void(const OdmFeature&, const std::string&)>& visit) {
    for (const auto& feature : features) {
        std::string path = prefix.empty() ? feature.name : prefix + "/" + feature.name;
        visit(feature, path);
        walk(feature.children, path, visit);
    }
}

}  // namespace detail

inline void walk_features(const OdmModel& model,
                          const std::function<void(const OdmFeature&, const std::string&)>& visit) {
    detail::walk(model.features, "", visit);
}

inline const OdmFeature* find_feature(const OdmModel& model, const std::string& path) {
    const OdmFeature* found = nullptr;
    walk_features(model, [&](const OdmFeature& feature, const std::string& p) {
        if (p == path) found = &feature;
    });
    return found;
}

inline std::vector<std::string> leaf_paths(const OdmModel& model) {
    std::vector<std::string> out;
    walk_features(model, [&](const OdmFeature& feature, const std::string& path) {
        if (feature.leaf()) out.push_back(path);
    });
    return out;
}

/// Structural checks: unique sibling names, numeric min < max, and a
/// granularity rationale on every leaf (the level-of-detail justification).
inline std::vector<OdmViolation> check_odm(const OdmModel& model) {
    std::vector<OdmViolation> violations;
    std::set<std::string> seen;
    walk_features(model, [&](const OdmFeature& feature, const std::string& path) {
        if (!seen.insert(path).second) violations.push_back({path, "duplicate feature path"});
        if (feature.kind == OdmFeature::Kind::Numeric && !(feature.min < feature.max)) {
            violations.push_back({path, "numeric feature needs min < max"});
        }
        if (feature.kind == OdmFeature::Kind::Categorical && feature.leaf() && feature.values.size() < 2) {
            violations.push_back({path, "categorical feature needs at least two values"});
        }
        if (feature.leaf() && feature.granularity_rationale.empty()) {
            violations.push_back({path, "leaf feature lacks a granularity rationale"});
        }
    });
    return violations;
}

// ---------------------------------------------------------------------------
// Reduced operating domains
// ---------------------------------------------------------------------------

struct Narrowing {
    std::string feature;  // path into the ODM
    // Numeric narrowing keeps the ODM bound where unspecified.
    std::optional<double> min, max;
    std::vector<std::string> values;  // categorical narrowing
};

struct RodConstraint {
    std::string id;
    std::string trigger;
    std::vector<Narrowing> narrowings;
    std::vector<std::string> capability_reductions;  // capability ids from artifact D
};

/// A ROD must narrow: every touched feature domain is a strict subset of the
/// ODM feature's domain, and the constraint must narrow something (feature
/// domain or capability).
inline std::vector<OdmViolation> check_rod(const OdmModel& model, const RodConstraint& rod) {
    std::vector<OdmViolation> violations;
    if (rod.narrowings.empty() && rod.capability_reductions.empty()) {
        violations.push_back({rod.id, "ROD has neither feature narrowings nor capability reductions"});
    }
    for (const auto& narrowing : rod.narrowings) {
        const std::string locus = rod.id + ":" + narrowing.feature;
        const OdmFeature* feature = find_feature(model, narrowing.feature);
        if (feature == nullptr) {
            violations.push_back({locus, "narrows a feature that is not in the ODM"});
            continue;
        }
        if (feature->kind == OdmFeature::Kind::Numeric) {
            double lo = narrowing.min.value_or(feature->min);
            double hi = narrowing.max.value_or(feature->max);
            if (lo < feature->min || hi > feature->max || lo >= hi) {
                violations.push_back({locus, "narrowed interval is not contained in the ODM interval"});
            } else if (lo == feature->min && hi == feature->max) {
                violations.push_back({locus, "narrowed interval equals the ODM interval (not strict)"});
            }
        } else {
            if (narrowing.values.empty()) {
                violations.push_back({locus, "categorical narrowing lists no values"});
                continue;
            }
            std::set<std::string> domain(feature->values.begin(), feature->values.end());
            bool subset = std::all_of(narrowing.values.begin(), narrowing.values.end(),
                                      [&](const std::string& v) { return domain.count(v) != 0; });
            if (!subset) {
                violations.push_back({locus, "narrowed values are not all in the ODM domain"});
            } else if (narrowing.values.size() >= domain.size()) {
                violations.push_back({locus, "narrowed value set equals the ODM domain (not strict)"});
            }
        }
    }
    return violations;
}

// ---------------------------------------------------------------------------
// ODM boundary transition model
// ---------------------------------------------------------------------------

struct TransitionState {
    bool in_odm = true;
    bool autonomous = true;

    std::string label() const {
        return std::string(in_odm ? "InOdm" : "OutOdm") + "/" + (autonomous ? "Autonomous" : "NonAutonomous");
    }

    auto operator<=>(const TransitionState&) const = default;
};

inline TransitionState parse_state(const std::string& text) {
    TransitionState state;
    auto slash = text.find('/');
    std::string region = text.substr(0, slash);
    std::string mode = slash == std::string::npos ? "" : text.substr(slash + 1);
    if (region == "InOdm") state.in_odm = true;
    else if (region == "OutOdm") state.in_odm = false;
    else fail("UnknownState", "no transition state '" + text + "'");
    if (mode == "Autonomous") state.autonomous = true;
    else if (mode == "NonAutonomous") state.autonomous = false;
    else fail("UnknownState", "no transition state '" + text + "'");
    return state;
}

struct Transition {
    TransitionState from;
    TransitionState to;
    std::string condition;
    std::vector<std::string> assessed_unsafe_modes;
    std::vector<std::string> mitigations;
    bool assessed_safe = false;
};

struct TransitionModel {
    std::vector<Transition> transitions;
};

/// Violations: missing states, duplicate ordered pairs, boundary-crossing
/// transitions without an assessment, unreachable states.
inline std::vector<OdmViolation> check_transition_model(const TransitionModel& model) {
    std::vector<OdmViolation> violations;
    const std::vector<TransitionState> all_states = {
        {true, true}, {true, false}, {false, true}, {false, false}};

    std::set<TransitionState> touched;
    std::set<std::pair<TransitionState, TransitionState>> pairs;
    for (const auto& transition : model.transitions) {
        touched.insert(transition.from);
        touched.insert(transition.to);
        if (!pairs.insert({transition.from, transition.to}).second) {
            violations.push_back({transition.from.label() + "->" + transition.to.label(),
                                  "duplicate transition for this state pair"});
        }
        bool crossing = transition.from.in_odm != transition.to.in_odm;
        if (crossing && transition.assessed_unsafe_modes.empty() && !transition.assessed_safe) {
            violations.push_back({transition.from.label() + "->" + transition.to.label(),
                                  "boundary-crossing transition lacks an unsafe-mode assessment"});
        }
    }
    for (const auto& state : all_states) {
        if (!touched.count(state)) {
            violations.push_back({state.label(), "state missing from the transition model"});
            continue;
        }
        bool has_out = std::any_of(model.transitions.begin(), model.transitions.end(),
                                   [&](const Transition& t) { return t.from == state; });
        bool has_in = std::any_of(model.transitions.begin(), model.transitions.end(),
                                  [&](const Transition& t) { return t.to == state; });
        if (!has_in && !has_out) violations.push_back({state.label(), "state is unreachable"});
    }
    return violations;
}

// ---------------------------------------------------------------------------
// Recognition assessment matrix
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& recognition_cases() {
    static const std::vector<std::string> cases = {"ApproachFromInside", "Crossing", "ApproachFromOutside",
                                                   "ReEntering"};
    return cases;
}

inline const std::vector<std::string>& failure_modes() {
    static const std::vector<std::string> modes = {"Timeliness", "Accuracy", "Hysteresis"};
    return modes;
}

struct AssessmentCell {
    std::string recognition_case;
    std::string failure_mode;
    bool hazardous = false;
    std::string mitigation;  // required when hazardous
    std::string rationale;
};

struct AssessmentMatrix {
    std::vector<AssessmentCell> cells;

    const AssessmentCell* find(const std::string& recognition_case, const std::string& failure_mode) const {
        for (const auto& cell : cells) {
            if (cell.recognition_case == recognition_case && cell.failure_mode == failure_mode) return &cell;
        }
        return nullptr;
    }
};

/// All 12 recognition-case x failure-mode cells must be populated; hazardous
/// cells need a mitigation reference.
inline std::vector<OdmViolation> check_assessment_matrix(const AssessmentMatrix& matrix) {
    std::vector<OdmViolation> violations;
    for (const auto& recognition_case : recognition_cases()) {
        for (const auto& mode : failure_modes()) {
            const AssessmentCell* cell = matrix.find(recognition_case, mode);
            const std::string locus = recognition_case + "x" + mode;
            if (cell == nullptr) {
                violations.push_back({locus, "assessment cell missing"});
                continue;
            }
            if (cell->hazardous && cell->mitigation.empty()) {
                violations.push_back({locus, "hazardous cell lacks a mitigation"});
            }
        }
    }
    return violations;
}

// ---------------------------------------------------------------------------
// Boundary recognizer evaluation
// ---------------------------------------------------------------------------

struct BoundaryProxy {
    std::string feature;  // ODM feature path the proxy stands in for
    std::string sensor;
    double margin = 0.0;  // fraction of the (normalized) domain
};

struct BoundaryRecognizerSpec {
    BoundaryProxy proxy;
    double threshold = 0.0;  // proxy units; above threshold means outside
    int debounce_in = 1;     // consecutive in-domain samples before declaring Inside
    int debounce_out = 1;    // consecutive out-of-domain samples before declaring Outside
    int max_latency = 0;     // samples; informational bound
};

inline void validate(const BoundaryRecognizerSpec& spec) {
    if (spec.proxy.margin < 0) fail("InvalidRecognizer", "margin must be non-negative");
    if (spec.debounce_in < 1 || spec.debounce_out < 1) fail("InvalidRecognizer", "debounce counts must be >= 1");
}

struct TraceSample {
    double t = 0.0;
    double value = 0.0;
};

struct TruthSample {
    double t = 0.0;
    bool inside = true;
};

struct CrossingDetection {
    bool to_outside = false;
    double declared_at = 0.0;
    double truth_at = 0.0;
    long latency_samples = 0;  // negative means earlier than the truth crossing
};

struct TraceMetrics {
    std::vector<CrossingDetection> detections;
    int false_positives = 0;  // declarations with no matching truth crossing
    int false_negatives = 0;  // truth crossings never declared
    int flip_flops = 0;       // state changes within debounce_in+debounce_out samples of the previous one
    std::vector<std::pair<long, bool>> declarations;  // (sample index, outside?)
};

/// Debounced threshold recognizer evaluated against ground truth.
///
/// The margin shifts the effective boundary inward (conservative): a sample
/// counts as out-of-domain when value > threshold - margin and as in-domain
/// when value < threshold - margin. Outside is declared after debounce_out
/// consecutive out-of-domain samples, Inside after debounce_in consecutive
/// in-domain samples. The recognizer starts in the true initial region.
inline TraceMetrics evaluate_trace(const BoundaryRecognizerSpec& spec, const std::vector<TraceSample>& trace,
                                   const std::vector<TruthSample>& truth) {
    validate(spec);
    if (trace.empty() || trace.size() != truth.size()) {
        fail("MisalignedTrace", "trace and truth must be non-empty and equally long");
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].t != truth[i].t) fail("MisalignedTrace", "trace and truth timestamps differ");
        if (i > 0 && !(trace[i].t > trace[i - 1].t)) fail("MisalignedTrace", "timestamps must increase");
    }

    const double cutoff = spec.threshold - spec.proxy.margin;

    TraceMetrics metrics;
    bool outside = !truth.front().inside;
    int out_streak = 0;
    int in_streak = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        double value = trace[i].value;
        if (value > cutoff) {
            ++out_streak;
            in_streak = 0;
        } else if (value < cutoff) {
            ++in_streak;
            out_streak = 0;
        } else {
            out_streak = 0;
            in_streak = 0;
        }
        if (!outside && out_streak >= spec.debounce_out) {
            outside = true;
            metrics.declarations.push_back({static_cast<long>(i), true});
            out_streak = 0;
        } else if (outside && in_streak >= spec.debounce_in) {
            outside = false;
            metrics.declarations.push_back({static_cast<long>(i), false});
            in_streak = 0;
        }
    }

    // Flip-flop count: declarations following the previous one within the
    // combined debounce window.
    const long window = spec.debounce_in + spec.debounce_out;
    for (std::size_t i = 1; i < metrics.declarations.size(); ++i) {
        if (metrics.declarations[i].first - metrics.declarations[i - 1].first <= window) {
            ++metrics.flip_flops;
        }
    }

    // Truth crossings, as (sample index, to_outside).
    std::vector<std::pair<long, bool>> crossings;
    for (std::size_t i = 1; i < truth.size(); ++i) {
        if (truth[i].inside != truth[i - 1].inside) {
            crossings.push_back({static_cast<long>(i), !truth[i].inside});
        }
    }

    // Order-preserving match of declarations to same-direction crossings.
    std::vector<bool> declaration_used(metrics.declarations.size(), false);
    std::size_t search_from = 0;
    for (const auto& [truth_index, to_outside] : crossings) {
        bool matched = false;
        for (std::size_t d = search_from; d < metrics.declarations.size(); ++d) {
            if (declaration_used[d] || metrics.declarations[d].second != to_outside) continue;
            declaration_used[d] = true;
            search_from = d + 1;
            CrossingDetection detection;
            detection.to_outside = to_outside;
            detection.declared_at = trace[static_cast<std::size_t>(metrics.declarations[d].first)].t;
            detection.truth_at = trace[static_cast<std::size_t>(truth_index)].t;
            detection.latency_samples = metrics.declarations[d].first - truth_index;
            metrics.detections.push_back(detection);
            matched = true;
            break;
        }
        if (!matched) ++metrics.false_negatives;
    }
    for (std::size_t d = 0; d < metrics.declarations.size(); ++d) {
        if (!declaration_used[d]) ++metrics.false_positives;
    }
    return metrics;
}

/// First sample index at which Outside is declared, if ever. The
/// conservative-margin property is stated over this quantity.
inline std::optional<long> first_outside_declaration(const TraceMetrics& metrics) {
    for (const auto& [index, to_outside] : metrics.declarations) {
        if (to_outside) return index;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

inline OdmFeature feature_from_json(const Json& doc) {
    OdmFeature feature;
    feature.name = doc.at("name").get<std::string>();
    std::string kind = doc.value("kind", doc.contains("children") ? "group" : "categorical");
    if (kind == "numeric") {
        feature.kind = OdmFeature::Kind::Numeric;
        feature.min = doc.at("min").get<double>();
        feature.max = doc.at("max").get<double>();
        feature.unit = doc.value("unit", "");
    } else {
        feature.kind = OdmFeature::Kind::Categorical;
        for (const auto& value : doc.value("values", Json::array())) {
            feature.values.push_back(value.get<std::string>());
        }
    }
    feature.granularity_rationale = doc.value("granularity_rationale", "");
    for (const auto& child : doc.value("children", Json::array())) {
        feature.children.push_back(feature_from_json(child));
    }
    return feature;
}

inline OdmModel odm_from_json(const Json& doc) {
    OdmModel model;
    model.name = doc.value("name", "");
    for (const auto& feature : doc.value("features", Json::array())) {
        model.features.push_back(feature_from_json(feature));
    }
    return model;
}

inline std::vector<RodConstraint> rods_from_json(const Json& doc) {
    std::vector<RodConstraint> rods;
    for (const auto& entry : doc.value("rods", Json::array())) {
        RodConstraint rod;
        rod.id = entry.at("id").get<std::string>();
        rod.trigger = entry.value("trigger", "");
        for (const auto& narrowing : entry.value("narrowings", Json::array())) {
            Narrowing n;
            n.feature = narrowing.at("feature").get<std::string>();
            if (narrowing.contains("min")) n.min = narrowing["min"].get<double>();
            if (narrowing.contains("max")) n.max = narrowing["max"].get<double>();
            for (const auto& value : narrowing.value("values", Json::array())) {
                n.values.push_back(value.get<std::string>());
            }
            rod.narrowings.push_back(std::move(n));
        }
        for (const auto& capability : entry.value("capability_reductions", Json::array())) {
            rod.capability_reductions.push_back(capability.get<std::string>());
        }
        rods.push_back(std::move(rod));
    }
    return rods;
}

inline TransitionModel transition_model_from_json(const Json& doc) {
    TransitionModel model;
    for (const auto& entry : doc.value("transitions", Json::array())) {
        Transition transition;
        transition.from = parse_state(entry.at("from").get<std::string>());
        transition.to = parse_state(entry.at("to").get<std::string>());
        transition.condition = entry.value("condition", "");
        for (const auto& mode : entry.value("assessed_unsafe_modes", Json::array())) {
            transition.assessed_unsafe_modes.push_back(mode.get<std::string>());
        }
        for (const auto& mitigation : entry.value("mitigations", Json::array())) {
            transition.mitigations.push_back(mitigation.get<std::string>());
        }
        transition.assessed_safe = entry.value("assessed_safe", false);
        model.transitions.push_back(std::move(transition));
    }
    return model;
}

inline AssessmentMatrix assessment_matrix_from_json(const Json& doc) {
    AssessmentMatrix matrix;
    for (const auto& entry : doc.value("cells", Json::array())) {
        AssessmentCell cell;
        cell.recognition_case = entry.at("case").get<std::string>();
        cell.failure_mode = entry.at("mode").get<std::string>();
        cell.hazardous = entry.value("hazardous", false);
        cell.mitigation = entry.value("mitigation", "");
        cell.rationale = entry.value("rationale", "");
        matrix.cells.push_back(std::move(cell));
    }
    return matrix;
}

inline BoundaryRecognizerSpec recognizer_from_json(const Json& doc) {
    BoundaryRecognizerSpec spec;
    const Json& proxy = doc.value("proxy", Json::object());
    spec.proxy.feature = proxy.value("feature", "");
    spec.proxy.sensor = proxy.value("sensor", "");
    spec.proxy.margin = proxy.value("margin", 0.0);
    spec.threshold = doc.at("threshold").get<double>();
    spec.debounce_in = doc.value("debounce_in", 1);
    spec.debounce_out = doc.value("debounce_out", 1);
    spec.max_latency = doc.value("max_latency", 0);
    return spec;
}

/// traces/*.csv with mandatory header "t,value,truth_inside".
inline std::pair<std::vector<TraceSample>, std::vector<TruthSample>> trace_from_csv(const std::string& content) {
    std::vector<TraceSample> trace;
    std::vector<TruthSample> truth;
    std::istringstream stream(content);
    std::string line;
    bool header = true;
    while (std::getline(stream, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (header) {
            if (line != "t,value,truth_inside") {
                fail("MisalignedTrace", "trace CSV must start with header 't,value,truth_inside'");
            }
            header = false;
            continue;
        }
        std::istringstream cells(line);
        std::string t_text, value_text, inside_text;
        if (!std::getline(cells, t_text, ',') || !std::getline(cells, value_text, ',') ||
            !std::getline(cells, inside_text, ',')) {
            fail("MisalignedTrace", "bad trace row: " + line);
        }
        double t = std::stod(t_text);
        trace.push_back({t, std::stod(value_text)});
        truth.push_back({t, inside_text == "1" || inside_text == "true"});
    }
    if (header) fail("MisalignedTrace", "empty trace file");
    return {trace, truth};
}

}  // namespace sace::odm
