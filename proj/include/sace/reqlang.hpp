#pragma once

// Parser, classifier and printer for structured safety requirements, plus
// dictionary-based term linting.
//
// Grammar:   req    := clause* main
//            clause := ("When"|"While"|"Where") cond ","?
//                    | "If" cond ","? "then"
//            main   := "the" name "shall" response "."?
//
// Keywords are case-insensitive at clause starts. The main segment is
// anchored at the last "the ... shall" pair. Clause sequences are flat: an
// "if" anywhere after the first clause keyword is treated as a nested
// conditional and reported as DanglingIf. Parse errors carry stable codes:
// NoShall, NoSystemName, DanglingIf, EmptyResponse, UnknownKeyword.

#include "sace/core.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sace::req {

enum class ClauseKeyword { When, While, Where, If };

inline std::string to_string(ClauseKeyword keyword) {
    switch (keyword) {
        case ClauseKeyword::When: return "When";
        case ClauseKeyword::While: return "While";
        case ClauseKeyword::Where: return "Where";
        case ClauseKeyword::If: return "If";
    }
    return "When";
}

struct Clause {
    ClauseKeyword keyword = ClauseKeyword::When;
    std::optional<std::string> precondition;  // set only with an explicit " -- " delimiter
    std::string trigger_or_condition;

    bool operator==(const Clause&) const = default;
};

enum class Template { Ubiquitous, EventDriven, UnwantedBehaviour, StateDriven, OptionalFeature, Complex };

inline std::string to_string(Template t) {
    switch (t) {
        case Template::Ubiquitous: return "Ubiquitous";
        case Template::EventDriven: return "EventDriven";
        case Template::UnwantedBehaviour: return "UnwantedBehaviour";
        case Template::StateDriven: return "StateDriven";
        case Template::OptionalFeature: return "OptionalFeature";
        case Template::Complex: return "Complex";
    }
    return "Ubiquitous";
}

struct Requirement {
    std::string id;
    std::string raw;
    std::vector<Clause> clauses;
    std::string system;
    std::string response;
    Template template_kind = Template::Ubiquitous;

    bool same_ast(const Requirement& other) const {
        return clauses == other.clauses && system == other.system && response == other.response &&
               template_kind == other.template_kind;
    }
};

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Total function of the clause list structure.
inline Template classify(const std::vector<Clause>& clauses) {
    if (clauses.empty()) return Template::Ubiquitous;
    std::set<ClauseKeyword> keywords;
    for (const auto& clause : clauses) keywords.insert(clause.keyword);
    if (keywords.size() >= 2) return Template::Complex;
    switch (*keywords.begin()) {
        case ClauseKeyword::When: return Template::EventDriven;
        case ClauseKeyword::While: return Template::StateDriven;
        case ClauseKeyword::Where: return Template::OptionalFeature;
        case ClauseKeyword::If: return Template::UnwantedBehaviour;
    }
    return Template::Complex;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    std::string text;
    bool comma_after = false;
};

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::string current;
    auto flush = [&](bool comma) {
        if (!current.empty()) {
            tokens.push_back({current, comma});
            current.clear();
        } else if (comma && !tokens.empty()) {
            tokens.back().comma_after = true;
        }
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush(false);
        } else if (c == ',') {
            flush(true);
        } else {
            current.push_back(c);
        }
    }
    flush(false);
    // A trailing period belongs to the sentence, not the last word.
    if (!tokens.empty()) {
        std::string& last = tokens.back().text;
        if (last.size() > 1 && last.back() == '.') last.pop_back();
    }
    return tokens;
}

inline std::optional<ClauseKeyword> keyword_of(const std::string& token) {
    std::string low = lower(token);
    if (low == "when") return ClauseKeyword::When;
    if (low == "while") return ClauseKeyword::While;
    if (low == "where") return ClauseKeyword::Where;
    if (low == "if") return ClauseKeyword::If;
    return std::nullopt;
}

inline std::string join(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (!out.empty()) out += ' ';
        out += tokens[i].text;
        if (tokens[i].comma_after && i + 1 < end) out += ',';
    }
    return out;
}

/// Splits a clause condition at an explicit " -- " delimiter into
/// (precondition, trigger).
inline void split_precondition(Clause& clause, const std::vector<Token>& tokens, std::size_t begin,
                               std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (tokens[i].text == "--") {
            clause.precondition = join(tokens, begin, i);
            clause.trigger_or_condition = join(tokens, i + 1, end);
            return;
        }
    }
    clause.trigger_or_condition = join(tokens, begin, end);
}

}  // namespace detail

inline Requirement parse(const std::string& text, const std::string& id = "") {
    using detail::Token;
    Requirement requirement;
    requirement.id = id;
    requirement.raw = text;

    std::vector<Token> tokens = detail::tokenize(text);
    if (tokens.empty()) fail("NoShall", "empty requirement text");

    // The first "shall" bounds the clause region; conditions live before the
    // main segment, never after it.
    std::size_t shall_pos = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (detail::lower(tokens[i].text) == "shall") {
            shall_pos = i;
            break;
        }
    }
    if (shall_pos == tokens.size()) fail("NoShall", "no 'shall' found in: " + text);

    // Used only when a clause runs comma-free into the main segment: the
    // last "the" then marks where the main segment starts.
    std::size_t last_the = tokens.size();
    for (std::size_t i = shall_pos; i-- > 0;) {
        if (detail::lower(tokens[i].text) == "the") {
            last_the = i;
            break;
        }
    }

    std::size_t pos = 0;
    while (pos < shall_pos) {
        auto keyword = detail::keyword_of(tokens[pos].text);
        if (!keyword) break;  // main segment begins
        if (*keyword == ClauseKeyword::If && pos != 0) {
            fail("DanglingIf", "nested conditional: 'if' may only introduce the first clause");
        }
        Clause clause;
        clause.keyword = *keyword;
        if (tokens[pos].comma_after) {
            fail("UnknownKeyword", "clause keyword '" + tokens[pos].text + "' with an empty condition");
        }
        std::size_t cond_begin = pos + 1;
        std::size_t cond_end = cond_begin;
        std::size_t next = shall_pos;  // position where parsing resumes
        bool closed = false;
        while (cond_end < shall_pos) {
            const std::string low = detail::lower(tokens[cond_end].text);
            if (low == "if") fail("DanglingIf", "nested conditional inside a clause condition");
            if (*keyword == ClauseKeyword::If && low == "then") {
                next = cond_end + 1;
                closed = true;
                break;
            }
            if (*keyword != ClauseKeyword::If && tokens[cond_end].comma_after && cond_end + 1 < shall_pos) {
                const std::string& after = tokens[cond_end + 1].text;
                if (detail::keyword_of(after) || detail::lower(after) == "the") {
                    // Next clause or start of the main segment.
                    next = cond_end + 1;
                    ++cond_end;
                    closed = true;
                    break;
                }
                // Internal comma: still part of this condition.
            }
            ++cond_end;
        }
        if (*keyword == ClauseKeyword::If && !closed) {
            fail("DanglingIf", "'If' clause without 'then' before the main segment");
        }
        if (!closed) {
            // Comma-free run into the main segment; anchor at the last "the".
            if (last_the == tokens.size()) {
                fail("NoSystemName", "no 'the <system name>' before 'shall' in: " + text);
            }
            if (last_the <= cond_begin) {
                fail("UnknownKeyword", "clause keyword '" + tokens[pos].text + "' with an empty condition");
            }
            cond_end = last_the;
            next = last_the;
        }
        if (cond_begin == cond_end) {
            fail("UnknownKeyword", "clause keyword '" + tokens[pos].text + "' with an empty condition");
        }
        detail::split_precondition(clause, tokens, cond_begin, cond_end);
        requirement.clauses.push_back(std::move(clause));
        if (*keyword == ClauseKeyword::If && next < shall_pos && detail::keyword_of(tokens[next].text)) {
            fail("DanglingIf", "'If ... then' must immediately precede the main segment");
        }
        pos = next;
    }

    // Main segment: "the" <name> "shall" <response>.
    if (pos >= shall_pos || detail::lower(tokens[pos].text) != "the") {
        fail("NoSystemName", "main segment must start with 'the <system name>' in: " + text);
    }
    if (pos + 1 == shall_pos) fail("NoSystemName", "empty system name in: " + text);
    requirement.system = detail::join(tokens, pos + 1, shall_pos);
    if (shall_pos + 1 == tokens.size()) fail("EmptyResponse", "no system response after 'shall' in: " + text);
    requirement.response = detail::join(tokens, shall_pos + 1, tokens.size());

    requirement.template_kind = classify(requirement.clauses);
    return requirement;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

/// Canonical text: clause keywords title-cased, clauses comma-separated,
/// "then" before the main segment of an If requirement. parse(print(r)) is
/// the identity on ASTs.
inline std::string print(const Requirement& requirement) {
    std::string out;
    for (const auto& clause : requirement.clauses) {
        out += to_string(clause.keyword) + " ";
        if (clause.precondition) out += *clause.precondition + " -- ";
        out += clause.trigger_or_condition;
        out += clause.keyword == ClauseKeyword::If ? ", then " : ", ";
    }
    if (requirement.clauses.empty()) {
        out += "The ";
    } else {
        out += "the ";
    }
    out += requirement.system + " shall " + requirement.response;
    return out;
}

// ---------------------------------------------------------------------------
// Term linting
// ---------------------------------------------------------------------------

struct Ontology {
    std::set<std::string> terms;  // normalized
    std::string source;

    static std::string normalize(std::string word) {
        word = detail::lower(std::move(word));
        std::string cleaned;
        for (char c : word) {
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') cleaned.push_back(c);
        }
        // Naive stemming: strip a plural 's' only.
        if (cleaned.size() > 3 && cleaned.back() == 's' && cleaned[cleaned.size() - 2] != 's') {
            cleaned.pop_back();
        }
        return cleaned;
    }

    void add(const std::string& term) {
        std::string normalized = normalize(term);
        if (!normalized.empty()) terms.insert(normalized);
    }

    bool contains(const std::string& word) const { return terms.count(normalize(word)) != 0; }
};

inline Ontology ontology_from_json(const Json& doc) {
    Ontology ontology;
    ontology.source = doc.value("source", "");
    for (const auto& entry : doc.value("terms", Json::array())) {
        if (entry.is_string()) {
            ontology.add(entry.get<std::string>());
        } else {
            ontology.add(entry.at("term").get<std::string>());
        }
    }
    return ontology;
}

/// Fixed stop-word list used by lint_terms; ordinary function words are not
/// domain vocabulary and are never warned about.
inline const std::set<std::string>& stop_words() {
    static const std::set<std::string> words = {
        "a",       "an",     "the",    "is",      "are",    "was",    "were",   "be",      "been",
        "being",   "to",     "of",     "in",      "on",     "at",     "by",     "for",     "with",
        "from",    "into",   "onto",   "and",     "or",     "nor",    "not",    "no",      "any",
        "all",     "each",   "every",  "it",      "its",    "itself", "this",   "that",    "these",
        "those",   "shall",  "will",   "would",   "should", "may",    "might",  "must",    "can",
        "could",   "has",    "have",   "had",     "do",     "does",   "did",    "done",    "if",
        "then",    "when",   "while",  "where",   "than",   "as",     "but",    "so",      "such",
        "only",    "also",   "between", "within", "without", "over",  "under",  "after",   "before",
        "during",  "until",  "unless", "there",   "here",   "more",   "most",   "less",    "least",
        "own",     "same",   "other",  "another", "both",   "either", "neither", "against", "per",
        "via",     "upon",   "out",    "up",      "down",   "never",  "always", "km/h",    "m/s",
    };
    return words;
}

struct TermWarning {
    std::string word;
    std::size_t position = 0;  // 1-based token index over conditions then response

    bool operator==(const TermWarning&) const = default;
};

/// Warns about every content word in the clause conditions and the response
/// that is not covered by the ontology. Deterministic: scan order, with
/// token positions.
inline std::vector<TermWarning> lint_terms(const Requirement& requirement, const Ontology& ontology) {
    if (ontology.terms.empty()) fail("EmptyOntology", "semantic checks need a non-empty ontology");
    std::vector<TermWarning> warnings;
    std::size_t position = 0;
    auto scan = [&](const std::string& text) {
        std::istringstream stream(text);
        std::string word;
        while (stream >> word) {
            ++position;
            std::string normalized = Ontology::normalize(word);
            if (normalized.empty()) continue;
            bool numeric = std::all_of(normalized.begin(), normalized.end(), [](unsigned char c) {
                return std::isdigit(c) || c == '-' || c == '.';
            });
            if (numeric) continue;
            if (stop_words().count(normalized)) continue;
            if (!ontology.contains(word)) warnings.push_back({word, position});
        }
    };
    for (const auto& clause : requirement.clauses) {
        if (clause.precondition) scan(*clause.precondition);
        scan(clause.trigger_or_condition);
    }
    scan(requirement.response);
    return warnings;
}

// ---------------------------------------------------------------------------
// Requirements files (requirements/tier-<n>.json)
// ---------------------------------------------------------------------------

struct ReqEntry {
    std::string id;
    std::string text;
    std::vector<std::string> parents;
    std::string rationale;
};

inline std::vector<ReqEntry> req_entries_from_json(const Json& doc) {
    std::vector<ReqEntry> entries;
    for (const auto& item : doc) {
        ReqEntry entry;
        entry.id = item.at("id").get<std::string>();
        entry.text = item.at("text").get<std::string>();
        for (const auto& parent : item.value("parents", Json::array())) {
            entry.parents.push_back(parent.get<std::string>());
        }
        entry.rationale = item.value("rationale", "");
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace sace::req
