#pragma once

// Natural-language scenario format: rendering a model and query into the
// benchmark's templated English, and parsing that English back.

#include "counterbench/engine.hpp"
#include "counterbench/scm.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>

namespace counterbench::text {

inline constexpr std::string_view kPreamble =
    "Imagine a self-contained, hypothetical world with only the following conditions, and without any "
    "unmentioned factors or causal relationships:";

/// Surface name for each variable.
class NameTable {
public:
    NameTable() = default;

    void set(VarId v, std::string name) { names_[v] = std::move(name); }
    const std::string& at(VarId v) const;
    bool contains(VarId v) const { return names_.contains(v); }
    std::optional<VarId> find(std::string_view name) const;
    std::size_t size() const { return names_.size(); }
    const std::map<VarId, std::string>& entries() const { return names_; }

    bool operator==(const NameTable&) const = default;

private:
    std::map<VarId, std::string> names_;
};

const std::unordered_set<std::string>& stoplist();

/// Capitalized, 3-8 ASCII letters, and not a listed English word.
bool is_valid_name(std::string_view name);

/// n distinct nonsense names built from consonant-vowel syllables. Same seed,
/// same table.
NameTable generate_names(std::uint64_t seed, std::size_t n);

struct ScenarioText {
    std::string background;
    std::string question;

    std::string full() const { return background + " " + question; }
    bool operator==(const ScenarioText&) const = default;
};

/// Throws MissingName, or UnknownQueryForm for query kinds that have no text
/// template (derived-value nested queries).
ScenarioText render(const Scm& scm, const Query& query, const NameTable& names);

struct ParsedScenario {
    Scm scm;
    Query query;
    NameTable names;
    /// Clauses read from the "We know that" sentence.
    std::size_t clause_count = 0;
};

/// Throws SyntaxError (with the byte offset of the offending clause),
/// InconsistentClauses or UnknownQueryForm, plus any model validation error.
ParsedScenario parse(const ScenarioText& text);
ParsedScenario parse(std::string_view full_text);

/// Splits a full scenario at the first question sentence ("We observed",
/// "Assume" or "Would").
ScenarioText split_scenario(std::string_view full_text);

/// Structural equality up to variable re-indexing, matching variables by name.
bool same_scenario(const Scm& a, const Query& qa, const NameTable& na, const Scm& b, const Query& qb,
                   const NameTable& nb);

}  // namespace counterbench::text
