#pragma once

// Reference CoIn solver: pick a random unknown event, try to infer it from the
// relations and what is already known, back off on dead ends, stop once the
// outcome is known. Produces a trace in the exemplar format used by the
// CoIn prompt.

#include "counterbench/engine.hpp"
#include "counterbench/scm.hpp"
#include "counterbench/text_codec.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace counterbench::coin {

/// Event/value pairs learned so far. Entries are never removed or changed.
class KnownSet {
public:
    /// Throws ConflictingKnowledge if v is already known with the other value.
    void insert(VarId v, bool value);
    std::optional<bool> get(VarId v) const;
    bool contains(VarId v) const { return values_.contains(v); }
    std::size_t size() const { return values_.size(); }
    const std::map<VarId, bool>& values() const { return values_; }

private:
    std::map<VarId, bool> values_;
};

/// The equations of a model read as inference rules. Interventions are
/// constants; so are roots, at their context value.
class RelationSet {
public:
    RelationSet(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps);

    /// Submodel with every root pinned.
    const Scm& model() const { return model_; }

private:
    Scm model_;
};

/// Rule (a) pinned constants, (b) fully known formulas, (c) short-circuit:
/// one false conjunct or one true disjunct settles the value.
/// Throws ConflictingKnowledge when k is known and the derivation disagrees.
std::optional<bool> infer_step(const RelationSet& relations, const KnownSet& known, VarId k);

enum class StepKind : std::uint8_t { Attempt, Inferred, DeadEnd, Backtrack, Found };

struct Step {
    StepKind kind;
    VarId var;
    bool value = false;

    bool operator==(const Step&) const = default;
};

struct ChainLink {
    VarId var;
    bool value;

    bool operator==(const ChainLink&) const = default;
};

struct Trace {
    /// The relation model the search ran over.
    Scm model;
    /// Values known before the search started, in the order they were given.
    std::vector<Clamp> givens;
    std::vector<Step> steps;
    /// Every non-given event the outcome depends on, in topological order.
    std::vector<ChainLink> chain;
    VarId outcome;
    bool outcome_value = false;
    /// Derived-value nested queries first solve for the carried-over event.
    std::vector<Trace> subgoals;
};

/// Appends a Backtrack marker after a dead end on k. Known values stay.
void backtrack(Trace& trace, VarId k);

struct Solution {
    Answer answer;
    Trace trace;
};

/// Throws Stuck if no candidate can be inferred (impossible on a valid model),
/// plus any query validation error.
Solution solve(const Scm& scm, const Query& query, const RootAssignment& roots, std::uint64_t seed);
Solution solve(const Scm& scm, const Query& query, std::uint64_t seed);

/// "V6 = V2 AND NOT V5" style rule text for v in the trace model, in symbols.
std::string rule_text(const Scm& model, VarId v);

/// The search log and the "Backtracking the solution" chain.
std::string render_trace(const Trace& trace, const text::NameTable& names);

/// A worked question with its solution, used as a few-shot exemplar.
struct SolvedExample {
    std::string scenario;
    Scm scm;
    Query query;
    text::NameTable names;
    Trace trace;
    Answer answer;
};

SolvedExample make_example(const text::ParsedScenario& parsed, std::uint64_t seed = 0);
SolvedExample make_example(std::string_view scenario, std::uint64_t seed = 0);

/// The Ziklo exemplar.
const std::vector<SolvedExample>& default_exemplars();

/// The four-step answer (graph, givens, search, conclusion) for an exemplar.
std::string render_solution(const SolvedExample& example);

/// Few-shot exemplars followed by the target scenario and the step
/// instructions. Throws InvalidArgument when no exemplar is given.
std::string build_coin_prompt(std::string_view scenario, const std::vector<SolvedExample>& exemplars);

}  // namespace counterbench::coin
