#pragma once

// Exact answers to the four counterfactual query kinds over a deterministic SCM.

#include "counterbench/scm.hpp"

#include <optional>
#include <string_view>

namespace counterbench {

enum class QueryKind : std::uint8_t { Basic, Joint, NestedExplicit, NestedDerived, Conditional };

std::string_view to_string(QueryKind kind);

enum class Answer : std::uint8_t { No, Yes };

constexpr Answer to_answer(bool value) { return value ? Answer::Yes : Answer::No; }
constexpr bool to_bool(Answer a) { return a == Answer::Yes; }
std::string_view to_string(Answer a);  // "yes" / "no"

struct Query {
    QueryKind kind = QueryKind::Basic;
    /// Basic/Conditional/NestedDerived: exactly one entry, on the antecedent.
    /// Joint: two or more. NestedExplicit: two or more, applied in order.
    ClampSet interventions;
    /// Conditional only; every observed variable must be a root.
    ClampSet observations;
    VarId outcome;
    /// NestedDerived only: the variable whose counterfactual value is carried over.
    std::optional<VarId> derived;

    bool operator==(const Query&) const = default;
};

/// Throws KindArityMismatch, InvalidQuery or NonRootObservation.
void validate_query(const Scm& scm, const Query& query);

/// Y_x(u)
Answer answer_basic(const Scm& scm, const RootAssignment& roots, Clamp x);

/// Y_{x,z}(u)
Answer answer_joint(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps);

/// "Assume x, and based on this, further suppose z": clamps applied one
/// submodel at a time, left to right.
Answer answer_nested_explicit(const Scm& scm, const RootAssignment& roots, const ClampSet& sequence);

/// Y_{Z_x}(u): z takes the value it would have under x, and only z is
/// intervened in the outer world.
Answer answer_nested_derived(const Scm& scm, const RootAssignment& roots, Clamp x, VarId z);

/// Y_x(u) | Z = z for observed roots Z. Unobserved roots take `base` values.
Answer answer_conditional(const Scm& scm, Clamp x, const ClampSet& observed, const RootAssignment& base);
Answer answer_conditional(const Scm& scm, Clamp x, const ClampSet& observed);

Answer answer(const Scm& scm, const Query& query, const RootAssignment& roots);
Answer answer(const Scm& scm, const Query& query);

/// Root values with observations applied (the abduction step, which is
/// trivial when only roots are observed).
RootAssignment condition_roots(const Scm& scm, const ClampSet& observed, RootAssignment base);

}  // namespace counterbench
