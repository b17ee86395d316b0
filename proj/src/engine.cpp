#include "counterbench/engine.hpp"

#include "counterbench/error.hpp"

#include <string>

namespace counterbench {

std::string_view to_string(QueryKind kind)
{
    switch (kind) {
    case QueryKind::Basic: return "basic";
    case QueryKind::Joint: return "joint";
    case QueryKind::NestedExplicit: return "nested";
    case QueryKind::NestedDerived: return "nested-derived";
    case QueryKind::Conditional: return "conditional";
    }
    return "unknown";
}

std::string_view to_string(Answer a) { return a == Answer::Yes ? "yes" : "no"; }

namespace {

void require_known(const Scm& scm, VarId v)
{
    if (!scm.contains(v)) throw Error(ErrorCode::UnknownVariable, "variable " + std::to_string(v.index));
}

void require_antecedent(const Scm& scm, VarId v)
{
    require_known(scm, v);
    if (scm.role(v) != Role::Antecedent)
        throw Error(ErrorCode::InvalidQuery, "intervention must target the antecedent variable");
}

void require_arity(bool ok, QueryKind kind, const char* what)
{
    if (!ok) throw Error(ErrorCode::KindArityMismatch, std::string(to_string(kind)) + " query needs " + what);
}

Answer outcome_of(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps)
{
    return to_answer(evaluate(scm, roots, clamps)[scm.outcome()]);
}

}  // namespace

void validate_query(const Scm& scm, const Query& q)
{
    require_known(scm, q.outcome);
    for (const auto& c : q.interventions) require_known(scm, c.var);
    for (const auto& c : q.observations) require_known(scm, c.var);
    if (q.derived) require_known(scm, *q.derived);

    const std::size_t n = q.interventions.size();
    switch (q.kind) {
    case QueryKind::Basic:
        require_arity(n == 1 && q.observations.empty() && !q.derived, q.kind, "one intervention");
        break;
    case QueryKind::Joint:
        require_arity(n >= 2 && q.observations.empty() && !q.derived, q.kind, "two or more interventions");
        break;
    case QueryKind::NestedExplicit:
        require_arity(n >= 2 && q.observations.empty() && !q.derived, q.kind, "two or more ordered suppositions");
        break;
    case QueryKind::NestedDerived:
        require_arity(n == 1 && q.observations.empty() && q.derived, q.kind, "one intervention and a target");
        if (*q.derived == q.outcome || *q.derived == q.interventions[0].var)
            throw Error(ErrorCode::InvalidQuery, "derived target must differ from outcome and antecedent");
        break;
    case QueryKind::Conditional:
        require_arity(n == 1 && !q.observations.empty() && !q.derived, q.kind, "one intervention and observations");
        for (const auto& o : q.observations)
            if (!scm.is_root(o.var))
                throw Error(ErrorCode::NonRootObservation, "observed variable " + std::to_string(o.var.index) + " is not a root");
        break;
    }
    if (q.kind == QueryKind::Basic || q.kind == QueryKind::Conditional || q.kind == QueryKind::NestedDerived)
        require_antecedent(scm, q.interventions[0].var);

    if (scm.outcome() != q.outcome) throw Error(ErrorCode::InvalidQuery, "query outcome is not the model outcome");
    for (const auto& c : q.interventions) {
        if (c.var == q.outcome) throw Error(ErrorCode::InvalidQuery, "outcome is intervened");
        if (q.observations.contains(c.var)) throw Error(ErrorCode::InvalidQuery, "variable both intervened and observed");
    }
    if (q.observations.contains(q.outcome)) throw Error(ErrorCode::InvalidQuery, "outcome is observed");
}

Answer answer_basic(const Scm& scm, const RootAssignment& roots, Clamp x)
{
    require_antecedent(scm, x.var);
    return outcome_of(scm, roots, ClampSet{x});
}

Answer answer_joint(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps)
{
    require_arity(clamps.size() >= 2, QueryKind::Joint, "two or more interventions");
    return outcome_of(scm, roots, clamps);
}

Answer answer_nested_explicit(const Scm& scm, const RootAssignment& roots, const ClampSet& sequence)
{
    require_arity(sequence.size() >= 2, QueryKind::NestedExplicit, "two or more ordered suppositions");
    Scm world = scm;
    RootAssignment context = roots;
    for (const auto& c : sequence) {
        world = submodel(world, ClampSet{c});
        context.set(c.var, c.value);
    }
    return outcome_of(world, context, {});
}

Answer answer_nested_derived(const Scm& scm, const RootAssignment& roots, Clamp x, VarId z)
{
    require_antecedent(scm, x.var);
    require_known(scm, z);
    if (z == x.var || z == scm.outcome())
        throw Error(ErrorCode::InvalidQuery, "derived target must differ from outcome and antecedent");
    const bool z_star = evaluate(scm, roots, ClampSet{x})[z];
    return outcome_of(scm, roots, ClampSet{{z, z_star}});
}

RootAssignment condition_roots(const Scm& scm, const ClampSet& observed, RootAssignment base)
{
    for (const auto& o : observed) {
        require_known(scm, o.var);
        if (!scm.is_root(o.var))
            throw Error(ErrorCode::NonRootObservation, "observed variable " + std::to_string(o.var.index) + " is not a root");
        base.set(o.var, o.value);
    }
    return base;
}

Answer answer_conditional(const Scm& scm, Clamp x, const ClampSet& observed, const RootAssignment& base)
{
    return answer_basic(scm, condition_roots(scm, observed, base), x);
}

Answer answer_conditional(const Scm& scm, Clamp x, const ClampSet& observed)
{
    return answer_conditional(scm, x, observed, default_roots(scm));
}

Answer answer(const Scm& scm, const Query& q, const RootAssignment& roots)
{
    validate_query(scm, q);
    switch (q.kind) {
    case QueryKind::Basic: return answer_basic(scm, roots, q.interventions[0]);
    case QueryKind::Joint: return answer_joint(scm, roots, q.interventions);
    case QueryKind::NestedExplicit: return answer_nested_explicit(scm, roots, q.interventions);
    case QueryKind::NestedDerived: return answer_nested_derived(scm, roots, q.interventions[0], *q.derived);
    case QueryKind::Conditional: return answer_conditional(scm, q.interventions[0], q.observations, roots);
    }
    throw Error(ErrorCode::KindArityMismatch, "unknown query kind");
}

Answer answer(const Scm& scm, const Query& q) { return answer(scm, q, default_roots(scm)); }

}  // namespace counterbench
