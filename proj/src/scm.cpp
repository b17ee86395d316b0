#include "counterbench/scm.hpp"

#include "counterbench/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace counterbench {

namespace {

std::string name_of(VarId v) { return "variable " + std::to_string(v.index); }

template <typename ParentsFn>
std::vector<VarId> kahn(const Scm& scm, ParentsFn&& parents_of)
{
    const std::size_t n = scm.size();
    std::vector<std::vector<VarId>> children(n);
    std::vector<std::size_t> pending(n, 0);
    for (VarId v : scm.variables()) {
        for (VarId p : parents_of(v)) {
            if (!scm.contains(p))
                throw Error(ErrorCode::DanglingParent, name_of(v) + " references unknown " + name_of(p));
            if (p == v) throw Error(ErrorCode::CycleDetected, name_of(v) + " depends on itself");
            children[p.index].push_back(v);
            ++pending[v.index];
        }
    }

    std::priority_queue<std::uint16_t, std::vector<std::uint16_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (pending[i] == 0) ready.push(static_cast<std::uint16_t>(i));

    std::vector<VarId> order;
    order.reserve(n);
    while (!ready.empty()) {
        VarId v{ready.top()};
        ready.pop();
        order.push_back(v);
        for (VarId c : children[v.index])
            if (--pending[c.index] == 0) ready.push(c.index);
    }
    if (order.size() != n) {
        for (std::size_t i = 0; i < n; ++i)
            if (pending[i] != 0)
                throw Error(ErrorCode::CycleDetected, name_of(VarId{static_cast<std::uint16_t>(i)}) + " lies on a cycle");
    }
    return order;
}

std::vector<VarId> literal_vars(const Formula& f)
{
    std::vector<VarId> out;
    out.reserve(f.args.size());
    for (const auto& a : f.args) out.push_back(a.var);
    return out;
}

void check_formula(const Scm& scm, VarId target, const Formula& f)
{
    const std::size_t want = f.op == Op::Unary ? 1 : 2;
    if (f.op != Op::Unary && f.args.size() > 2)
        throw Error(ErrorCode::ArityExceeded,
                    name_of(target) + " has " + std::to_string(f.args.size()) + " causes; at most 2 are supported");
    if (f.args.size() != want)
        throw Error(ErrorCode::ArityMismatch, name_of(target) + " formula has wrong number of arguments");
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (!scm.contains(f.args[i].var))
            throw Error(ErrorCode::DanglingParent, name_of(target) + " references unknown " + name_of(f.args[i].var));
        for (std::size_t j = i + 1; j < f.args.size(); ++j)
            if (f.args[i].var == f.args[j].var)
                throw Error(ErrorCode::DuplicateArgument, name_of(target) + " repeats " + name_of(f.args[i].var));
    }
}

}  // namespace

Scm::Scm(std::vector<Role> roles, std::vector<Mechanism> mechanisms)
    : roles_(std::move(roles)), mechanisms_(std::move(mechanisms))
{
    if (roles_.size() != mechanisms_.size())
        throw Error(ErrorCode::InvalidArgument, "roles and mechanisms differ in length");
    if (roles_.size() > 0xFFFF) throw Error(ErrorCode::InvalidArgument, "too many variables");
}

std::vector<VarId> Scm::variables() const
{
    std::vector<VarId> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = VarId{static_cast<std::uint16_t>(i)};
    return out;
}

const Formula* Scm::design_formula(VarId v) const
{
    const auto& m = mechanisms_.at(v.index);
    if (const auto* f = std::get_if<Formula>(&m)) return f;
    if (const auto* p = std::get_if<Pinned>(&m); p && p->replaced) return &*p->replaced;
    return nullptr;
}

std::optional<bool> Scm::pinned_value(VarId v) const
{
    if (const auto* p = std::get_if<Pinned>(&mechanisms_.at(v.index))) return p->value;
    return std::nullopt;
}

bool Scm::is_root(VarId v) const
{
    const auto& m = mechanisms_.at(v.index);
    return std::holds_alternative<Exogenous>(m) || std::holds_alternative<Pinned>(m);
}

std::vector<VarId> Scm::roots() const
{
    std::vector<VarId> out;
    for (VarId v : variables())
        if (is_root(v)) out.push_back(v);
    return out;
}

std::vector<Equation> Scm::equations() const
{
    std::vector<Equation> out;
    for (VarId v : variables())
        if (const auto* f = formula(v)) out.push_back({v, *f});
    return out;
}

std::optional<VarId> Scm::find_role(Role r) const
{
    for (VarId v : variables())
        if (roles_[v.index] == r) return v;
    return std::nullopt;
}

VarId Scm::antecedent() const
{
    if (auto v = find_role(Role::Antecedent)) return *v;
    throw Error(ErrorCode::MissingAntecedent, "model has no antecedent variable");
}

VarId Scm::outcome() const
{
    if (auto v = find_role(Role::Outcome)) return *v;
    throw Error(ErrorCode::MissingOutcome, "model has no outcome variable");
}

std::vector<VarId> Scm::parents(VarId v) const
{
    if (const auto* f = formula(v)) return literal_vars(*f);
    return {};
}

std::vector<VarId> Scm::design_parents(VarId v) const
{
    if (const auto* f = design_formula(v)) return literal_vars(*f);
    return {};
}

VarId ScmBuilder::add(Role role)
{
    roles_.push_back(role);
    mechanisms_.emplace_back(Unspecified{});
    return VarId{static_cast<std::uint16_t>(roles_.size() - 1)};
}

ScmBuilder& ScmBuilder::root(VarId v) { return mechanism(v, Exogenous{}); }

ScmBuilder& ScmBuilder::equation(VarId target, Formula f) { return mechanism(target, std::move(f)); }

ScmBuilder& ScmBuilder::mechanism(VarId v, Mechanism m)
{
    if (v.index >= mechanisms_.size()) throw Error(ErrorCode::UnknownVariable, name_of(v));
    mechanisms_[v.index] = std::move(m);
    return *this;
}

std::optional<bool> RootAssignment::get(VarId v) const
{
    if (auto it = values_.find(v); it != values_.end()) return it->second;
    return std::nullopt;
}

RootAssignment default_roots(const Scm& scm)
{
    RootAssignment out;
    for (VarId v : scm.roots()) out.set(v, true);
    return out;
}

ClampSet::ClampSet(std::initializer_list<Clamp> clamps)
{
    for (const auto& c : clamps) add(c);
}

void ClampSet::add(Clamp c)
{
    if (contains(c.var)) throw Error(ErrorCode::DuplicateClamp, name_of(c.var) + " is clamped twice");
    clamps_.push_back(c);
}

std::optional<bool> ClampSet::value_of(VarId v) const
{
    for (const auto& c : clamps_)
        if (c.var == v) return c.value;
    return std::nullopt;
}

void validate(const Scm& scm)
{
    std::size_t antecedents = 0;
    std::size_t outcomes = 0;
    for (VarId v : scm.variables()) {
        if (const auto* f = scm.design_formula(v)) check_formula(scm, v, *f);
        if (std::holds_alternative<Unspecified>(scm.mechanism(v)))
            throw Error(ErrorCode::MissingEquation, name_of(v) + " is not a root and has no equation");
        antecedents += scm.role(v) == Role::Antecedent;
        outcomes += scm.role(v) == Role::Outcome;
    }
    if (outcomes > 1) throw Error(ErrorCode::MultipleOutcomes, std::to_string(outcomes) + " outcome variables");
    if (outcomes == 0) throw Error(ErrorCode::MissingOutcome, "model has no outcome variable");
    if (antecedents > 1)
        throw Error(ErrorCode::MultipleAntecedents, std::to_string(antecedents) + " antecedent variables");
    if (antecedents == 0) throw Error(ErrorCode::MissingAntecedent, "model has no antecedent variable");

    // Acyclicity is checked on the design graph, which is a supergraph of the
    // live one.
    kahn(scm, [&](VarId v) { return scm.design_parents(v); });

    const VarId x = scm.antecedent();
    const VarId y = scm.outcome();
    std::vector<bool> seen(scm.size(), false);
    std::vector<std::vector<VarId>> children(scm.size());
    for (VarId v : scm.variables())
        for (VarId p : scm.design_parents(v)) children[p.index].push_back(v);
    std::vector<VarId> stack{x};
    seen[x.index] = true;
    while (!stack.empty()) {
        VarId v = stack.back();
        stack.pop_back();
        for (VarId c : children[v.index])
            if (!seen[c.index]) {
                seen[c.index] = true;
                stack.push_back(c);
            }
    }
    if (!seen[y.index]) throw Error(ErrorCode::OutcomeUnreachable, "outcome is not a descendant of the antecedent");
}

std::vector<VarId> topological_order(const Scm& scm)
{
    return kahn(scm, [&](VarId v) { return scm.design_parents(v); });
}

World evaluate(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps)
{
    for (const auto& c : clamps)
        if (!scm.contains(c.var)) throw Error(ErrorCode::UnknownVariable, "clamp on unknown " + name_of(c.var));
    for (const auto& [v, value] : roots.values())
        if (!scm.contains(v) || !scm.is_root(v))
            throw Error(ErrorCode::InvalidRootAssignment, name_of(v) + " is not a root");

    std::vector<bool> values(scm.size(), false);
    for (VarId v : topological_order(scm)) {
        if (auto c = clamps.value_of(v)) {
            values[v.index] = *c;
            continue;
        }
        const auto& m = scm.mechanism(v);
        if (const auto* f = std::get_if<Formula>(&m)) {
            values[v.index] = f->evaluate([&](VarId p) { return static_cast<bool>(values[p.index]); });
        } else if (const auto* p = std::get_if<Pinned>(&m)) {
            values[v.index] = p->value;
        } else if (std::holds_alternative<Exogenous>(m)) {
            auto r = roots.get(v);
            if (!r) throw Error(ErrorCode::InvalidRootAssignment, "no context value for root " + name_of(v));
            values[v.index] = *r;
        } else {
            throw Error(ErrorCode::MissingEquation, name_of(v) + " has no mechanism");
        }
    }
    return World(std::move(values));
}

Scm submodel(const Scm& scm, const ClampSet& clamps)
{
    std::vector<Role> roles;
    std::vector<Mechanism> mechanisms;
    for (VarId v : scm.variables()) {
        roles.push_back(scm.role(v));
        mechanisms.push_back(scm.mechanism(v));
    }
    for (const auto& c : clamps) {
        if (!scm.contains(c.var)) throw Error(ErrorCode::UnknownVariable, "clamp on unknown " + name_of(c.var));
        auto& m = mechanisms[c.var.index];
        std::optional<Formula> replaced;
        if (const auto* f = std::get_if<Formula>(&m)) replaced = *f;
        else if (const auto* p = std::get_if<Pinned>(&m)) replaced = p->replaced;
        m = Pinned{c.value, std::move(replaced)};
    }
    return Scm(std::move(roles), std::move(mechanisms));
}

namespace {

std::vector<VarId> reach(const Scm& scm, VarId start, bool downward)
{
    std::vector<std::vector<VarId>> next(scm.size());
    for (VarId v : scm.variables())
        for (VarId p : scm.parents(v)) {
            if (!scm.contains(p)) throw Error(ErrorCode::DanglingParent, name_of(v) + " references unknown " + name_of(p));
            if (downward) next[p.index].push_back(v);
            else next[v.index].push_back(p);
        }
    std::vector<bool> seen(scm.size(), false);
    std::vector<VarId> stack{start};
    seen.at(start.index) = true;
    std::vector<VarId> out;
    while (!stack.empty()) {
        VarId v = stack.back();
        stack.pop_back();
        for (VarId n : next[v.index])
            if (!seen[n.index]) {
                seen[n.index] = true;
                out.push_back(n);
                stack.push_back(n);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<VarId> descendants(const Scm& scm, VarId from) { return reach(scm, from, true); }

std::vector<VarId> ancestors(const Scm& scm, VarId to) { return reach(scm, to, false); }

}  // namespace counterbench
