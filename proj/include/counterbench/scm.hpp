#pragma once

// Deterministic Boolean structural causal models.
//
// Every variable is either a root (its value comes from the context or from a
// pinned constant) or is defined by a formula over at most two literals of
// other variables. Causation is closed-world: an effect holds exactly when its
// formula holds.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace counterbench {

struct VarId {
    std::uint16_t index = 0;

    constexpr auto operator<=>(const VarId&) const = default;
};

enum class Role : std::uint8_t { Antecedent, Intermediate, Outcome };

struct Literal {
    VarId var;
    bool negated = false;

    constexpr bool apply(bool value) const { return value != negated; }
    constexpr bool operator==(const Literal&) const = default;
};

constexpr Literal pos(VarId v) { return {v, false}; }
constexpr Literal neg(VarId v) { return {v, true}; }

enum class Op : std::uint8_t { Unary, And, Or };

struct Formula {
    Op op = Op::Unary;
    std::vector<Literal> args;

    static Formula unary(Literal a) { return {Op::Unary, {a}}; }
    static Formula all_of(Literal a, Literal b) { return {Op::And, {a, b}}; }
    static Formula any_of(Literal a, Literal b) { return {Op::Or, {a, b}}; }

    /// `value(v)` must return the current value of variable v.
    template <typename Lookup>
    bool evaluate(Lookup&& value) const
    {
        switch (op) {
        case Op::Unary: return args.front().apply(value(args.front().var));
        case Op::And:
            for (const auto& a : args)
                if (!a.apply(value(a.var))) return false;
            return true;
        case Op::Or:
            for (const auto& a : args)
                if (a.apply(value(a.var))) return true;
            return false;
        }
        return false;
    }

    bool operator==(const Formula&) const = default;
};

struct Equation {
    VarId target;
    Formula formula;

    bool operator==(const Equation&) const = default;
};

/// Declared but not yet given a mechanism; fails validation.
struct Unspecified {
    bool operator==(const Unspecified&) const = default;
};
/// Free root: value supplied by the context (RootAssignment).
struct Exogenous {
    bool operator==(const Exogenous&) const = default;
};
/// Root fixed by intervention. `replaced` keeps the mechanism it overrode so
/// the design graph stays recoverable from a submodel.
struct Pinned {
    bool value = false;
    std::optional<Formula> replaced;

    bool operator==(const Pinned&) const = default;
};

using Mechanism = std::variant<Unspecified, Exogenous, Pinned, Formula>;

class Scm {
public:
    Scm() = default;
    Scm(std::vector<Role> roles, std::vector<Mechanism> mechanisms);

    std::size_t size() const { return roles_.size(); }
    bool contains(VarId v) const { return v.index < roles_.size(); }
    std::vector<VarId> variables() const;

    Role role(VarId v) const { return roles_.at(v.index); }
    const Mechanism& mechanism(VarId v) const { return mechanisms_.at(v.index); }

    /// The structural equation of v, or nullptr for roots.
    const Formula* formula(VarId v) const { return std::get_if<Formula>(&mechanisms_.at(v.index)); }
    /// The equation v had before any intervention (same as formula() for
    /// unpinned variables).
    const Formula* design_formula(VarId v) const;
    std::optional<bool> pinned_value(VarId v) const;
    bool is_root(VarId v) const;

    std::vector<VarId> roots() const;
    std::vector<Equation> equations() const;

    /// First variable with the given role, if any.
    std::optional<VarId> find_role(Role r) const;
    VarId antecedent() const;
    VarId outcome() const;

    /// Parents under the current mechanisms (pinned variables have none).
    std::vector<VarId> parents(VarId v) const;
    /// Parents in the pre-intervention graph.
    std::vector<VarId> design_parents(VarId v) const;

    bool operator==(const Scm&) const = default;

private:
    std::vector<Role> roles_;
    std::vector<Mechanism> mechanisms_;
};

class ScmBuilder {
public:
    VarId add(Role role);
    ScmBuilder& root(VarId v);
    ScmBuilder& equation(VarId target, Formula f);
    ScmBuilder& mechanism(VarId v, Mechanism m);
    Scm build() const { return Scm(roles_, mechanisms_); }

private:
    std::vector<Role> roles_;
    std::vector<Mechanism> mechanisms_;
};

/// Context values for root variables.
class RootAssignment {
public:
    RootAssignment() = default;
    RootAssignment(std::initializer_list<std::pair<const VarId, bool>> init) : values_(init) {}

    void set(VarId v, bool value) { values_[v] = value; }
    std::optional<bool> get(VarId v) const;
    bool contains(VarId v) const { return values_.contains(v); }
    const std::map<VarId, bool>& values() const { return values_; }

    bool operator==(const RootAssignment&) const = default;

private:
    std::map<VarId, bool> values_;
};

/// All roots true: the factual world in which every background event happened.
RootAssignment default_roots(const Scm& scm);

struct Clamp {
    VarId var;
    bool value = false;

    bool operator==(const Clamp&) const = default;
};

/// Ordered interventions, at most one per variable.
class ClampSet {
public:
    ClampSet() = default;
    ClampSet(std::initializer_list<Clamp> clamps);

    void add(Clamp c);
    bool contains(VarId v) const { return value_of(v).has_value(); }
    std::optional<bool> value_of(VarId v) const;

    std::size_t size() const { return clamps_.size(); }
    bool empty() const { return clamps_.empty(); }
    const Clamp& operator[](std::size_t i) const { return clamps_[i]; }
    auto begin() const { return clamps_.begin(); }
    auto end() const { return clamps_.end(); }

    bool operator==(const ClampSet&) const = default;

private:
    std::vector<Clamp> clamps_;
};

/// Total assignment of every model variable.
class World {
public:
    World() = default;
    explicit World(std::vector<bool> values) : values_(std::move(values)) {}

    bool operator[](VarId v) const { return values_.at(v.index); }
    std::size_t size() const { return values_.size(); }
    const std::vector<bool>& values() const { return values_; }

    bool operator==(const World&) const = default;

private:
    std::vector<bool> values_;
};

/// Throws Error unless every structural invariant holds.
void validate(const Scm& scm);

/// Parents before children, ties broken by smallest index.
std::vector<VarId> topological_order(const Scm& scm);

World evaluate(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps = {});

/// M_x: each clamped variable becomes a pinned root.
Scm submodel(const Scm& scm, const ClampSet& clamps);

/// Variables reachable from `from` along live parent->child edges (excluding `from`).
std::vector<VarId> descendants(const Scm& scm, VarId from);
/// Variables from which `to` is reachable along live edges (excluding `to`).
std::vector<VarId> ancestors(const Scm& scm, VarId to);

}  // namespace counterbench
