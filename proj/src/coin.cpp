#include "counterbench/coin.hpp"

#include "counterbench/error.hpp"
#include "counterbench/fixtures.hpp"
#include "counterbench/rng.hpp"
#include "counterbench/symbols.hpp"

#include <algorithm>

namespace counterbench::coin {

void KnownSet::insert(VarId v, bool value)
{
    auto [it, fresh] = values_.emplace(v, value);
    if (!fresh && it->second != value)
        throw Error(ErrorCode::ConflictingKnowledge, "variable " + std::to_string(v.index) + " already known with the opposite value");
}

std::optional<bool> KnownSet::get(VarId v) const
{
    if (auto it = values_.find(v); it != values_.end()) return it->second;
    return std::nullopt;
}

RelationSet::RelationSet(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps)
{
    model_ = submodel(scm, clamps);
    ClampSet context;
    for (VarId r : model_.roots()) {
        if (!std::holds_alternative<Exogenous>(model_.mechanism(r))) continue;
        const auto value = roots.get(r);
        if (!value) throw Error(ErrorCode::InvalidRootAssignment, "no context value for root " + std::to_string(r.index));
        context.add({r, *value});
    }
    model_ = submodel(model_, context);
}

std::optional<bool> infer_step(const RelationSet& relations, const KnownSet& known, VarId k)
{
    const Scm& m = relations.model();
    if (!m.contains(k)) throw Error(ErrorCode::UnknownVariable, "variable " + std::to_string(k.index));

    std::optional<bool> derived;
    if (auto pinned = m.pinned_value(k)) {
        derived = pinned;
    } else if (const Formula* f = m.formula(k)) {
        std::size_t unknown = 0;
        bool any_true = false;
        bool any_false = false;
        for (const auto& lit : f->args) {
            const auto v = known.get(lit.var);
            if (!v) {
                ++unknown;
                continue;
            }
            (lit.apply(*v) ? any_true : any_false) = true;
        }
        switch (f->op) {
        case Op::Unary:
            if (unknown == 0) derived = any_true;
            break;
        case Op::And:
            if (any_false) derived = false;
            else if (unknown == 0) derived = true;
            break;
        case Op::Or:
            if (any_true) derived = true;
            else if (unknown == 0) derived = false;
            break;
        }
    }
    if (derived) {
        if (auto prior = known.get(k); prior && *prior != *derived)
            throw Error(ErrorCode::ConflictingKnowledge, "derivation contradicts a known value");
    }
    return derived;
}

void backtrack(Trace& trace, VarId k) { trace.steps.push_back({StepKind::Backtrack, k, false}); }

namespace {

Trace search(const Scm& scm, const RootAssignment& roots, const ClampSet& clamps, const ClampSet& observed, VarId goal,
             Rng& rng)
{
    const RelationSet relations(scm, roots, clamps);
    const Scm& model = relations.model();

    Trace trace;
    trace.model = model;
    trace.outcome = goal;

    KnownSet known;
    auto give = [&](Clamp c) {
        if (known.contains(c.var)) return;
        known.insert(c.var, c.value);
        trace.givens.push_back(c);
    };
    for (const auto& c : clamps) give(c);
    for (const auto& o : observed) give(o);
    for (VarId r : model.roots()) give({r, *model.pinned_value(r)});

    std::vector<VarId> pool = ancestors(model, goal);
    pool.push_back(goal);
    std::erase_if(pool, [&](VarId v) { return known.contains(v); });
    std::sort(pool.begin(), pool.end());
    const std::vector<VarId> relevant = pool;

    if (auto v = known.get(goal)) {
        trace.outcome_value = *v;
        trace.steps.push_back({StepKind::Found, goal, *v});
        return trace;
    }

    std::set<VarId> tried;
    for (;;) {
        std::vector<VarId> candidates;
        for (VarId v : pool)
            if (!known.contains(v) && !tried.contains(v)) candidates.push_back(v);
        if (candidates.empty()) throw Error(ErrorCode::Stuck, "no event can be inferred");

        const VarId k = rng.pick(candidates);
        trace.steps.push_back({StepKind::Attempt, k, false});
        if (auto v = infer_step(relations, known, k)) {
            known.insert(k, *v);
            trace.steps.push_back({StepKind::Inferred, k, *v});
            tried.clear();
            if (k == goal) {
                trace.steps.push_back({StepKind::Found, k, *v});
                trace.outcome_value = *v;
                break;
            }
        } else {
            trace.steps.push_back({StepKind::DeadEnd, k, false});
            tried.insert(k);
            backtrack(trace, k);
        }
    }

    // Final chain: every relevant event in topological order, including those
    // the search skipped thanks to short-circuiting.
    const World world = evaluate(model, {}, {});
    for (VarId v : topological_order(model)) {
        if (!std::binary_search(relevant.begin(), relevant.end(), v)) continue;
        if (auto k = known.get(v); k && *k != world[v])
            throw Error(ErrorCode::ConflictingKnowledge, "search disagrees with forward evaluation");
        trace.chain.push_back({v, world[v]});
    }
    return trace;
}

}  // namespace

Solution solve(const Scm& scm, const Query& query, const RootAssignment& roots, std::uint64_t seed)
{
    validate_query(scm, query);
    Rng rng(mix_seed(seed));
    Trace trace;
    switch (query.kind) {
    case QueryKind::Basic:
    case QueryKind::Joint:
    case QueryKind::NestedExplicit:
        trace = search(scm, roots, query.interventions, {}, query.outcome, rng);
        break;
    case QueryKind::Conditional:
        trace = search(scm, condition_roots(scm, query.observations, roots), query.interventions, query.observations,
                       query.outcome, rng);
        break;
    case QueryKind::NestedDerived: {
        const VarId z = *query.derived;
        Trace sub = search(scm, roots, ClampSet{query.interventions[0]}, {}, z, rng);
        trace = search(scm, roots, ClampSet{{z, sub.outcome_value}}, {}, query.outcome, rng);
        trace.subgoals.push_back(std::move(sub));
        break;
    }
    }
    return {to_answer(trace.outcome_value), std::move(trace)};
}

Solution solve(const Scm& scm, const Query& query, std::uint64_t seed)
{
    return solve(scm, query, default_roots(scm), seed);
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string literal_symbol(const std::vector<std::string>& sym, Literal l)
{
    return (l.negated ? "NOT " : "") + sym[l.var.index];
}

/// Positive literals first, otherwise in stated order.
std::string formula_symbols(const std::vector<std::string>& sym, const Formula& f)
{
    std::vector<Literal> args = f.args;
    std::stable_partition(args.begin(), args.end(), [](Literal l) { return !l.negated; });
    const char* joiner = f.op == Op::And ? " AND " : " OR ";
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += joiner;
        out += literal_symbol(sym, args[i]);
    }
    return out;
}

std::string step_suffix(std::size_t i)
{
    std::string s;
    for (++i; i > 0; i = (i - 1) / 26) s.insert(s.begin(), static_cast<char>('a' + (i - 1) % 26));
    return s;
}

std::string bit(bool b) { return b ? "1" : "0"; }

void render_search(std::string& out, const Trace& trace, const std::vector<std::string>& sym, const std::string& indent)
{
    out += "Trying a promising first operation:\n";
    std::size_t n = 0;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const Step& s = trace.steps[i];
        switch (s.kind) {
        case StepKind::Attempt: break;
        case StepKind::Inferred: {
            out += indent + std::to_string(++n) + ". " + rule_text(trace.model, s.var) + " = " + bit(s.value);
            const bool found = i + 1 < trace.steps.size() && trace.steps[i + 1].kind == StepKind::Found;
            out += found ? " -> found it !\n" : "\n";
            break;
        }
        case StepKind::DeadEnd:
            out += indent + std::to_string(++n) + ". " + rule_text(trace.model, s.var) +
                   " = 0 or 1 (cannot be inferred directly)\n";
            break;
        case StepKind::Backtrack: out += indent + "Trying another promising first operation:\n"; break;
        case StepKind::Found:
            if (n == 0) out += indent + sym[s.var.index] + " = " + bit(s.value) + " is given -> found it !\n";
            break;
        }
    }
    out += "\n" + indent + "Backtracking the solution:\n";
    for (std::size_t i = 0; i < trace.chain.size(); ++i) {
        const auto& link = trace.chain[i];
        out += indent + "Step 3" + step_suffix(i) + ":\n";
        out += indent + "\t" + rule_text(trace.model, link.var) + " = " + bit(link.value) + "\n";
    }
}

void require_names(const Trace& trace, const text::NameTable& names)
{
    for (VarId v : trace.model.variables()) names.at(v);
    for (const auto& sub : trace.subgoals) require_names(sub, names);
}

std::string literal_name(const text::NameTable& names, Clamp c) { return (c.value ? "" : "not ") + names.at(c.var); }

}  // namespace

std::string rule_text(const Scm& model, VarId v)
{
    const auto sym = symbol_table(model);
    if (const Formula* f = model.formula(v)) return sym[v.index] + " = " + formula_symbols(sym, *f);
    if (const Formula* f = model.design_formula(v)) return sym[v.index] + " = " + formula_symbols(sym, *f);
    return sym[v.index];
}

std::string render_trace(const Trace& trace, const text::NameTable& names)
{
    require_names(trace, names);
    const auto sym = symbol_table(trace.model);
    std::string out;
    for (const auto& sub : trace.subgoals) {
        out += "First find the value " + sym[sub.outcome.index] + " takes under the supposition. ";
        render_search(out, sub, sym, "\t");
        out += "\tSo " + sym[sub.outcome.index] + " = " + bit(sub.outcome_value) + " is carried into the question.\n";
    }
    render_search(out, trace, sym, "\t");
    return out;
}

SolvedExample make_example(const text::ParsedScenario& parsed, std::uint64_t seed)
{
    auto solution = solve(parsed.scm, parsed.query, seed);
    const auto text = text::render(parsed.scm, parsed.query, parsed.names);
    return {text.full(), parsed.scm, parsed.query, parsed.names, std::move(solution.trace), solution.answer};
}

SolvedExample make_example(std::string_view scenario, std::uint64_t seed)
{
    auto example = make_example(text::parse(scenario), seed);
    example.scenario = std::string(scenario);
    return example;
}

const std::vector<SolvedExample>& default_exemplars()
{
    static const std::vector<SolvedExample> exemplars{make_example(fixtures::kZiklo, 0)};
    return exemplars;
}

namespace {

std::string symbol_legend(const Scm& scm, const text::NameTable& names)
{
    const auto sym = symbol_table(scm);
    std::vector<VarId> order = scm.variables();
    auto rank = [&](VarId v) {
        const Role r = scm.role(v);
        return r == Role::Antecedent ? 0 : r == Role::Intermediate ? 1 : 2;
    };
    std::stable_sort(order.begin(), order.end(), [&](VarId a, VarId b) { return rank(a) < rank(b); });
    std::string out = "Let ";
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0) out += "; ";
        out += sym[order[i].index] + " = " + names.at(order[i]);
    }
    return out + ".";
}

constexpr std::string_view kGraphFormat =
    "The diagram should simply consist of edges denoted in \"var1 -> var2\" format, separated by commas. If you get "
    "V1 -> Not V2 for example, you need to replace into V1 -> V2";

constexpr std::string_view kCollect =
    "Collect all the directly given information into given values set. 1 means given observed in question or "
    "observed. 0 means given not in question. Do not assume or infer other variables values by relations. Then, "
    "describe relations about how multiple variables influence another variable";

constexpr std::string_view kIdentify =
    "Identify the causal graph that depicts the relationships in the scenario.";

std::string exemplar_instructions(const SolvedExample& ex)
{
    std::string out;
    out += "Step 1. Extract the causal graph: " + std::string(kIdentify) + " " + symbol_legend(ex.scm, ex.names) + " " +
           std::string(kGraphFormat) + ".\n";
    out += "Step 2. Collect the information: " + std::string(kCollect) + "; it can result in AND, OR, or NOT.\n";
    out += "Step 3. Infer the Y by information step by step.\n";
    out += "Step 4. Based on the result from the Step3, derive the final answer. There is an identifiable answer.\n";
    return out;
}

std::string target_instructions()
{
    std::string out;
    out += "Step 1) Extract the causal graph: " + std::string(kIdentify) + "  " + std::string(kGraphFormat) + "\n\n";
    out += "Step 2) Gather all relevant data: Collect the information: " + std::string(kCollect) + ".\n\n";
    out += "Step 3) Adopt the following algorithm to get the result: Infer the Y by information step by step.\n\n";
    out += "Step 4) Conclude the final answer: Based on the result from the Step3, derive the final answer. There is an "
           "identifiable answer. Answer step by step.\n";
    return out;
}

}  // namespace

std::string render_solution(const SolvedExample& ex)
{
    const auto sym = symbol_table(ex.scm);
    std::string out = "Step 1) Extract the causal graph: " + std::string(kIdentify) + " " + symbol_legend(ex.scm, ex.names) +
                      " The causal graph is ";
    std::vector<std::string> edges;
    std::vector<std::string> relations;
    for (VarId v : topological_order(ex.scm)) {
        const Formula* f = ex.scm.design_formula(v);
        if (!f) continue;
        for (VarId p : ex.scm.design_parents(v)) edges.push_back(sym[p.index] + "->" + sym[v.index]);
        relations.push_back(sym[v.index] + ": " + formula_symbols(sym, *f));
    }
    for (std::size_t i = 0; i < edges.size(); ++i) out += (i ? ", " : "") + edges[i];
    out += ".\n";

    std::vector<std::string> given;
    for (const auto& c : ex.query.interventions)
        given.push_back(sym[c.var.index] + " = " + bit(c.value) + " (" + literal_name(ex.names, c) + ")");
    for (const auto& c : ex.query.observations)
        given.push_back(sym[c.var.index] + " = " + bit(c.value) + " (" + literal_name(ex.names, c) + ")");
    out += "Step 2) Collect the information: All given values: ";
    for (std::size_t i = 0; i < given.size(); ++i) out += (i ? ", " : "") + given[i];
    out += "; Relations: ";
    for (std::size_t i = 0; i < relations.size(); ++i) out += (i ? ", " : "") + relations[i];
    out += ".\n";

    out += "Step 3) " + render_trace(ex.trace, ex.names);
    out += "Step 4) Since the result for the Y is " + bit(to_bool(ex.answer)) +
           ", the overall answer to the question is " + std::string(to_string(ex.answer)) + ".\n";
    return out;
}

std::string build_coin_prompt(std::string_view scenario, const std::vector<SolvedExample>& exemplars)
{
    if (exemplars.empty()) throw Error(ErrorCode::InvalidArgument, "the CoIn prompt needs at least one exemplar");
    std::string out;
    for (const auto& ex : exemplars) {
        out += "User:\n" + ex.scenario + "\n" + exemplar_instructions(ex) + "\n\nAssistant:\n" + render_solution(ex);
        out += "\n----------------\n";
    }
    out += std::string(scenario) + "\n\nUser:\n\n" + target_instructions() + "\nAssistant:\n";
    return out;
}

}  // namespace counterbench::coin
