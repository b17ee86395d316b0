#include "models.hpp"
#include "oracles.hpp"

#include "counterbench/coin.hpp"
#include "counterbench/error.hpp"
#include "counterbench/fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace counterbench;
using models::var;

namespace {

std::size_t count(std::string_view hay, std::string_view needle)
{
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string_view::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

std::size_t count_kind(const coin::Trace& t, coin::StepKind k)
{
    return static_cast<std::size_t>(std::count_if(t.steps.begin(), t.steps.end(), [&](const coin::Step& s) { return s.kind == k; }));
}

/// The structural checks every trace must pass.
void check_trace(const coin::Trace& t, const Scm& scm, const RootAssignment& roots, const ClampSet& clamps)
{
    REQUIRE_FALSE(t.steps.empty());
    REQUIRE(t.steps.back().kind == coin::StepKind::Found);
    REQUIRE(t.steps.back().var == t.outcome);

    std::map<VarId, int> inferred;
    for (const auto& s : t.steps)
        if (s.kind == coin::StepKind::Inferred) REQUIRE(++inferred[s.var] == 1);

    // Dead ends are either retried successfully or settled by the chain.
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (t.steps[i].kind != coin::StepKind::DeadEnd) continue;
        const VarId k = t.steps[i].var;
        REQUIRE(i + 1 < t.steps.size());
        REQUIRE(t.steps[i + 1].kind == coin::StepKind::Backtrack);
        const bool retried = std::any_of(t.steps.begin() + static_cast<std::ptrdiff_t>(i), t.steps.end(), [&](const auto& s) {
            return s.kind == coin::StepKind::Inferred && s.var == k;
        });
        const bool in_chain = std::any_of(t.chain.begin(), t.chain.end(), [&](const auto& l) { return l.var == k; });
        REQUIRE((retried || in_chain));
    }

    // Replay: the chain and every inferred value agree with the clamped world.
    const World world(*oracle::fixed_point(scm, roots, clamps));
    for (const auto& l : t.chain) REQUIRE(world[l.var] == l.value);
    for (const auto& s : t.steps)
        if (s.kind == coin::StepKind::Inferred) REQUIRE(world[s.var] == s.value);
    REQUIRE(world[t.outcome] == t.outcome_value);

    // Termination bound.
    const std::size_t n = scm.size();
    REQUIRE(count_kind(t, coin::StepKind::Attempt) <= n * (n + 1));
}

}  // namespace

TEST_CASE("known set is insert-only")
{
    coin::KnownSet k;
    k.insert(var(1), true);
    k.insert(var(1), true);
    CHECK(k.get(var(1)) == true);
    CHECK_FALSE(k.get(var(2)).has_value());
    try {
        k.insert(var(1), false);
        FAIL("expected ConflictingKnowledge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConflictingKnowledge);
    }
    CHECK(k.get(var(1)) == true);
}

TEST_CASE("single inference steps")
{
    const Scm z = models::ziklo();
    const ClampSet clamps{{var(0), false}};
    const coin::RelationSet rel(z, default_roots(z), clamps);
    coin::KnownSet known;
    known.insert(var(0), false);
    CHECK(coin::infer_step(rel, known, var(1)) == true);
    CHECK_FALSE(coin::infer_step(rel, known, var(7)).has_value());
    CHECK(coin::infer_step(rel, known, var(0)) == false);

    // V6 = V2 AND NOT V5: one false conjunct settles it.
    known.insert(var(5), true);
    CHECK(coin::infer_step(rel, known, var(6)) == false);

    // V4 = V3 OR V2: one true disjunct settles it.
    coin::KnownSet k2;
    k2.insert(var(2), true);
    CHECK(coin::infer_step(rel, k2, var(4)) == true);
    coin::KnownSet k3;
    k3.insert(var(3), false);
    CHECK_FALSE(coin::infer_step(rel, k3, var(4)).has_value());

    // A known value that contradicts the rule.
    coin::KnownSet bad;
    bad.insert(var(0), false);
    bad.insert(var(1), false);
    CHECK_THROWS_AS(coin::infer_step(rel, bad, var(1)), Error);
}

TEST_CASE("solve the Ziklo scenario")
{
    const Scm z = models::ziklo();
    Query q;
    q.interventions.add({var(0), false});
    q.outcome = var(7);
    const std::vector<coin::ChainLink> expected{{var(1), true},  {var(2), true},  {var(3), false}, {var(4), true},
                                                {var(5), true},  {var(6), false}, {var(7), false}};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = coin::solve(z, q, seed);
        CHECK(s.answer == Answer::No);
        CHECK(s.trace.chain == expected);
        check_trace(s.trace, z, default_roots(z), q.interventions);
    }
    const auto text = coin::render_trace(coin::solve(z, q, 0).trace, fixtures::ziklo().names);
    CHECK(text.find("V6 = V2 AND NOT V5 = 0") != std::string::npos);
    CHECK(text.find("Backtracking the solution:") != std::string::npos);
    CHECK(text.find("-> found it !") != std::string::npos);
}

TEST_CASE("solve the Nuv and Praf scenarios")
{
    const auto n = fixtures::nuv();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = coin::solve(n.scm, n.query, seed);
        CHECK(s.answer == Answer::Yes);
        REQUIRE_FALSE(s.trace.chain.empty());
        CHECK(s.trace.chain.back() == coin::ChainLink{var(8), true});
        const auto text = coin::render_trace(s.trace, n.names);
        CHECK(text.find("Y = V7 = 1") != std::string::npos);
    }
    const auto p = fixtures::praf();
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(coin::solve(p.scm, p.query, seed).answer == Answer::Yes);
}

TEST_CASE("dead end on the outcome is retried after its causes")
{
    // Find a seed whose very first attempt is Y, as in the worked example.
    const auto z = fixtures::ziklo();
    bool seen = false;
    for (std::uint64_t seed = 0; seed < 500 && !seen; ++seed) {
        const auto s = coin::solve(z.scm, z.query, seed);
        const auto& steps = s.trace.steps;
        if (steps[0].var != var(7) || steps[1].kind != coin::StepKind::DeadEnd) continue;
        seen = true;
        CHECK(steps[2].kind == coin::StepKind::Backtrack);
        // Y is inferred only once every other chain event is known.
        std::set<VarId> known_before;
        for (const auto& st : steps) {
            if (st.kind == coin::StepKind::Inferred && st.var == var(7)) break;
            if (st.kind == coin::StepKind::Inferred) known_before.insert(st.var);
        }
        CHECK(known_before.contains(var(6)));
        const auto text = coin::render_trace(s.trace, z.names);
        CHECK(text.find("1. Y = V6 = 0 or 1 (cannot be inferred directly)") != std::string::npos);
        CHECK(text.find("Trying another promising first operation:") != std::string::npos);
    }
    CHECK(seen);
}

TEST_CASE("straight-line solves have no backtracking")
{
    const auto z = fixtures::ziklo();
    bool seen = false;
    for (std::uint64_t seed = 0; seed < 2000 && !seen; ++seed) {
        const auto s = coin::solve(z.scm, z.query, seed);
        if (count_kind(s.trace, coin::StepKind::DeadEnd) != 0) continue;
        seen = true;
        CHECK(count_kind(s.trace, coin::StepKind::Backtrack) == 0);
        CHECK(coin::render_trace(s.trace, z.names).find("Trying another") == std::string::npos);
    }
    CHECK(seen);
}

TEST_CASE("backtrack appends a marker and keeps known values")
{
    coin::Trace t;
    t.steps.push_back({coin::StepKind::Inferred, var(1), true});
    t.steps.push_back({coin::StepKind::DeadEnd, var(3), false});
    coin::backtrack(t, var(3));
    REQUIRE(t.steps.size() == 3);
    CHECK(t.steps[2].kind == coin::StepKind::Backtrack);
    CHECK(t.steps[0] == coin::Step{coin::StepKind::Inferred, var(1), true});
}

TEST_CASE("rendered chain has one step per link")
{
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        const Scm scm = oracle::random_model(rng, static_cast<int>(rng.between(3, 9)));
        const auto q = oracle::random_query(rng, scm, QueryKind::Basic);
        const auto names = text::generate_names(rng.next(), scm.size());
        const auto s = coin::solve(scm, *q, rng.next());
        const auto text = coin::render_trace(s.trace, names);
        CHECK(count(text, "\tStep 3") == s.trace.chain.size());
        CHECK(count(text, "cannot be inferred directly") == count_kind(s.trace, coin::StepKind::DeadEnd));
    }
    text::NameTable missing;
    const auto z = fixtures::ziklo();
    CHECK_THROWS_AS(coin::render_trace(coin::solve(z.scm, z.query, 0).trace, missing), Error);
}

TEST_CASE("derived-value nested queries solve the carried event first")
{
    const Scm z = models::ziklo();
    Query q;
    q.kind = QueryKind::NestedDerived;
    q.interventions.add({var(0), false});
    q.derived = var(4);
    q.outcome = var(7);
    const auto s = coin::solve(z, q, 3);
    CHECK(s.answer == Answer::No);
    REQUIRE(s.trace.subgoals.size() == 1);
    CHECK(s.trace.subgoals[0].outcome == var(4));
    CHECK(s.trace.subgoals[0].outcome_value);
}

TEST_CASE("CoIn prompt")
{
    const auto& ex = coin::default_exemplars();
    REQUIRE(ex.size() == 1);
    CHECK(ex[0].answer == Answer::No);
    const std::string nuv(fixtures::kNuv);
    const auto prompt = coin::build_coin_prompt(nuv, ex);
    CHECK(prompt.find("Step 3) Adopt the following algorithm") != std::string::npos);
    CHECK(prompt.find(nuv) != std::string::npos);
    CHECK(prompt.find(fixtures::kZiklo) != std::string::npos);
    CHECK(prompt.find("the overall answer to the question is no") != std::string::npos);
    CHECK(prompt == coin::build_coin_prompt(nuv, ex));
    CHECK(prompt.find(nuv) > prompt.find(fixtures::kZiklo));
    try {
        coin::build_coin_prompt(nuv, {});
        FAIL("expected InvalidArgument");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidArgument);
    }

    const auto solution = coin::render_solution(ex[0]);
    for (auto step : {"Step 1)", "Step 2)", "Step 3)", "Step 4)"}) CHECK(solution.find(step) != std::string::npos);
    CHECK(solution.find("V6 = V2 AND NOT V5 = 0") != std::string::npos);
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("property: solver agrees with the oracle on every seed")
{
    Rng rng(32);
    std::size_t checked = 0;
    while (checked < 2000) {
        const Scm scm = oracle::random_model(rng, static_cast<int>(rng.between(5, 9)), 0.25);
        const QueryKind kind = oracle::kAllKinds[rng.below(5)];
        const auto q = oracle::random_query(rng, scm, kind);
        if (!q) continue;
        RootAssignment roots = oracle::random_roots(rng, scm);
        const Answer expected = oracle::answer(scm, *q, roots);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto s = coin::solve(scm, *q, roots, rng.next());
            REQUIRE(s.answer == expected);
            if (kind == QueryKind::NestedDerived) continue;
            RootAssignment effective = roots;
            for (const auto& o : q->observations) effective.set(o.var, o.value);
            check_trace(s.trace, scm, effective, q->interventions);
        }
        ++checked;
    }
}
