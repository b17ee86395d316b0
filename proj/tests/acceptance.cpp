// One line per acceptance criterion. Exit status is nonzero if any fails.

#include "oracles.hpp"

#include "counterbench/bench.hpp"
#include "counterbench/coin.hpp"
#include "counterbench/engine.hpp"
#include "counterbench/error.hpp"
#include "counterbench/eval.hpp"
#include "counterbench/fixtures.hpp"
#include "counterbench/text_codec.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace counterbench;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, const std::function<std::string()>& check)
{
    const auto start = Clock::now();
    std::string problem;
    try {
        problem = check();
    } catch (const std::exception& e) {
        problem = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s %d %s (%.2f s)%s%s\n", problem.empty() ? "PASS" : "FAIL", id, name.c_str(), secs,
                problem.empty() ? "" : ": ", problem.c_str());
    std::fflush(stdout);
    failures += !problem.empty();
}

std::string data_file(const std::string& name)
{
    std::ifstream in(std::string(COUNTERBENCH_TEST_DATA) + "/" + name, std::ios::binary);
    if (!in) throw std::runtime_error("missing " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string worked_examples()
{
    const auto start = Clock::now();
    const auto z = fixtures::ziklo();
    const auto n = fixtures::nuv();
    if (answer(z.scm, z.query) != Answer::No) return "oracle Ziklo";
    if (answer(n.scm, n.query) != Answer::Yes) return "oracle Nuv";
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        if (coin::solve(z.scm, z.query, seed).answer != Answer::No) return "coin Ziklo";
        if (coin::solve(n.scm, n.query, seed).answer != Answer::Yes) return "coin Nuv";
    }
    const auto text = coin::render_solution(coin::make_example(fixtures::kZiklo, 0));
    if (text.find("the overall answer to the question is no") == std::string::npos) return "Ziklo verdict text";
    if (Clock::now() - start >= std::chrono::seconds(1)) return "slower than 1 s";
    return "";
}

std::string solver_equivalence()
{
    Rng rng(101);
    std::map<QueryKind, std::size_t> kinds;
    std::size_t checked = 0;
    while (checked < 10000) {
        const Scm scm = oracle::random_model(rng, static_cast<int>(rng.between(5, 9)), 0.25);
        const QueryKind kind = oracle::kAllKinds[rng.below(5)];
        const auto q = oracle::random_query(rng, scm, kind);
        if (!q) continue;
        const auto roots = oracle::random_roots(rng, scm);
        const Answer expected = answer(scm, *q, roots);
        if (expected != oracle::answer(scm, *q, roots)) return "engine disagrees with the brute-force oracle";
        if (coin::solve(scm, *q, roots, rng.next()).answer != expected)
            return "solver disagrees on instance " + std::to_string(checked);
        ++kinds[kind];
        ++checked;
    }
    for (QueryKind k : oracle::kAllKinds)
        if (kinds[k] == 0) return "kind never drawn";
    return "";
}

std::string dataset_reconstruction()
{
    const auto items = bench::generate({});
    if (items.size() != 1000) return std::to_string(items.size()) + " items";
    std::map<QueryKind, std::array<int, 2>> by_kind;
    std::map<int, std::array<int, 2>> by_level;
    for (const auto& it : items) {
        ++by_kind[it.kind][to_bool(it.answer)];
        ++by_level[it.difficulty][to_bool(it.answer)];
        if (oracle::answer(it.scm, it.query, default_roots(it.scm)) != it.answer) return "stored answer wrong for " + it.id;
    }
    if (by_kind.size() != 4) return "query types";
    for (const auto& [k, c] : by_kind)
        if (c[0] != 125 || c[1] != 125) return "type " + std::string(to_string(k)) + " unbalanced";
    if (by_level.size() != 5) return "difficulty levels";
    for (const auto& [l, c] : by_level)
        if (c[0] != 100 || c[1] != 100) return "level " + std::to_string(l) + " unbalanced";
    return "";
}

std::string codec_round_trip()
{
    Rng rng(104);
    for (int i = 0; i < 10000; ++i) {
        const Scm scm = bench::sample_scm(rng, static_cast<int>(rng.between(5, 9)), rng.chance(0.5));
        QueryKind kind = bench::kGeneratedKinds[rng.below(4)];
        if (kind == QueryKind::Conditional && scm.roots().size() < 2) kind = QueryKind::Basic;
        const Query q = bench::sample_query(rng, scm, kind);
        const auto names = text::generate_names(rng.next(), scm.size());
        const auto t = text::render(scm, q, names);
        const auto p = text::parse(t.full());
        if (!text::same_scenario(scm, q, names, p.scm, p.query, p.names)) return "mismatch on: " + t.full();
    }
    return "";
}

std::string semantics_properties()
{
    Rng rng(105);
    std::size_t checked = 0;
    while (checked < 5000) {
        const Scm scm = oracle::random_model(rng, static_cast<int>(rng.between(3, 10)));
        const auto q = oracle::random_query(rng, scm, QueryKind::Joint);
        if (!q) continue;
        const auto roots = oracle::random_roots(rng, scm);
        if (answer_nested_explicit(scm, roots, q->interventions) != answer_joint(scm, roots, q->interventions))
            return "nested differs from joint";
        ++checked;
    }
    for (int i = 0; i < 5000; ++i) {
        const Scm scm = oracle::random_model(rng, static_cast<int>(rng.between(2, 10)));
        const auto roots = oracle::random_roots(rng, scm);
        const World factual = evaluate(scm, roots);
        for (VarId v : scm.variables()) {
            if (v == scm.outcome()) continue;
            if (evaluate(scm, roots, {{v, factual[v]}}) != factual) return "natural-value clamp changed the world";
        }
    }
    checked = 0;
    while (checked < 5000) {
        const Scm scm = oracle::random_model(rng, static_cast<int>(rng.between(3, 10)), 0.3);
        const auto up = ancestors(scm, scm.outcome());
        std::vector<VarId> irrelevant;
        for (VarId v : scm.variables())
            if (v != scm.outcome() && v != scm.antecedent() && std::find(up.begin(), up.end(), v) == up.end())
                irrelevant.push_back(v);
        if (irrelevant.empty()) continue;
        const auto roots = oracle::random_roots(rng, scm);
        const Clamp x{scm.antecedent(), rng.chance(0.5)};
        if (answer_joint(scm, roots, {x, {rng.pick(irrelevant), rng.chance(0.5)}}) != answer_basic(scm, roots, x))
            return "irrelevant clamp changed the answer";
        ++checked;
    }
    return "";
}

std::string harness_sanity()
{
    const auto items = bench::generate({});
    eval::RunOptions o;
    o.parallelism = 8;
    for (auto s : {eval::Strategy::Standard, eval::Strategy::CausalCoT, eval::Strategy::CoIn}) {
        o.strategy = s;
        eval::OracleClient oracle(items);
        const auto stats = eval::score(items, eval::run_eval(oracle, items, o));
        if (eval::format_row(stats, "x").find("100.0  100.0  100.0  100.0  100.0") == std::string::npos)
            return "oracle mock below 100 with " + std::string(eval::to_string(s));
    }
    o.strategy = eval::Strategy::Standard;
    auto yes = eval::make_yes_client();
    const auto stats = eval::score(items, eval::run_eval(*yes, items, o));
    if (stats.average() != 50.0) return "all-yes average " + std::to_string(stats.average());

    const auto glent = bench::make_item(
        text::parse("We know that Glent causes Razz, Razz and Glent together cause Pex, Pex causes Zurn, Zurn causes "
                    "Melf, and Melf and Razz together cause Zlim. Would Zlim occur if not Glent instead of Glent?"),
        "glent");
    const auto prompt = eval::build_prompt(eval::Strategy::CausalCoT, glent);
    if (eval::classify_response("", prompt) != eval::Label::Blank) return "blank fixture";
    if (eval::classify_response(data_file("repeating_response.txt"), prompt) != eval::Label::Repeating)
        return "repeating fixture";
    if (eval::classify_response(data_file("type_mismatch_response.txt"), prompt) != eval::Label::TypeMismatch)
        return "type-mismatch fixture";
    return "";
}

std::string replace(std::string s, std::string_view from, std::string_view to)
{
    const auto at = s.find(from);
    if (at == std::string::npos) throw std::runtime_error("fixture text not found");
    return s.replace(at, from.size(), to);
}

std::string error_taxonomy()
{
    const auto item = bench::make_item(fixtures::nuv(), "nuv");
    if (eval::classify_error(item, data_file("causalcot_nuv_response.txt")) != eval::ErrorCategory::WrongInference)
        return "CausalCoT transcript";
    const auto flipped = replace(coin::render_solution(coin::make_example(fixtures::kNuv, 0)),
                                 "the overall answer to the question is yes.", "the overall answer to the question is no.");
    if (eval::classify_error(item, flipped) != eval::ErrorCategory::WrongConclusion) return "verdict-flipped fixture";
    if (eval::classify_error(item, replace(flipped, "V3->V6, ", "")) != eval::ErrorCategory::WrongRelations)
        return "edge-dropping fixture";
    return "";
}

}  // namespace

int main()
{
    report(1, "worked examples: Ziklo no, Nuv yes", worked_examples);
    report(2, "solver equals oracle on 10000 fuzzed instances", solver_equivalence);
    report(3, "1000-item dataset: count audit and oracle re-check", dataset_reconstruction);
    report(4, "codec round trip on 10000 items", codec_round_trip);
    report(5, "nested/joint, consistency and screening-off over 5000 each", semantics_properties);
    report(6, "harness sanity with mocks and classifier fixtures", harness_sanity);
    report(7, "error-taxonomy fixtures", error_taxonomy);
    std::printf("INFO 8 live-model accuracy tables: not reproducible without model access\n");
    return failures == 0 ? 0 : 1;
}
